#pragma once

#include <complex>

namespace backflow::specfun {

using Complex = std::complex<double>;

// Fresnel integrals normalized as C(u) = sqrt(2/pi) * int_0^u cos(x^2) dx,
// so that C, S -> 1/2 as u -> infinity.
double fresnel_c(double u);
double fresnel_s(double u);

// Tail integral E(u) = int_u^inf exp(i x^2) dx for real u >= 0.
// 1/2 - C(u) = sqrt(2/pi) Re E(u), 1/2 - S(u) = sqrt(2/pi) Im E(u).
Complex fresnel_tail(double u);

// Faddeeva function w(z) = exp(-z^2) erfc(-i z).
Complex faddeeva_w(Complex z);

// Scaled complement erfcx(z) = exp(z^2) erfc(z) = w(i z).
Complex erfcx_complex(Complex z);

Complex erfc_complex(Complex z);

// Principal branches. Each throws DomainError for an argument exactly on
// its cut (or at a logarithmic singularity).
Complex sqrt_principal(Complex z);
Complex arctan_complex(Complex z);
Complex arctanh_complex(Complex z);

}  // namespace backflow::specfun
