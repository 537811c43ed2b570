#pragma once

// Reference computations that avoid the library's closed forms. They are
// slow and used only by the tests and the acceptance suite.

#include <complex>
#include <functional>
#include <vector>

namespace backflow::verify {

using Complex = std::complex<double>;

// sqrt(2/pi) * int_0^u cos(x^2) dx (or sin) by adaptive quadrature.
double fresnel_c_quadrature(double u);
double fresnel_s_quadrature(double u);

// erfc(x) for real x: Maclaurin series of erf for |x| <= 3 in long double,
// Lentz continued fraction beyond.
double erfc_series(double x);

// int_a^inf f(s) ds for an integrand whose sign alternates on consecutive
// intervals of length `period`: partial sums over whole periods, accelerated
// by repeated averaging.
double alternating_tail_integral(const std::function<double(double)>& f, double a, double period, int periods = 400);

// Amplitude phi(u) = cC (1/2 - C(u)) + cS (1/2 - S(u)) + cE exp(-b u).
struct AmplitudeCoefficients {
  double cC = 0.0, cS = 0.0, cE = 0.0, b = 1.0;
};

// U(t) = int_0^inf e^{i t u^2} phi(u) du and V(t) = int_0^inf u e^{-i t u^2} phi(u) du
// at zero regulator: direct quadrature on [0, L] with the Fresnel integrals
// themselves computed by nested quadrature, and contour rotation beyond L
// using the integral representation of the Fresnel auxiliary function.
Complex u_integral_oracle(const AmplitudeCoefficients& c, double t);
Complex v_integral_oracle(const AmplitudeCoefficients& c, double t);
double current_oracle(const AmplitudeCoefficients& c, double t);

// Quadrature of int_0^inf phi(u)^2 du for the amplitude above.
double norm_squared_oracle(const AmplitudeCoefficients& c);

// Eigenvalues (ascending) of a small symmetric matrix from its characteristic
// polynomial (Faddeev-LeVerrier coefficients, bracketing and bisection).
std::vector<double> characteristic_eigenvalues(const std::vector<std::vector<double>>& a);

}  // namespace backflow::verify
