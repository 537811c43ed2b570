#include "backflow/specfun.hpp"

#include <cmath>
#include <numbers>

#include "backflow/errors.hpp"

namespace backflow::specfun {

namespace {

constexpr double kSqrt2OverPi = 0.79788456080286535588;  // sqrt(2/pi)
constexpr double kSeam = 2.0;

void check_fresnel_arg(double u, const char* who) {
  if (!std::isfinite(u) || u < 0.0) throw DomainError(std::string(who) + ": argument must be finite and >= 0");
}

double series_c(double u) {
  const double u4 = u * u * u * u;
  double term = u;
  double sum = u;
  for (int n = 0; n < 200; ++n) {
    term *= -u4 / ((2.0 * n + 1.0) * (2.0 * n + 2.0));
    const double add = term / (4.0 * n + 5.0);
    sum += add;
    if (std::fabs(add) < 1e-18 * std::fabs(sum)) break;
  }
  return kSqrt2OverPi * sum;
}

double series_s(double u) {
  const double u4 = u * u * u * u;
  double term = u * u * u;
  double sum = term / 3.0;
  for (int n = 0; n < 200; ++n) {
    term *= -u4 / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
    const double add = term / (4.0 * n + 7.0);
    sum += add;
    if (std::fabs(add) < 1e-18 * std::fabs(sum)) break;
  }
  return kSqrt2OverPi * sum;
}

// E(u) = (sqrt(pi)/2) e^{i pi/4} e^{i u^2} w(e^{i pi/4} u)
Complex tail_aux(double u) {
  const Complex rot(std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0);
  const double u2 = u * u;
  return 0.5 * std::sqrt(std::numbers::pi) * rot * Complex(std::cos(u2), std::sin(u2)) * faddeeva_w(rot * u);
}

}  // namespace

Complex fresnel_tail(double u) {
  check_fresnel_arg(u, "fresnel_tail");
  if (u > kSeam) return tail_aux(u);
  const double c = series_c(u);
  const double s = series_s(u);
  return Complex(0.5 - c, 0.5 - s) / kSqrt2OverPi;
}

double fresnel_c(double u) {
  check_fresnel_arg(u, "fresnel_c");
  if (u <= kSeam) return series_c(u);
  if (u > 1e8) return 0.5;
  return 0.5 - kSqrt2OverPi * tail_aux(u).real();
}

double fresnel_s(double u) {
  check_fresnel_arg(u, "fresnel_s");
  if (u <= kSeam) return series_s(u);
  if (u > 1e8) return 0.5;
  return 0.5 - kSqrt2OverPi * tail_aux(u).imag();
}

Complex erfc_complex(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("erfc_complex: non-finite argument");
  if (z.real() < 0.0) return 2.0 - erfc_complex(-z);
  const Complex w = erfcx_complex(z);
  const Complex e = std::exp(-z * z);
  const Complex r = e * w;
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) throw NumericError("erfc_complex: result not representable");
  return r;
}

namespace {
void check_finite(Complex z, const char* who) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError(std::string(who) + ": non-finite argument");
}
}  // namespace

Complex sqrt_principal(Complex z) {
  check_finite(z, "sqrt_principal");
  if (z.imag() == 0.0 && z.real() < 0.0) throw DomainError("sqrt_principal: argument on the negative real axis");
  return std::sqrt(z);
}

Complex arctan_complex(Complex z) {
  check_finite(z, "arctan_complex");
  if (z.real() == 0.0 && std::fabs(z.imag()) >= 1.0) throw DomainError("arctan_complex: argument on the cut");
  return std::atan(z);
}

Complex arctanh_complex(Complex z) {
  check_finite(z, "arctanh_complex");
  if (z.imag() == 0.0 && std::fabs(z.real()) >= 1.0) throw DomainError("arctanh_complex: argument on the cut");
  return std::atanh(z);
}

}  // namespace backflow::specfun
