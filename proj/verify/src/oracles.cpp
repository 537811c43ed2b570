#include "backflow/verify/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "backflow/quadrature.hpp"

namespace backflow::verify {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2OverPi = std::sqrt(2.0 / kPi);
const Complex I(0.0, 1.0);
constexpr double kSplit = 4.0;  // L: switch from direct quadrature to rotated rays

quad::Options tight(double tol = 1e-13) {
  quad::Options o;
  o.abs_tol = tol;
  o.rel_tol = 1e-13;
  o.max_panels = 20000;
  o.throw_on_failure = false;
  return o;
}

// G(u) = i int_0^inf e^{-2 u r - i r^2} dr and G-(u) = -i int_0^inf e^{-2 u r + i r^2} dr.
Complex aux_g(Complex u, double sign) {
  const double rmax = 60.0 / u.real();
  const Complex v = quad::integrate_complex(
      [&](double r) { return std::exp(-2.0 * u * r - sign * I * r * r); }, 0.0, rmax, tight(1e-15));
  return sign * I * v;
}

// (1/2 - C(u), 1/2 - S(u)): from int_0^u cos/sin(x^2) dx and the total
// sqrt(pi/8) up to L, from E(u) = e^{iu^2} G(u) beyond.
std::pair<double, double> fresnel_halves(double u) {
  if (u > kSplit) {
    const Complex e = std::exp(I * u * u) * aux_g(u, 1.0);
    return {kSqrt2OverPi * e.real(), kSqrt2OverPi * e.imag()};
  }
  const double total = std::sqrt(kPi / 8.0);
  const double c = quad::integrate_real([](double x) { return std::cos(x * x); }, 0.0, u, tight(1e-15));
  const double s = quad::integrate_real([](double x) { return std::sin(x * x); }, 0.0, u, tight(1e-15));
  return {kSqrt2OverPi * (total - c), kSqrt2OverPi * (total - s)};
}

// int_L^inf u^p e^{i beta u^2} g(u) du along u = L + r e^{i theta}, theta = sgn(beta) pi/4.
Complex rotated_tail(double beta, int power, double sign) {
  const double theta = beta > 0.0 ? kPi / 4.0 : -kPi / 4.0;
  const Complex dir = std::polar(1.0, theta);
  const double ab = std::fabs(beta);
  // e^{-|beta| (sqrt2 L r + r^2)} < e^{-45}
  const double c = std::numbers::sqrt2 * kSplit;
  const double rmax = 0.5 * (-c + std::sqrt(c * c + 4.0 * 45.0 / ab));
  auto f = [&](double r) {
    const Complex u = kSplit + r * dir;
    Complex val = std::exp(I * beta * u * u) * aux_g(u, sign) * dir;
    if (power == 1) val *= u;
    return val;
  };
  return quad::integrate_complex(f, 0.0, rmax, tight(1e-13));
}

Complex fresnel_part(const AmplitudeCoefficients& c, double t, bool v_integral) {
  if (c.cC == 0.0 && c.cS == 0.0) return 0.0;
  // direct part on [0, L]
  auto direct = [&](double u) {
    const auto [hc, hs] = fresnel_halves(u);
    const double h = c.cC * hc + c.cS * hs;
    return v_integral ? u * std::exp(-I * t * u * u) * h : std::exp(I * t * u * u) * h;
  };
  const Complex main = quad::integrate_complex(direct, 0.0, kSplit, tight(1e-13));
  // tail: h = sqrt(2/pi)[A e^{iu^2} G(u) + B e^{-iu^2} G-(u)]
  const Complex A = 0.5 * Complex(c.cC, -c.cS);
  const Complex B = 0.5 * Complex(c.cC, c.cS);
  Complex tail;
  if (v_integral) {
    tail = A * rotated_tail(1.0 - t, 1, 1.0) + B * rotated_tail(-1.0 - t, 1, -1.0);
  } else {
    tail = A * rotated_tail(t + 1.0, 0, 1.0) + B * rotated_tail(t - 1.0, 0, -1.0);
  }
  return main + kSqrt2OverPi * tail;
}

Complex exponential_part(const AmplitudeCoefficients& c, double t, bool v_integral) {
  if (c.cE == 0.0) return 0.0;
  auto f = [&](double u) {
    const double e = c.cE * std::exp(-c.b * u);
    return v_integral ? u * e * std::exp(-I * t * u * u) : e * std::exp(I * t * u * u);
  };
  return quad::integrate_complex(f, 0.0, 45.0 / c.b, tight(1e-14));
}

}  // namespace

double fresnel_c_quadrature(double u) {
  return kSqrt2OverPi * quad::integrate_real([](double x) { return std::cos(x * x); }, 0.0, u, tight(1e-15));
}

double fresnel_s_quadrature(double u) {
  return kSqrt2OverPi * quad::integrate_real([](double x) { return std::sin(x * x); }, 0.0, u, tight(1e-15));
}

double erfc_series(double x) {
  if (x < 0.0) return 2.0 - erfc_series(-x);
  if (x <= 3.0) {
    // erf x = (2/sqrt pi) sum (-1)^n x^{2n+1} / (n! (2n+1))
    long double term = x, sum = x;
    const long double x2 = static_cast<long double>(x) * x;
    for (int n = 1; n < 200; ++n) {
      term *= -x2 / n;
      const long double add = term / (2 * n + 1);
      sum += add;
      if (std::fabs(static_cast<double>(add)) < 1e-22) break;
    }
    return static_cast<double>(1.0L - 2.0L / std::sqrt(static_cast<long double>(kPi)) * sum);
  }
  // erfc x = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
  const double tiny = 1e-300;
  double f = x, C = x, D = 0.0;
  for (int n = 1; n < 500; ++n) {
    const double an = 0.5 * n;
    D = x + an * D;
    if (D == 0.0) D = tiny;
    C = x + an / C;
    if (C == 0.0) C = tiny;
    D = 1.0 / D;
    const double delta = C * D;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x * x) / std::sqrt(kPi) / f;
}

double alternating_tail_integral(const std::function<double(double)>& f, double a, double period, int periods) {
  quad::Options o = tight(1e-14);
  o.rel_tol = 1e-12;
  std::vector<double> partial;
  double acc = 0.0;
  for (int k = 0; k < periods; ++k) {
    acc += quad::integrate_real(f, a + k * period, a + (k + 1) * period, o);
    partial.push_back(acc);
  }
  // repeated averaging of the last partial sums
  std::vector<double> s(partial.end() - 40, partial.end());
  while (s.size() > 1) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) s[i] = 0.5 * (s[i] + s[i + 1]);
    s.pop_back();
  }
  return s[0];
}

Complex u_integral_oracle(const AmplitudeCoefficients& c, double t) {
  return fresnel_part(c, t, false) + exponential_part(c, t, false);
}

Complex v_integral_oracle(const AmplitudeCoefficients& c, double t) {
  return fresnel_part(c, t, true) + exponential_part(c, t, true);
}

double current_oracle(const AmplitudeCoefficients& c, double t) {
  return (u_integral_oracle(c, t) * v_integral_oracle(c, t)).real() / kPi;
}

double norm_squared_oracle(const AmplitudeCoefficients& c) {
  auto phi2 = [&](double u) {
    const auto [hc, hs] = fresnel_halves(u);
    const double v = c.cC * hc + c.cS * hs + c.cE * std::exp(-c.b * u);
    return v * v;
  };
  // phi^2 averages to (cC^2 + cS^2)/(4 pi u^2) at large u: integrate to U and
  // add that tail
  quad::Options o = tight(1e-12);
  double acc = 0.0;
  const double U = 200.0;
  for (double a = 0.0; a < U; a += 1.0) acc += quad::integrate_real(phi2, a, a + 1.0, o);
  return acc + (c.cC * c.cC + c.cS * c.cS) / (4.0 * kPi * U);
}

std::vector<double> characteristic_eigenvalues(const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  using Mat = std::vector<std::vector<long double>>;
  Mat A(n, std::vector<long double>(n)), M(n, std::vector<long double>(n, 0.0L)), AM(n, std::vector<long double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A[i][j] = a[i][j];
  // p(x) = x^n + c_{n-1} x^{n-1} + ... + c_0
  std::vector<long double> coef(n + 1, 0.0L);
  coef[n] = 1.0L;
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        long double s = 0.0L;
        for (std::size_t l = 0; l < n; ++l) s += A[i][l] * M[l][j];
        AM[i][j] = s;
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) M[i][j] = AM[i][j] + (i == j ? coef[n - k + 1] : 0.0L);
    long double tr = 0.0L;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += A[i][l] * M[l][i];
    coef[n - k] = -tr / k;
  }
  auto p = [&](long double x) {
    long double v = 0.0L;
    for (std::size_t k = n + 1; k-- > 0;) v = v * x + coef[k];
    return v;
  };
  long double bound = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    long double row = 0.0L;
    for (std::size_t j = 0; j < n; ++j) row += std::fabs(A[i][j]);
    bound = std::max(bound, row);
  }
  bound += 1.0L;
  std::vector<double> roots;
  const int samples = 200000;
  long double x0 = -bound, p0 = p(x0);
  for (int s = 1; s <= samples && roots.size() < n; ++s) {
    const long double x1 = -bound + 2.0L * bound * s / samples;
    const long double p1 = p(x1);
    if (p0 == 0.0L) {
      roots.push_back(static_cast<double>(x0));
    } else if ((p0 < 0.0L) != (p1 < 0.0L)) {
      long double lo = x0, hi = x1, plo = p0;
      for (int it = 0; it < 200; ++it) {
        const long double mid = 0.5L * (lo + hi);
        const long double pm = p(mid);
        if ((pm < 0.0L) == (plo < 0.0L)) {
          lo = mid;
          plo = pm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(static_cast<double>(0.5L * (lo + hi)));
    }
    x0 = x1;
    p0 = p1;
  }
  return roots;
}

}  // namespace backflow::verify
