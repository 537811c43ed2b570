#include "backflow/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "backflow/errors.hpp"
#include "backflow/specfun.hpp"

namespace backflow {

std::string to_string(GridScheme s) {
  switch (s) {
    case GridScheme::gauss_legendre: return "gauss-legendre";
    case GridScheme::trapezoid: return "trapezoid";
    case GridScheme::panel_gauss_legendre: return "panel-gauss-legendre";
  }
  return "unknown";
}

GridScheme grid_scheme_from_string(const std::string& s) {
  if (s == "gauss-legendre") return GridScheme::gauss_legendre;
  if (s == "trapezoid") return GridScheme::trapezoid;
  if (s == "panel-gauss-legendre") return GridScheme::panel_gauss_legendre;
  throw ParameterError("unknown grid scheme '" + s + "'");
}

bool QuadratureGrid::same_as(const QuadratureGrid& o) const {
  if (nodes.size() != o.nodes.size() || scheme != o.scheme || u_max != o.u_max) return false;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] != o.nodes[i] || weights[i] != o.weights[i]) return false;
  return true;
}

}  // namespace backflow

namespace backflow::states {

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);

void check_epsilon(double eps) {
  if (!(eps > 0.0 && eps <= 1e-3)) throw ParameterError("regulator epsilon must lie in (0, 1e-3]");
}
}  // namespace

std::string family_name(const MomentumState& s) {
  struct V {
    std::string operator()(const PlaneWavePair&) const { return "planewaves"; }
    std::string operator()(const GaussianSuperposition&) const { return "gauss2"; }
    std::string operator()(const Guess1State&) const { return "guess1"; }
    std::string operator()(const Guess2State&) const { return "guess2"; }
    std::string operator()(const GridMomentumState&) const { return "grid"; }
  };
  return std::visit(V{}, s);
}

PlaneWavePair make_plane_waves(double p1, double p2, double A1, double A2) {
  if (!(p1 > 0.0 && p2 > 0.0)) throw ParameterError("plane-wave momenta must be positive");
  if (!std::isfinite(A1) || !std::isfinite(A2)) throw ParameterError("plane-wave amplitudes must be finite");
  return {p1, p2, A1, A2};
}

GaussianSuperposition make_gaussian(double p1, double p2, double sigma, double A1, double A2) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ParameterError("gaussian width sigma must be positive");
  if (!std::isfinite(p1) || !std::isfinite(p2) || !std::isfinite(A1) || !std::isfinite(A2))
    throw ParameterError("gaussian parameters must be finite");
  GaussianSuperposition g{p1, p2, sigma, A1, A2, 1.0};
  // int |psi(x,0)|^2 dx with the unnormalized packets A_k e^{i p_k x - x^2/4s^2}/(2s)
  const double dp = p1 - p2;
  const double cross = std::exp(-0.5 * sigma * sigma * dp * dp);
  const double n2 = std::sqrt(2.0 * kPi) * sigma / (4.0 * sigma * sigma) * (A1 * A1 + A2 * A2 + 2.0 * A1 * A2 * cross);
  if (!(n2 > 0.0)) throw ParameterError("gaussian superposition is not normalizable");
  g.norm = 1.0 / std::sqrt(n2);
  return g;
}

GaussianSuperposition preset_gaussian(const std::string& name) {
  if (name == "paper-gauss-A") return make_gaussian(0.5, 2.0, 10.0, 1.7, 1.0);
  if (name == "paper-gauss-B") return make_gaussian(0.3, 1.4, 10.0, 1.8, 1.0);
  throw ParameterError("unknown preset '" + name + "'");
}

double norm_guess1(double a) {
  if (!std::isfinite(a)) throw ParameterError("guess-1 parameter a must be finite");
  const double inv2 = (1.0 + a * a + 2.0 * a * (1.0 + a) * (std::numbers::sqrt2 - 1.0)) / (4.0 * kSqrtPi);
  if (!(inv2 > 0.0)) throw ParameterError("guess-1 norm is not positive");
  return 1.0 / std::sqrt(inv2);
}

double norm_guess2(double a, double b) {
  if (!(b > 0.0) || !std::isfinite(b)) throw ParameterError("guess-2 decay rate b must be positive");
  if (!std::isfinite(a)) throw ParameterError("guess-2 amplitude a must be finite");
  // int_0^inf e^{-bu} C(u) du = (1/b){[1/2 - S(b/2)] cos(b^2/4) - [1/2 - C(b/2)] sin(b^2/4)}
  const double h = 0.5 * b;
  const double lap =
      ((0.5 - specfun::fresnel_s(h)) * std::cos(h * h) - (0.5 - specfun::fresnel_c(h)) * std::sin(h * h)) / b;
  const double inv2 = a * a / (2.0 * b) + 1.0 / (4.0 * kSqrtPi) + a / b - 2.0 * a * lap;
  if (!(inv2 > 0.0)) throw ParameterError("guess-2 norm is not positive");
  return 1.0 / std::sqrt(inv2);
}

double norm_guess2_mismatched_inverse_square(double a, double b) {
  if (!(b > 0.0)) throw ParameterError("guess-2 decay rate b must be positive");
  const double h = b / kPi;
  return a * a / (2.0 * b) + 1.0 / (4.0 * kSqrtPi) + a / b -
         2.0 * a / b *
             ((0.5 - specfun::fresnel_s(h)) * std::cos(0.5 * b * b) -
              (0.5 - specfun::fresnel_c(h)) * std::sin(0.5 * b * b));
}

Guess1State make_guess1(double a, double epsilon) {
  check_epsilon(epsilon);
  return {a, epsilon, norm_guess1(a)};
}

Guess2State make_guess2(double a, double b, double epsilon) {
  check_epsilon(epsilon);
  return {a, b, epsilon, norm_guess2(a, b)};
}

GridMomentumState make_grid_state(QuadratureGrid grid, std::vector<double> values, bool normalize,
                                  std::string label) {
  if (values.size() != grid.size()) throw ParameterError("grid state: value count differs from grid size");
  GridMomentumState s{std::move(grid), std::move(values), std::move(label)};
  if (normalize) {
    const double n2 = grid_norm_squared(s);
    if (!(n2 > 0.0)) throw ParameterError("grid state has zero norm");
    const double f = 1.0 / std::sqrt(n2);
    for (double& v : s.values) v *= f;
  }
  return s;
}

double grid_norm_squared(const GridMomentumState& s) {
  double n2 = 0.0;
  for (std::size_t i = 0; i < s.values.size(); ++i) n2 += s.grid.weights[i] * s.values[i] * s.values[i];
  return n2;
}

double eval_phi(const Guess1State& s, double u) {
  if (!(u >= 0.0)) throw DomainError("eval_phi: u must be >= 0");
  const auto e = specfun::fresnel_tail(u) * std::sqrt(2.0 / kPi);  // (1/2 - C) + i (1/2 - S)
  return s.N * (e.real() + s.a * e.imag());
}

double eval_phi(const Guess2State& s, double u) {
  if (!(u >= 0.0)) throw DomainError("eval_phi: u must be >= 0");
  return s.N * (s.a * std::exp(-s.b * u) + 0.5 - specfun::fresnel_c(u));
}

double eval_phi(const GridMomentumState& s, double u) {
  if (!(u >= 0.0)) throw DomainError("eval_phi: u must be >= 0");
  const auto& x = s.grid.nodes;
  const std::size_t n = x.size();
  if (n == 0 || u > s.grid.u_max) return 0.0;
  if (n < 4) {
    std::size_t k = std::lower_bound(x.begin(), x.end(), u) - x.begin();
    return s.values[std::min(k, n - 1)];
  }
  std::size_t k = std::lower_bound(x.begin(), x.end(), u) - x.begin();
  std::size_t lo = k >= 2 ? k - 2 : 0;
  lo = std::min(lo, n - 4);
  double sum = 0.0;
  for (std::size_t i = lo; i < lo + 4; ++i) {
    double li = 1.0;
    for (std::size_t j = lo; j < lo + 4; ++j)
      if (j != i) li *= (u - x[j]) / (x[i] - x[j]);
    sum += li * s.values[i];
  }
  return sum;
}

double negative_momentum_probability(const GaussianSuperposition& g, int component) {
  if (component != 1 && component != 2) throw ParameterError("component must be 1 or 2");
  const double p = component == 1 ? g.p1 : g.p2;
  const double s2 = std::sqrt(2.0) * g.sigma;
  return 0.5 * kSqrtPi / s2 * std::erfc(s2 * p);
}

double negative_momentum_mass(const GaussianSuperposition& g, int component) {
  if (component != 1 && component != 2) throw ParameterError("component must be 1 or 2");
  const double p = component == 1 ? g.p1 : g.p2;
  return 0.5 * std::erfc(std::sqrt(2.0) * g.sigma * p);
}

namespace {
// Packet k at (x, t) and the log-derivative factor d/dx log(packet).
Complex packet(double A, double p, double sigma, double x, double t, Complex* dlog) {
  const Complex d(4.0 * sigma * sigma, 2.0 * t);
  const double xc = x - p * t;
  const Complex expo = Complex(0.0, p * (x - 0.5 * p * t)) - xc * xc / d;
  if (dlog) *dlog = Complex(0.0, p) - 2.0 * xc / d;
  return A / std::sqrt(d) * std::exp(expo);
}
}  // namespace

Complex position_wavefunction(const GaussianSuperposition& g, double x, double t) {
  return g.norm * (packet(g.A1, g.p1, g.sigma, x, t, nullptr) + packet(g.A2, g.p2, g.sigma, x, t, nullptr));
}

Complex position_wavefunction_dx(const GaussianSuperposition& g, double x, double t) {
  Complex d1, d2;
  const Complex f1 = packet(g.A1, g.p1, g.sigma, x, t, &d1);
  const Complex f2 = packet(g.A2, g.p2, g.sigma, x, t, &d2);
  return g.norm * (f1 * d1 + f2 * d2);
}

}  // namespace backflow::states
