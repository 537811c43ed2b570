#include "backflow/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "backflow/errors.hpp"
#include "backflow/kernels.hpp"
#include "backflow/kernelspec.hpp"
#include "backflow/quadrature.hpp"
#include "backflow/specfun.hpp"

namespace backflow::measurement {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string to_string(ArrivalModel m) { return m == ArrivalModel::exact ? "exact" : "weak-limit"; }

double ArrivalDistribution::min_value() const {
  return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
}

std::vector<double> GridWavefunction::x_nodes() const {
  std::vector<double> xs(size());
  for (std::size_t j = 0; j < size(); ++j) xs[j] = x(j);
  return xs;
}

double GridWavefunction::norm() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return s * dx;
}

double GridWavefunction::probability_right() const {
  double s = 0.0;
  for (std::size_t j = 0; j < size(); ++j) {
    const double xj = x(j);
    if (std::fabs(xj) < 0.5e-9 * dx)
      s += 0.5 * std::norm(values[j]);
    else if (xj > 0.0)
      s += std::norm(values[j]);
  }
  return s * dx;
}

double GridWavefunction::boundary_density() const {
  if (values.empty()) return 0.0;
  return std::max(std::norm(values.front()), std::norm(values.back()));
}

double GridWavefunction::mean_x() const {
  double s = 0.0, n = 0.0;
  for (std::size_t j = 0; j < size(); ++j) {
    s += x(j) * std::norm(values[j]);
    n += std::norm(values[j]);
  }
  return s / n;
}

namespace {

std::size_t grid_points(const PositionGrid& pg) {
  if (!(pg.dx > 0.0) || !(pg.x_max > pg.x_min)) throw ParameterError("position grid: need dx > 0 and x_max > x_min");
  return static_cast<std::size_t>(std::floor((pg.x_max - pg.x_min) / pg.dx + 1e-9)) + 1;
}

struct SampledMomentum {
  std::vector<double> u, f;  // f = weight * phi * taper
  double k_max;
};

SampledMomentum sample_momentum(const states::MomentumState& s, const TransformOptions& o) {
  SampledMomentum out;
  if (auto g = std::get_if<states::GridMomentumState>(&s)) {
    out.u = g->grid.nodes;
    out.f.resize(out.u.size());
    for (std::size_t i = 0; i < out.u.size(); ++i) out.f[i] = g->grid.weights[i] * g->values[i];
    out.k_max = g->grid.u_max;
    return out;
  }
  if (!std::holds_alternative<states::Guess1State>(s) && !std::holds_alternative<states::Guess2State>(s))
    throw ParameterError("momentum transform needs a guess or grid state");
  // phi itself oscillates like e^{iu^2}: each panel must hold only a few periods
  if (2.0 * o.u_max * o.panel_width > 3.0 * o.panel_order)
    throw ParameterError("momentum transform: panels too wide to resolve the amplitude at u_max");
  const auto grid = kernelspec::build_panel_grid(o.u_max, o.panel_width, o.panel_order);
  const double t0 = o.u_max - o.taper_width;
  out.u = grid.nodes;
  out.f.resize(out.u.size());
  for (std::size_t i = 0; i < out.u.size(); ++i) {
    const double u = out.u[i];
    double phi = 0.0;
    if (auto g1 = std::get_if<states::Guess1State>(&s)) phi = states::eval_phi(*g1, u);
    if (auto g2 = std::get_if<states::Guess2State>(&s)) phi = states::eval_phi(*g2, u);
    double taper = 1.0;
    if (o.taper_width > 0.0 && u > t0) {
      const double c = std::cos(0.5 * kPi * (u - t0) / o.taper_width);
      taper = c * c;
    }
    out.f[i] = grid.weights[i] * phi * taper;
  }
  out.k_max = o.u_max;
  return out;
}

}  // namespace

GridWavefunction from_gaussian(const states::GaussianSuperposition& g, const PositionGrid& pg, double t) {
  const std::size_t n = grid_points(pg);
  GridWavefunction w;
  w.x0 = pg.x_min;
  w.dx = pg.dx;
  w.time = t;
  w.mass = 1.0;
  w.k_max = std::max(std::fabs(g.p1), std::fabs(g.p2)) + 6.0 / g.sigma;
  w.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) w.values[j] = states::position_wavefunction(g, w.x(j), t);
  return w;
}

// Narrows the panels so the phase u x - u^2 t + u^2 turns by at most two
// radians per node across every panel.
static TransformOptions resolved_for(TransformOptions o, double x_abs, double t) {
  const double rate = x_abs + 2.0 * o.u_max * (std::fabs(t) + 1.0);
  const double width = 2.0 * o.panel_order / rate;
  if (width < o.panel_width) o.panel_width = o.u_max / std::ceil(o.u_max / width);
  return o;
}

GridWavefunction from_momentum_state(const states::MomentumState& s, const PositionGrid& pg, double t,
                                     const TransformOptions& opts) {
  const std::size_t n = grid_points(pg);
  const auto sm = sample_momentum(s, resolved_for(opts, std::max(std::fabs(pg.x_min), std::fabs(pg.x_max)), t));
  GridWavefunction w;
  w.x0 = pg.x_min;
  w.dx = pg.dx;
  w.time = t;
  w.mass = 0.5;
  w.k_max = sm.k_max;
  w.values.resize(n);
  kernels::momentum_to_position(sm.u, sm.f, w.x_nodes(), t, w.values);
  return w;
}

double position_space_current(const states::MomentumState& s, double t, const TransformOptions& opts) {
  const auto sm = sample_momentum(s, resolved_for(opts, 0.0, t));
  std::vector<Complex> psi, dpsi;
  kernels::momentum_to_position(sm.u, sm.f, {0.0}, t, psi, &dpsi);
  return 2.0 * (std::conj(psi[0]) * dpsi[0]).imag();  // (1/m) Im(psi* psi'), m = 1/2
}

ArrivalDistribution smear_current(const CurrentFunction& J, double V0, const std::vector<double>& times,
                                  const std::vector<double>& breakpoints, double tol) {
  if (!(V0 > 0.0)) throw ParameterError("smear_current: V0 must be positive");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1])) throw ParameterError("smear_current: times must be strictly increasing");
  ArrivalDistribution out;
  out.times = times;
  out.V0 = V0;
  out.model = ArrivalModel::weak_limit;
  out.values.resize(times.size());
  if (times.empty()) return out;

  const double rate = 2.0 * V0;
  quad::Options o;
  o.abs_tol = tol;
  o.rel_tol = 0.0;
  o.max_panels = 20000;
  auto segment = [&](double a, double b) {
    // 2 V0 int_a^b e^{-2 V0 (b - t)} J(t) dt
    return rate * quad::integrate_real([&](double t) { return std::exp(-rate * (b - t)) * J(t); }, a, b, o,
                                       breakpoints);
  };
  const double lower = times.front() - 37.0 / rate;
  double pi = segment(lower, times.front());
  out.values[0] = pi;
  for (std::size_t k = 1; k < times.size(); ++k) {
    pi = std::exp(-rate * (times[k] - times[k - 1])) * pi + segment(times[k - 1], times[k]);
    out.values[k] = pi;
  }
  return out;
}

currents::CurrentTrace deconvolve(const ArrivalDistribution& pi, const DeconvolveOptions& opts) {
  if (!(pi.V0 > 0.0)) throw ParameterError("deconvolve: V0 must be positive");
  const auto& t = pi.times;
  const auto& p = pi.values;
  const std::size_t n = t.size();
  currents::CurrentTrace out;
  out.times = t;
  out.values.assign(n, std::numeric_limits<double>::quiet_NaN());
  out.excluded.assign(n, false);
  out.state = "deconvolved";
  if (n < 5) throw AccuracyError("deconvolve: fewer than five samples", 0.0, 0.0);

  double worst = 0.0;
  std::size_t start = 0;
  while (start < n) {
    // maximal uniformly spaced run beginning at `start`
    std::size_t end = start + 1;
    if (end < n) {
      const double h = t[end] - t[start];
      while (end + 1 < n && std::fabs((t[end + 1] - t[end]) - h) <= 1e-9 * h) ++end;
    }
    const std::size_t len = end - start + 1;
    if (len < 5) throw AccuracyError("deconvolve: a uniformly sampled run has fewer than five points", 0.0, 0.0);
    const double h = (t[end] - t[start]) / (len - 1);
    for (std::size_t i = start; i <= end; ++i) {
      double d5, d3;
      const std::size_t k = i - start;
      if (k >= 2 && i + 2 <= end) {
        d5 = (p[i - 2] - 8.0 * p[i - 1] + 8.0 * p[i + 1] - p[i + 2]) / (12.0 * h);
        d3 = (p[i + 1] - p[i - 1]) / (2.0 * h);
      } else if (k < 2) {
        d5 = (-25.0 * p[i] + 48.0 * p[i + 1] - 36.0 * p[i + 2] + 16.0 * p[i + 3] - 3.0 * p[i + 4]) / (12.0 * h);
        d3 = (-3.0 * p[i] + 4.0 * p[i + 1] - p[i + 2]) / (2.0 * h);
      } else {
        d5 = (25.0 * p[i] - 48.0 * p[i - 1] + 36.0 * p[i - 2] - 16.0 * p[i - 3] + 3.0 * p[i - 4]) / (12.0 * h);
        d3 = (3.0 * p[i] - 4.0 * p[i - 1] + p[i - 2]) / (2.0 * h);
      }
      worst = std::max(worst, std::fabs(d5 - d3) / (2.0 * pi.V0));
      out.values[i] = p[i] + d5 / (2.0 * pi.V0);
    }
    start = end + 1;
  }
  if (worst > opts.max_error) {
    throw AccuracyError("deconvolve: sampling too coarse for stable differencing", worst, worst);
  }
  return out;
}

double sequential_probability(const states::MomentumState& s, double t1, double t2, const SequentialOptions& opts) {
  if (t2 < t1) throw ParameterError("sequential_probability: need t1 <= t2");
  GridWavefunction w;
  if (auto g = std::get_if<states::GaussianSuperposition>(&s))
    w = from_gaussian(*g, opts.grid, t1);
  else
    w = from_momentum_state(s, opts.grid, t1, opts.transform);
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double x = w.x(j);
    if (std::fabs(x) < 0.5e-9 * w.dx)
      w.values[j] *= std::sqrt(0.5);
    else if (x > 0.0)
      w.values[j] = 0.0;
  }
  if (t2 == t1) return w.probability_right();
  // stay inside the propagator's resolution limit for the fastest momentum
  const double dt_max = 0.4 * 2.0 * w.mass / (w.k_max * w.k_max);
  const double dt_req = std::min(opts.dt, dt_max);
  const int steps = std::max(1, static_cast<int>(std::ceil((t2 - t1) / dt_req - 1e-9)));
  const double dt = (t2 - t1) / steps;
  const auto tr = propagate(w, dt, steps, 0.0);
  // growth of the edge density over its initial value; the guess states carry
  // slowly decaying tails that sit at the edges from the start
  const double leak =
      *std::max_element(tr.boundary_density.begin(), tr.boundary_density.end()) - w.boundary_density();
  const double p = tr.final_state.probability_right();
  if (leak > opts.leakage_tol)
    throw AccuracyError("sequential_probability: wavefunction reached the grid edge", p, leak);
  return std::clamp(p, 0.0, 1.0);
}

namespace {

double probability_left_gaussian(const states::GaussianSuperposition& g, double t) {
  const Complex d(4.0 * g.sigma * g.sigma, 2.0 * t);
  const Complex dbar = std::conj(d);
  const double alpha = 2.0 * (1.0 / d).real();
  const double sa = std::sqrt(alpha);
  const double A[2] = {g.A1, g.A2};
  const double P[2] = {g.p1, g.p2};
  const Complex I(0.0, 1.0);
  Complex total{};
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      const Complex B = I * (P[k] - P[j]) + 2.0 * P[j] * t / dbar + 2.0 * P[k] * t / d;
      const Complex G = I * (P[j] * P[j] - P[k] * P[k]) * t / 2.0 - P[j] * P[j] * t * t / dbar -
                        P[k] * P[k] * t * t / d;
      const Complex z = B / (2.0 * sa);
      Complex integral;
      if (z.real() >= 0.0) {
        integral = std::exp(G) * specfun::erfcx_complex(z);
      } else {
        integral = 2.0 * std::exp(G + z * z) - std::exp(G) * specfun::erfcx_complex(-z);
      }
      total += A[j] * A[k] / std::abs(d) * 0.5 * std::sqrt(kPi / alpha) * integral;
    }
  }
  return g.norm * g.norm * total.real();
}

}  // namespace

std::vector<double> probability_left_curve(const states::MomentumState& s, const std::vector<double>& times,
                                           const LeftProbabilityOptions& opts) {
  std::vector<double> out(times.size());
  if (auto g = std::get_if<states::GaussianSuperposition>(&s)) {
    for (std::size_t i = 0; i < times.size(); ++i) out[i] = probability_left_gaussian(*g, times[i]);
    return out;
  }
  if (std::holds_alternative<states::PlaneWavePair>(s))
    throw ParameterError("probability_left: plane waves are not normalizable");

  TransformOptions to;
  to.u_max = opts.u_max;
  to.taper_width = 0.0;
  to.panel_width = opts.panel_width;
  to.panel_order = opts.panel_order;
  const auto sm = sample_momentum(s, to);
  std::vector<double> w(sm.u.size());
  double captured = 0.0;
  if (auto gs = std::get_if<states::GridMomentumState>(&s)) {
    for (std::size_t i = 0; i < w.size(); ++i) captured += gs->grid.weights[i] * gs->values[i] * gs->values[i];
    captured = std::min(captured, 1.0);
  } else {
    const auto grid = kernelspec::build_panel_grid(opts.u_max, opts.panel_width, opts.panel_order);
    for (std::size_t i = 0; i < w.size(); ++i) captured += sm.f[i] * sm.f[i] / grid.weights[i];
  }
  const double missing = 1.0 - captured;
  if (missing > opts.max_missing_norm)
    throw AccuracyError("probability_left: momentum cutoff leaves too much norm outside the grid", missing, missing);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const double tail = t < -1.0 ? 1.0 : (t > 1.0 ? 0.0 : 0.5);
    const double q = kernels::time_window_form(sm.u, sm.f, t);
    out[i] = std::clamp(0.5 * captured - q / (2.0 * kPi) + missing * tail, 0.0, 1.0);
  }
  return out;
}

double probability_left(const states::MomentumState& s, double t, const LeftProbabilityOptions& opts) {
  return probability_left_curve(s, {t}, opts).front();
}

KinkReport derivative_kinks(const ArrivalDistribution& pi, double window) {
  KinkReport rep;
  const auto& t = pi.times;
  const auto& p = pi.values;
  std::vector<double> background;
  for (std::size_t k = 1; k + 1 < t.size(); ++k) {
    const double left = (p[k] - p[k - 1]) / (t[k] - t[k - 1]);
    const double right = (p[k + 1] - p[k]) / (t[k + 1] - t[k]);
    const double jump = std::fabs(right - left);
    if (std::fabs(t[k] + 1.0) < window) {
      if (jump > rep.jump_minus) {
        rep.jump_minus = jump;
        rep.t_minus = t[k];
      }
    } else if (std::fabs(t[k] - 1.0) < window) {
      if (jump > rep.jump_plus) {
        rep.jump_plus = jump;
        rep.t_plus = t[k];
      }
    } else {
      background.push_back(jump);
    }
  }
  if (!background.empty()) {
    std::nth_element(background.begin(), background.begin() + background.size() / 2, background.end());
    rep.background = background[background.size() / 2];
  }
  return rep;
}

}  // namespace backflow::measurement
