#include "backflow/currents.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

#include "backflow/errors.hpp"
#include "backflow/kernels.hpp"
#include "backflow/specfun.hpp"

namespace backflow::currents {

namespace {

using specfun::arctan_complex;
using specfun::arctanh_complex;
using specfun::sqrt_principal;

constexpr double kPi = std::numbers::pi;
const Complex I(0.0, 1.0);

void check_singular(double t) {
  if (std::fabs(t) == 1.0) throw SingularityError("closed-form current is singular at t = +-1");
  if (!std::isfinite(t)) throw DomainError("time must be finite");
}

// Fresnel part of U: int_0^inf e^{i tau u^2} N[c(1/2 - C) + s(1/2 - S)] du
// for (c, s) = (1, a); the (c, s) = (1, 0) case is the guess-2 tail term.
Complex fresnel_u(double t, double eps, double a, double N) {
  const Complex tau(t, eps);
  const Complex w = 1.0 / sqrt_principal(tau);
  const Complex bracket =
      kPi * (1.0 + I) * (1.0 + a) / 2.0 - (I + a) * arctan_complex(w) - (I - a) * arctanh_complex(w);
  return N / (2.0 * sqrt_principal(2.0 * kPi * tau)) * bracket;
}

// Fresnel part of V, with (1 - 1/sqrt(s))/(s - 1) = 1/(sqrt(s)(sqrt(s) + 1))
// to avoid the cancellation of the direct form near t = 0.
Complex fresnel_v(double t, double eps, double a, double N) {
  const Complex s1(1.0 - t, eps);
  const Complex s2(1.0 + t, -eps);
  const Complex r1 = sqrt_principal(s1);
  const Complex r2 = sqrt_principal(s2);
  const Complex sqrt_mi = sqrt_principal(-I);
  const Complex sqrt_i = sqrt_principal(I);
  const Complex bracket =
      -(1.0 - I * a) * sqrt_mi / (r1 * (r1 + 1.0)) - (1.0 + I * a) * sqrt_i / (r2 * (r2 + 1.0));
  return N / (4.0 * std::numbers::sqrt2) * bracket;
}

}  // namespace

double current_plane_waves(double t, const states::PlaneWavePair& s) {
  const double e1 = 0.5 * s.p1 * s.p1;
  const double e2 = 0.5 * s.p2 * s.p2;
  return s.A1 * s.A1 * s.p1 + s.A2 * s.A2 * s.p2 + s.A1 * s.A2 * (s.p1 + s.p2) * std::cos((e1 - e2) * t);
}

std::pair<double, double> plane_wave_extremes(const states::PlaneWavePair& s) {
  const double hi = (s.A1 * s.p1 + s.A2 * s.p2) * (s.A1 + s.A2);
  const double lo = (s.A1 * s.p1 - s.A2 * s.p2) * (s.A1 - s.A2);
  return {std::min(lo, hi), std::max(lo, hi)};
}

double current_gaussian(double t, const states::GaussianSuperposition& g) {
  const Complex psi = states::position_wavefunction(g, 0.0, t);
  const Complex dpsi = states::position_wavefunction_dx(g, 0.0, t);
  return (std::conj(psi) * dpsi).imag();
}

Complex u_factor_guess1(double t, const states::Guess1State& s) {
  check_singular(t);
  return fresnel_u(t, s.epsilon, s.a, s.N);
}

Complex v_factor_guess1(double t, const states::Guess1State& s) {
  check_singular(t);
  return fresnel_v(t, s.epsilon, s.a, s.N);
}

double current_guess1(double t, const states::Guess1State& s) {
  return (u_factor_guess1(t, s) * v_factor_guess1(t, s)).real() / kPi;
}

Complex u_factor_guess2(double t, const states::Guess2State& s) {
  check_singular(t);
  const Complex tau(t, s.epsilon);
  const Complex r = sqrt_principal(I / tau);
  const Complex expo = 0.5 * s.a * s.N * std::sqrt(kPi) * r * specfun::erfcx_complex(0.5 * s.b * r);
  return expo + fresnel_u(t, s.epsilon, 0.0, s.N);
}

Complex v_factor_guess2(double t, const states::Guess2State& s) {
  check_singular(t);
  const Complex alpha(s.epsilon, t);
  const Complex ra = sqrt_principal(alpha);
  const Complex expo =
      s.a * s.N / (2.0 * alpha) *
      (1.0 - 0.5 * s.b * std::sqrt(kPi) / ra * specfun::erfcx_complex(s.b / (2.0 * ra)));
  return expo + fresnel_v(t, s.epsilon, 0.0, s.N);
}

double current_guess2(double t, const states::Guess2State& s) {
  return (u_factor_guess2(t, s) * v_factor_guess2(t, s)).real() / kPi;
}

double current_grid(double t, const states::GridMomentumState& s) {
  check_singular(t);
  const auto& u = s.grid.nodes;
  Complex U{}, V{};
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double f = s.grid.weights[i] * s.values[i];
    const Complex e = std::polar(1.0, t * u[i] * u[i]);
    U += f * e;
    V += f * u[i] * std::conj(e);
  }
  return (U * V).real() / kPi;
}

double current(const states::MomentumState& s, double t) {
  struct V {
    double t;
    double operator()(const states::PlaneWavePair& x) const { return current_plane_waves(t, x); }
    double operator()(const states::GaussianSuperposition& x) const { return current_gaussian(t, x); }
    double operator()(const states::Guess1State& x) const { return current_guess1(t, x); }
    double operator()(const states::Guess2State& x) const { return current_guess2(t, x); }
    double operator()(const states::GridMomentumState& x) const { return current_grid(t, x); }
  };
  return std::visit(V{t}, s);
}

std::vector<double> singular_times(const states::MomentumState& s) {
  if (std::holds_alternative<states::PlaneWavePair>(s) || std::holds_alternative<states::GaussianSuperposition>(s))
    return {};
  return {-1.0, 1.0};
}

bool is_excluded(const states::MomentumState& s, double t) {
  for (double ts : singular_times(s))
    if (t == ts) return true;
  return false;
}

std::vector<double> linspace(double lo, double hi, int samples) {
  if (samples < 1) throw ParameterError("linspace: need at least one sample");
  std::vector<double> t(samples);
  if (samples == 1) {
    t[0] = lo;
    return t;
  }
  for (int i = 0; i < samples; ++i) t[i] = lo + (hi - lo) * i / (samples - 1);
  return t;
}

CurrentTrace trace(const states::MomentumState& s, const std::vector<double>& times) {
  CurrentTrace tr;
  tr.times = times;
  tr.state = states::family_name(s);
  if (auto g = std::get_if<states::Guess1State>(&s)) tr.epsilon = g->epsilon;
  if (auto g = std::get_if<states::Guess2State>(&s)) tr.epsilon = g->epsilon;
  const long n = static_cast<long>(times.size());
  tr.values.assign(n, std::numeric_limits<double>::quiet_NaN());
  tr.excluded.assign(n, false);
  for (long i = 0; i < n; ++i) tr.excluded[i] = is_excluded(s, times[i]);

  if (auto g = std::get_if<states::GridMomentumState>(&s)) {
    std::vector<double> f(g->values.size()), tt, jj;
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = g->grid.weights[i] * g->values[i];
    std::vector<long> idx;
    for (long i = 0; i < n; ++i)
      if (!tr.excluded[i]) {
        idx.push_back(i);
        tt.push_back(times[i]);
      }
    kernels::grid_current(g->grid.nodes, f, tt, jj);
    for (std::size_t k = 0; k < idx.size(); ++k) tr.values[idx[k]] = jj[k];
    return tr;
  }

  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) {
    if (tr.excluded[i]) continue;
    try {
      tr.values[i] = current(s, times[i]);
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return tr;
}

double current_t0_factorized(double int_phi, double int_u_phi) { return int_phi * int_u_phi / kPi; }

double asymptotic_state_t0_current() {
  // int_0^inf sin(u^2)/u du = pi/4, int_0^inf sin(u^2) du = sqrt(pi/8)
  return current_t0_factorized(kPi / 4.0, std::sqrt(kPi / 8.0));
}

BesselCheck bessel_t0_check() {
  BesselCheck b;
  b.int_u_j0 = 0.5;
  b.int_j0 = std::numbers::sqrt2 * std::tgamma(1.25) / std::tgamma(0.75);
  b.current_t0 = current_t0_factorized(b.int_j0, b.int_u_j0);
  return b;
}

}  // namespace backflow::currents
