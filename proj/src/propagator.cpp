#include <cmath>
#include <numbers>

#include "backflow/errors.hpp"
#include "backflow/measurement.hpp"

namespace backflow::measurement {

namespace {

double step_function(double x, double dx) {
  if (std::fabs(x) < 0.5e-9 * dx) return 0.5;
  return x > 0.0 ? 1.0 : 0.0;
}

// Tridiagonal system with constant off-diagonal `off` and diagonal `diag`,
// factored once; solve() runs the Thomas sweeps.
struct ThomasSolver {
  std::vector<Complex> cprime, denom;
  Complex off;

  ThomasSolver(const std::vector<Complex>& diag, Complex offdiag) : cprime(diag.size()), denom(diag.size()), off(offdiag) {
    const std::size_t n = diag.size();
    denom[0] = diag[0];
    cprime[0] = off / denom[0];
    for (std::size_t i = 1; i < n; ++i) {
      denom[i] = diag[i] - off * cprime[i - 1];
      cprime[i] = off / denom[i];
    }
  }

  void solve(std::vector<Complex>& d) const {
    const std::size_t n = d.size();
    d[0] /= denom[0];
    for (std::size_t i = 1; i < n; ++i) d[i] = (d[i] - off * d[i - 1]) / denom[i];
    for (std::size_t i = n - 1; i-- > 0;) d[i] -= cprime[i] * d[i + 1];
  }
};

}  // namespace

Trajectory propagate(const GridWavefunction& psi, double dt, int n_steps, double V0, const PropagationOptions& opts) {
  if (!(dt > 0.0) || n_steps < 0) throw ParameterError("propagate: need dt > 0 and n_steps >= 0");
  if (!(V0 >= 0.0)) throw ParameterError("propagate: V0 must be >= 0");
  if (psi.size() < 3 || !(psi.dx > 0.0) || !(psi.mass > 0.0)) throw ParameterError("propagate: invalid grid");
  const double kmax = psi.k_max > 0.0 ? psi.k_max : std::numbers::pi / psi.dx;
  if (dt * kmax * kmax / (2.0 * psi.mass) >= 0.5)
    throw ParameterError("propagate: time step does not resolve the fastest momentum (dt k_max^2 / 2m >= 0.5)");

  const std::size_t n = psi.size();
  const double r = dt / (4.0 * psi.mass * psi.dx * psi.dx);
  const Complex I(0.0, 1.0);
  std::vector<Complex> diag_a(n), diag_b(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double g = 0.5 * dt * V0 * step_function(psi.x(j), psi.dx);
    diag_a[j] = 1.0 + 2.0 * I * r + g;
    diag_b[j] = 1.0 - 2.0 * I * r - g;
  }
  const Complex off_a = -I * r;
  const Complex off_b = I * r;
  const ThomasSolver solver(diag_a, off_a);

  Trajectory tr;
  tr.V0 = V0;
  tr.final_state = psi;
  auto& cur = tr.final_state.values;
  std::vector<Complex> rhs(n);
  auto record = [&](int k) {
    tr.times.push_back(psi.time + k * dt);
    tr.norms.push_back(tr.final_state.norm());
    tr.boundary_density.push_back(tr.final_state.boundary_density());
    if (opts.snapshot_every > 0 && k % opts.snapshot_every == 0) tr.snapshots.push_back(tr.final_state);
  };
  record(0);
  for (int k = 1; k <= n_steps; ++k) {
    rhs[0] = diag_b[0] * cur[0] + off_b * cur[1];
    for (std::size_t j = 1; j + 1 < n; ++j) rhs[j] = diag_b[j] * cur[j] + off_b * (cur[j - 1] + cur[j + 1]);
    rhs[n - 1] = diag_b[n - 1] * cur[n - 1] + off_b * cur[n - 2];
    solver.solve(rhs);
    cur.swap(rhs);
    tr.final_state.time = psi.time + k * dt;
    record(k);
  }
  return tr;
}

SurvivalArrival survival_and_arrival(const Trajectory& tr) {
  SurvivalArrival out;
  out.times = tr.times;
  out.survival = tr.norms;
  out.arrival.times = tr.times;
  out.arrival.V0 = tr.V0;
  out.arrival.model = ArrivalModel::exact;
  const std::size_t n = tr.norms.size();
  out.arrival.values.assign(n, 0.0);
  if (n >= 2) {
    const double h = tr.times[1] - tr.times[0];
    out.arrival.values[0] = (tr.norms[0] - tr.norms[1]) / h;
    out.arrival.values[n - 1] = (tr.norms[n - 2] - tr.norms[n - 1]) / h;
    for (std::size_t k = 1; k + 1 < n; ++k) out.arrival.values[k] = (tr.norms[k - 1] - tr.norms[k + 1]) / (2.0 * h);
    out.absorbed = tr.norms.front() - tr.norms.back();
  }
  return out;
}

}  // namespace backflow::measurement
