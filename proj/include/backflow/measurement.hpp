#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "backflow/currents.hpp"
#include "backflow/grid.hpp"
#include "backflow/states.hpp"

namespace backflow::measurement {

using Complex = std::complex<double>;
using CurrentFunction = std::function<double(double)>;

enum class ArrivalModel { exact, weak_limit };
std::string to_string(ArrivalModel m);

struct ArrivalDistribution {
  std::vector<double> times;
  std::vector<double> values;
  double V0 = 0.0;
  ArrivalModel model = ArrivalModel::weak_limit;
  double min_value() const;
};

// Uniform position grid x_j = x0 + j dx. Gaussian states use m = 1, the
// dimensionless momentum-space states use m = 1/2 (H = u^2).
struct GridWavefunction {
  double x0 = 0.0;
  double dx = 0.0;
  std::vector<Complex> values;
  double time = 0.0;
  double mass = 1.0;
  double k_max = 0.0;  // largest momentum carried by the state

  std::size_t size() const { return values.size(); }
  double x(std::size_t j) const { return x0 + dx * static_cast<double>(j); }
  std::vector<double> x_nodes() const;
  double norm() const;
  double probability_right() const;  // integral over x > 0, half weight at x = 0
  double boundary_density() const;   // max |psi|^2 at the two edge nodes
  double mean_x() const;
};

struct PositionGrid {
  double x_min = -60.0;
  double x_max = 60.0;
  double dx = 0.05;
};

GridWavefunction from_gaussian(const states::GaussianSuperposition& g, const PositionGrid& pg, double t);

struct TransformOptions {
  double u_max = 40.0;
  double taper_width = 10.0;  // cos^2 roll-off on [u_max - taper_width, u_max]
  double panel_width = 0.25;
  int panel_order = 12;
};
// psi(x, t) = (1/sqrt(2 pi)) int phi(u) e^{iux - iu^2 t} du for the guess and
// grid families.
GridWavefunction from_momentum_state(const states::MomentumState& s, const PositionGrid& pg, double t,
                                     const TransformOptions& opts = {});

// J(t) at x = 0 computed in position space from the transformed state.
double position_space_current(const states::MomentumState& s, double t, const TransformOptions& opts = {});

// Pi(tau) = 2 V0 int_{-inf}^tau exp(-2 V0 (tau - t)) J(t) dt. The lower limit
// is cut where the kernel drops below 1e-16. `breakpoints` marks points where
// J is singular or not smooth.
ArrivalDistribution smear_current(const CurrentFunction& J, double V0, const std::vector<double>& times,
                                  const std::vector<double>& breakpoints = {}, double tol = 1e-12);

struct DeconvolveOptions {
  double max_error = 1e-3;
};
// J = Pi + Pi'/(2 V0) with five-point differences on each uniformly spaced run
// of samples. Runs shorter than five samples, or an estimated differencing
// error above max_error, raise AccuracyError.
currents::CurrentTrace deconvolve(const ArrivalDistribution& pi, const DeconvolveOptions& opts = {});

struct PropagationOptions {
  int snapshot_every = 0;  // 0: keep only the final state
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> norms;
  std::vector<double> boundary_density;
  std::vector<GridWavefunction> snapshots;
  GridWavefunction final_state;
  double V0 = 0.0;
};

// Crank-Nicolson steps of H = -(1/2m) d^2/dx^2 - i V0 theta(x) with
// Dirichlet edges. The Cayley form makes each step a contraction for V0 >= 0
// and unitary for V0 = 0.
Trajectory propagate(const GridWavefunction& psi, double dt, int n_steps, double V0,
                     const PropagationOptions& opts = {});

struct SurvivalArrival {
  std::vector<double> times;
  std::vector<double> survival;
  ArrivalDistribution arrival;
  double absorbed = 0.0;  // N(first) - N(last)
};
SurvivalArrival survival_and_arrival(const Trajectory& tr);

struct SequentialOptions {
  PositionGrid grid{-200.0, 200.0, 0.05};
  double dt = 0.01;  // upper bound; reduced to resolve k_max
  double leakage_tol = 1e-8;
  TransformOptions transform{};
};
// <psi| Pbar(t1) P(t2) Pbar(t1) |psi>: start from psi(t1), keep x < 0, evolve
// freely to t2, integrate over x > 0.
double sequential_probability(const states::MomentumState& s, double t1, double t2,
                              const SequentialOptions& opts = {});

struct LeftProbabilityOptions {
  double u_max = 20.0;
  double panel_width = 0.25;
  int panel_order = 12;
  double max_missing_norm = 0.05;
};
// Probability of finding the particle in x < 0 at time t. Gaussians are
// analytic; the momentum-space families use the windowed kernel form with a
// correction for the norm beyond u_max, whose 1/u tails focus onto x = 0 at
// t = +-1 (all of it sits on the left for t < -1, half of it for |t| < 1).
double probability_left(const states::MomentumState& s, double t, const LeftProbabilityOptions& opts = {});
std::vector<double> probability_left_curve(const states::MomentumState& s, const std::vector<double>& times,
                                           const LeftProbabilityOptions& opts = {});

struct KinkReport {
  double t_minus = 0.0, t_plus = 0.0;        // locations of the largest derivative jumps near -1 and +1
  double jump_minus = 0.0, jump_plus = 0.0;  // |Pi'(t+) - Pi'(t-)| there
  double background = 0.0;                  // median jump elsewhere
};
KinkReport derivative_kinks(const ArrivalDistribution& pi, double window = 0.1);

}  // namespace backflow::measurement
