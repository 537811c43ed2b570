#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "backflow/states.hpp"

namespace backflow::currents {

using Complex = std::complex<double>;

struct CurrentTrace {
  std::vector<double> times;
  std::vector<double> values;  // NaN at excluded nodes
  std::vector<bool> excluded;
  std::string state;
  double epsilon = 0.0;
};

double current_plane_waves(double t, const states::PlaneWavePair& s);
// (minimum, maximum) of the oscillating plane-wave current.
std::pair<double, double> plane_wave_extremes(const states::PlaneWavePair& s);

double current_gaussian(double t, const states::GaussianSuperposition& g);

Complex u_factor_guess1(double t, const states::Guess1State& s);
Complex v_factor_guess1(double t, const states::Guess1State& s);
double current_guess1(double t, const states::Guess1State& s);

Complex u_factor_guess2(double t, const states::Guess2State& s);
Complex v_factor_guess2(double t, const states::Guess2State& s);
double current_guess2(double t, const states::Guess2State& s);

// J(t) = (1/pi) Re(U V) with U, V as finite sums over the grid.
double current_grid(double t, const states::GridMomentumState& s);

// Dispatch on the state family. Throws SingularityError at t = +-1 for the
// guess and grid families.
double current(const states::MomentumState& s, double t);
std::vector<double> singular_times(const states::MomentumState& s);
bool is_excluded(const states::MomentumState& s, double t);

// Current on a time grid, parallel over samples. Singular times are recorded
// as excluded nodes.
CurrentTrace trace(const states::MomentumState& s, const std::vector<double>& times);
std::vector<double> linspace(double lo, double hi, int samples);

// J(0) = (1/pi) (int phi du)(int u phi du).
double current_t0_factorized(double int_phi, double int_u_phi);
// J(0) for phi(u) = sin(u^2)/u.
double asymptotic_state_t0_current();

struct BesselCheck {
  double int_u_j0;  // int_0^inf u J0(u^2) du
  double int_j0;    // int_0^inf J0(u^2) du
  double current_t0;
};
BesselCheck bessel_t0_check();

}  // namespace backflow::currents
