#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "backflow/grid.hpp"

namespace backflow::states {

using Complex = std::complex<double>;

inline constexpr double kDefaultEpsilon = 1e-7;

struct PlaneWavePair {
  double p1, p2, A1, A2;
};

// Two gaussian packets of common spatial width sigma, centred at the origin
// at t = 0 (hbar = m = 1). `norm` is the global factor making the state unit
// normalized; it is filled in by make_gaussian.
struct GaussianSuperposition {
  double p1, p2, sigma, A1, A2;
  double norm = 1.0;
};

struct Guess1State {
  double a;
  double epsilon = kDefaultEpsilon;
  double N = 0.0;
};

struct Guess2State {
  double a, b;
  double epsilon = kDefaultEpsilon;
  double N = 0.0;
};

struct GridMomentumState {
  QuadratureGrid grid;
  std::vector<double> values;
  std::string label = "grid";
};

using MomentumState = std::variant<PlaneWavePair, GaussianSuperposition, Guess1State, Guess2State, GridMomentumState>;

std::string family_name(const MomentumState& s);

PlaneWavePair make_plane_waves(double p1, double p2, double A1, double A2);
GaussianSuperposition make_gaussian(double p1, double p2, double sigma, double A1, double A2);
Guess1State make_guess1(double a, double epsilon = kDefaultEpsilon);
Guess2State make_guess2(double a, double b, double epsilon = kDefaultEpsilon);
// Normalizes the samples under the grid weights unless `normalize` is false.
GridMomentumState make_grid_state(QuadratureGrid grid, std::vector<double> values, bool normalize = true,
                                  std::string label = "grid");

GaussianSuperposition preset_gaussian(const std::string& name);  // paper-gauss-A, paper-gauss-B

double norm_guess1(double a);
double norm_guess2(double a, double b);
// N^-2 with the Fresnel terms taken in the other Fresnel convention (at b/pi,
// cos/sin(b^2/2)). It does not normalize the state; diagnostics only.
double norm_guess2_mismatched_inverse_square(double a, double b);

double eval_phi(const Guess1State& s, double u);
double eval_phi(const Guess2State& s, double u);
// Local cubic interpolation between grid nodes; zero beyond u_max.
double eval_phi(const GridMomentumState& s, double u);

double grid_norm_squared(const GridMomentumState& s);

// Order-of-magnitude estimator int_{-inf}^0 exp(-2 sigma^2 (p - p_k)^2) dp for
// packet k (1 or 2).
double negative_momentum_probability(const GaussianSuperposition& g, int component);
// Probability of p < 0 in the normalized momentum density of packet k alone.
double negative_momentum_mass(const GaussianSuperposition& g, int component);

Complex position_wavefunction(const GaussianSuperposition& g, double x, double t);
Complex position_wavefunction_dx(const GaussianSuperposition& g, double x, double t);

}  // namespace backflow::states
