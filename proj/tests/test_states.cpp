#include <doctest.h>

#include <cmath>
#include <numbers>

#include "backflow/errors.hpp"
#include "backflow/kernelspec.hpp"
#include "backflow/quadrature.hpp"
#include "backflow/specfun.hpp"
#include "backflow/state_config.hpp"
#include "backflow/states.hpp"
#include "backflow/verify/oracles.hpp"

using namespace backflow;

TEST_CASE("guess norms against quadrature") {
  {
    const double a = 0.4;
    const double N = states::norm_guess1(a);
    verify::AmplitudeCoefficients c{N, N * a, 0.0, 1.0};
    CHECK(verify::norm_squared_oracle(c) == doctest::Approx(1.0).epsilon(1e-6));
  }
  {
    const double a = 0.6, b = 2.8;
    const double N = states::norm_guess2(a, b);
    CHECK(N == doctest::Approx(1.7993590).epsilon(1e-6));
    verify::AmplitudeCoefficients c{N, 0.0, N * a, b};
    CHECK(verify::norm_squared_oracle(c) == doctest::Approx(1.0).epsilon(1e-6));
    // the other expression does not normalize the state
    const double Np = 1.0 / std::sqrt(states::norm_guess2_mismatched_inverse_square(a, b));
    verify::AmplitudeCoefficients cp{Np, 0.0, Np * a, b};
    CHECK(std::fabs(verify::norm_squared_oracle(cp) - 1.0) > 1e-3);
  }
}

TEST_CASE("guess amplitudes") {
  const auto g1 = states::make_guess1(0.4);
  CHECK(states::eval_phi(g1, 0.0) == doctest::Approx(g1.N * 0.5 * 1.4));
  const auto g2 = states::make_guess2(0.6, 2.8);
  CHECK(states::eval_phi(g2, 1.3) ==
        doctest::Approx(g2.N * (0.6 * std::exp(-2.8 * 1.3) + 0.5 - specfun::fresnel_c(1.3))));
  CHECK_THROWS_AS(states::make_guess2(0.6, -1.0), ParameterError);
  CHECK_THROWS_AS(states::make_guess1(0.4, 0.0), ParameterError);
  CHECK_THROWS_AS(states::make_guess1(0.4, 1e-2), ParameterError);
}

TEST_CASE("gaussian superposition") {
  const auto g = states::preset_gaussian("paper-gauss-B");
  // unit norm in position space at any time
  for (double t : {0.0, 3.0}) {
    quad::Options o;
    o.abs_tol = 1e-12;
    const double n = quad::integrate_real(
        [&](double x) { return std::norm(states::position_wavefunction(g, x, t)); }, -150.0, 150.0, o, {0.0});
    CHECK(n == doctest::Approx(1.0).epsilon(1e-9));
  }
  // derivative against a central difference
  const double h = 1e-5;
  const auto d = (states::position_wavefunction(g, 0.7 + h, 2.0) - states::position_wavefunction(g, 0.7 - h, 2.0)) /
                 (2.0 * h);
  CHECK(std::abs(d - states::position_wavefunction_dx(g, 0.7, 2.0)) < 1e-8);
  // contamination estimate vs the exact mass of p < 0
  const double est = states::negative_momentum_probability(g, 1);
  CHECK(est < 1e-9);
  CHECK(est > 1e-11);
  CHECK(states::negative_momentum_mass(g, 1) < 1e-9);
  CHECK_THROWS_AS(states::preset_gaussian("nope"), ParameterError);
  CHECK_THROWS_AS(states::make_gaussian(0.3, 1.4, -1.0, 1.0, 1.0), ParameterError);
}

TEST_CASE("grid states") {
  const auto grid = kernelspec::build_grid(200, 10.0);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(-grid.nodes[i]);
  const auto s = states::make_grid_state(grid, v);
  CHECK(states::grid_norm_squared(s) == doctest::Approx(1.0).epsilon(1e-12));
  // interpolation reproduces the smooth amplitude between nodes
  CHECK(states::eval_phi(s, 1.2345) == doctest::Approx(std::sqrt(2.0) * std::exp(-1.2345)).epsilon(1e-6));
  CHECK(states::eval_phi(s, 11.0) == 0.0);
  CHECK_THROWS_AS(states::make_grid_state(grid, std::vector<double>(3, 1.0)), ParameterError);
}

TEST_CASE("state json round trip") {
  const auto s = states::state_from_json({{"family", "guess2"}, {"a", 0.6}, {"b", 2.8}});
  const auto j = states::state_to_json(s);
  const auto s2 = states::state_from_json(j);
  CHECK(std::get<states::Guess2State>(s2).N == doctest::Approx(std::get<states::Guess2State>(s).N));
  CHECK_THROWS_AS(states::state_from_json({{"family", "guess2"}, {"a", 0.6}, {"b", 2.8}, {"c", 1}}), ParameterError);
  CHECK_THROWS_AS(states::state_from_json({{"family", "other"}}), ParameterError);
  const auto p = states::state_from_json({{"family", "gauss2"}, {"preset", "paper-gauss-A"}});
  CHECK(std::get<states::GaussianSuperposition>(p).p2 == 2.0);
  const auto e = states::state_from_json({{"family", "grid"}, {"extremal", {{"n", 100}, {"u_max", 10.0}}}});
  CHECK(std::get<states::GridMomentumState>(e).values.size() == 100);
}

TEST_CASE("guess-1 large-u behaviour") {
  const auto g = states::make_guess1(0.4);
  for (double u : {50.0, 100.0, 173.0}) {
    const double asym = g.N * (-std::sin(u * u) + 0.4 * std::cos(u * u)) / std::sqrt(2.0 * std::numbers::pi);
    CHECK(std::fabs(u * states::eval_phi(g, u) - asym) < 5e-3 * g.N);
  }
}
