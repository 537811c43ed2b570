#include <doctest.h>

#include <cmath>
#include <numbers>

#include "backflow/currents.hpp"
#include "backflow/errors.hpp"
#include "backflow/kernelspec.hpp"
#include "backflow/verify/oracles.hpp"

using namespace backflow;

TEST_CASE("plane waves") {
  const auto s = states::make_plane_waves(1.0, 3.0, 1.0, 0.8);
  // J = A1^2 p1 + A2^2 p2 + A1 A2 (p1 + p2) cos((p2 - p1)(...)) with a negative dip for these amplitudes
  const auto [lo, hi] = currents::plane_wave_extremes(s);
  const double A1 = 1.0, A2 = 0.8, p1 = 1.0, p2 = 3.0;
  CHECK(hi == doctest::Approx(A1 * A1 * p1 + A2 * A2 * p2 + A1 * A2 * (p1 + p2)));
  CHECK(lo == doctest::Approx(A1 * A1 * p1 + A2 * A2 * p2 - A1 * A2 * (p1 + p2)));
  double mn = 1e9, mx = -1e9;
  for (int k = 0; k <= 4000; ++k) {
    const double j = currents::current_plane_waves(k * 1e-3, s);
    mn = std::min(mn, j);
    mx = std::max(mx, j);
  }
  CHECK(mn == doctest::Approx(lo).epsilon(1e-5));
  CHECK(mx == doctest::Approx(hi).epsilon(1e-5));
}

TEST_CASE("gaussian current is the derivative of the left probability") {
  const auto g = states::preset_gaussian("paper-gauss-B");
  const double h = 1e-4;
  for (double t : {-3.0, 0.0, 3.2, 10.0}) {
    // P(t) = int_{-inf}^0 |psi|^2 dx, dP/dt = -J(0, t)
    auto P = [&](double tt) {
      double s = 0.0;
      const int n = 40000;
      const double a = -200.0, dx = -a / n;
      for (int j = 0; j <= n; ++j) s += (j == 0 || j == n ? 0.5 : 1.0) * std::norm(states::position_wavefunction(g, a + j * dx, tt));
      return s * dx;
    };
    CHECK(-(P(t + h) - P(t - h)) / (2.0 * h) == doctest::Approx(currents::current_gaussian(t, g)).epsilon(1e-5));
  }
}

TEST_CASE("guess currents against the oracles") {
  const auto g1 = states::make_guess1(0.4);
  const auto g2 = states::make_guess2(0.6, 2.8);
  const verify::AmplitudeCoefficients c1{g1.N, 0.4 * g1.N, 0.0, 1.0};
  const verify::AmplitudeCoefficients c2{g2.N, 0.0, 0.6 * g2.N, 2.8};
  for (double t : {-2.3, -0.5, 0.5, 1.7}) {
    CAPTURE(t);
    CHECK(std::abs(currents::u_factor_guess1(t, g1) - verify::u_integral_oracle(c1, t)) < 1e-5);
    CHECK(std::abs(currents::v_factor_guess1(t, g1) - verify::v_integral_oracle(c1, t)) < 1e-5);
    CHECK(std::abs(currents::u_factor_guess2(t, g2) - verify::u_integral_oracle(c2, t)) < 1e-5);
    CHECK(std::abs(currents::v_factor_guess2(t, g2) - verify::v_integral_oracle(c2, t)) < 1e-5);
    CHECK(currents::current_guess2(t, g2) == doctest::Approx(verify::current_oracle(c2, t)).epsilon(1e-4));
  }
  CHECK(currents::current_guess1(0.0, g1) == doctest::Approx(-0.0166323).epsilon(1e-5));
  CHECK(currents::current_guess1(0.8, g1) == doctest::Approx(currents::current_guess1(-0.8, g1)).epsilon(1e-10));
}

TEST_CASE("singular times") {
  const auto g2 = states::make_guess2(0.6, 2.8);
  CHECK_THROWS_AS(currents::current(g2, 1.0), SingularityError);
  CHECK_THROWS_AS(currents::current(g2, -1.0), SingularityError);
  CHECK_NOTHROW(currents::current(g2, 1.001));
  const auto tr = currents::trace(g2, currents::linspace(-2.0, 2.0, 9));
  CHECK(tr.excluded[2]);
  CHECK(tr.excluded[6]);
  CHECK(std::isnan(tr.values[2]));
  CHECK_FALSE(tr.excluded[4]);
  CHECK(currents::singular_times(states::preset_gaussian("paper-gauss-A")).empty());
}

TEST_CASE("grid current matches the closed form") {
  // sampled guess-2 amplitude on a fine panel grid; the truncated 1/u tail
  // makes the grid current converge slowly, so only inside |t| < 1
  const auto g2 = states::make_guess2(0.6, 2.8);
  const auto grid = kernelspec::build_panel_grid(60.0, 0.25, 12);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = states::eval_phi(g2, grid.nodes[i]);
  const auto s = states::make_grid_state(grid, v, false);
  CHECK(currents::current_grid(0.0, s) == doctest::Approx(currents::current_guess2(0.0, g2)).epsilon(2e-2));
}

TEST_CASE("t = 0 identities") {
  CHECK(currents::asymptotic_state_t0_current() == doctest::Approx(std::sqrt(std::numbers::pi / 2.0) / 8.0).epsilon(1e-12));
  const auto b = currents::bessel_t0_check();
  CHECK(b.int_j0 == doctest::Approx(1.04605).epsilon(1e-5));
  CHECK(b.current_t0 == doctest::Approx(b.int_j0 * 0.5 / std::numbers::pi));
  const double j0 = verify::alternating_tail_integral([](double s) { return std::sin(s) / s; }, 1.0, std::numbers::pi);
  // int_1^inf sin(s)/s ds = pi/2 - Si(1)
  CHECK(j0 == doctest::Approx(std::numbers::pi / 2.0 - 0.946083070367183).epsilon(1e-9));
}
