#include <doctest.h>

#include <cmath>
#include <numbers>

#include "backflow/currents.hpp"
#include "backflow/fluxes.hpp"
#include "backflow/kernelspec.hpp"

using namespace backflow;

TEST_CASE("negative intervals of a synthetic current") {
  auto J = [](double t) { return std::sin(t); };
  const auto iv = fluxes::find_negative_intervals(J, 0.0, 10.0);
  REQUIRE(iv.size() == 2);
  CHECK(iv[0].t1 == doctest::Approx(std::numbers::pi).epsilon(1e-8));
  CHECK(iv[0].t2 == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-8));
  CHECK(iv[1].t2 == 10.0);  // clipped
  fluxes::Interval w;
  CHECK(fluxes::find_negative_interval(J, 0.0, 10.0, w));
  CHECK(w.width() == doctest::Approx(std::numbers::pi).epsilon(1e-8));
  CHECK_FALSE(fluxes::find_negative_interval([](double) { return 1.0; }, 0.0, 1.0, w));
  CHECK(fluxes::integrate_current(J, w.t1, w.t2) == doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("flux of the guess states") {
  const auto g2 = states::make_guess2(0.6, 2.8);
  const auto rep = fluxes::backflow_report(g2, -3.0, 3.0);
  REQUIRE_FALSE(rep.empty());
  CHECK(rep[0].F == doctest::Approx(-0.0275632).epsilon(1e-5));
  CHECK(rep[0].t1 == doctest::Approx(-0.9340405).epsilon(1e-6));
  CHECK(rep[0].fraction_of_cbm == doctest::Approx(0.0275632 / 0.038452).epsilon(1e-5));
  const auto g1 = states::make_guess1(0.4);
  const auto r1 = fluxes::backflow_report(g1, -3.0, 3.0);
  REQUIRE_FALSE(r1.empty());
  CHECK(r1[0].F == doctest::Approx(-0.019236).epsilon(1e-4));
  CHECK(fluxes::fraction_of_cbm(0.01) == 0.0);
}

TEST_CASE("gaussian backflow picks the positive-time window") {
  const auto rep = fluxes::backflow_report(states::preset_gaussian("paper-gauss-B"), -40.0, 40.0, 1e-10, 16000);
  REQUIRE(rep.size() >= 2);
  CHECK(rep[0].t1 == doctest::Approx(2.6131256).epsilon(1e-6));
  CHECK(rep[0].F == doctest::Approx(-0.0061445).epsilon(1e-4));
  CHECK(rep[1].F == doctest::Approx(rep[0].F).epsilon(1e-8));  // mirror at negative t
}

TEST_CASE("kernel form of the extremal state") {
  // flux of a grid state over [-1, 1] from its own current equals its eigenvalue
  const auto g = kernelspec::build_grid(120, 8.0);
  const auto k = kernelspec::build_kernel(g, 0.0);
  const auto s = kernelspec::solve_spectrum(k);
  const double F = fluxes::integrate_current(fluxes::current_function(s.ground_state), -1.0, 1.0, 1e-9, {-1.0, 1.0});
  CHECK(F == doctest::Approx(s.most_negative).epsilon(1e-5));
}
