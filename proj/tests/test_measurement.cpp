#include <doctest.h>

#include <cmath>
#include <numbers>

#include "backflow/currents.hpp"
#include "backflow/errors.hpp"
#include "backflow/fluxes.hpp"
#include "backflow/measurement.hpp"
#include "backflow/quadrature.hpp"

using namespace backflow;
namespace ms = backflow::measurement;

TEST_CASE("position-space current agrees with the closed form") {
  const auto g2 = states::make_guess2(0.6, 2.8);
  CHECK(ms::position_space_current(g2, 0.5) == doctest::Approx(currents::current_guess2(0.5, g2)).epsilon(1e-3));
  // a larger cutoff narrows the panels on its own
  ms::TransformOptions wide;
  wide.u_max = 200.0;
  wide.taper_width = 100.0;
  CHECK(ms::position_space_current(g2, 0.5, wide) == doctest::Approx(currents::current_guess2(0.5, g2)).epsilon(1e-3));
}

TEST_CASE("free propagation conserves norm and follows Ehrenfest") {
  const auto g = states::make_gaussian(1.0, 1.0, 1.5, 1.0, 0.0);
  auto psi = ms::from_gaussian(g, {-40.0, 40.0, 0.05}, 0.0);
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-8));
  const auto tr = ms::propagate(psi, 0.01, 500, 0.0);
  CHECK(std::fabs(tr.norms.back() - tr.norms.front()) < 1e-10);
  // <x>(t) = p t with p = 1
  CHECK(tr.final_state.mean_x() == doctest::Approx(5.0).epsilon(2e-3));
  // and the propagated packet matches the analytic one
  const auto exact = ms::from_gaussian(g, {-40.0, 40.0, 0.05}, 5.0);
  double err = 0.0;
  for (std::size_t j = 0; j < exact.size(); ++j) err = std::max(err, std::abs(exact.values[j] - tr.final_state.values[j]));
  CHECK(err < 5e-3);
}

TEST_CASE("transformed guess state far from the origin") {
  // psi(x, 0) against direct quadrature of the transform at |x| well past 2 pi / panel width
  const auto g2 = states::make_guess2(0.6, 2.8);
  const auto w = ms::from_momentum_state(g2, {-200.0, 100.0, 0.5}, 0.0);
  ms::TransformOptions o;
  for (double x : {-180.0, 90.0}) {
    const std::size_t j = static_cast<std::size_t>(std::lround((x - w.x0) / w.dx));
    quad::Options qo;
    qo.abs_tol = 1e-10;
    qo.max_panels = 200000;
    const auto ref = quad::integrate_complex(
        [&](double u) {
          const double t0 = o.u_max - o.taper_width;
          double taper = 1.0;
          if (u > t0) taper = std::pow(std::cos(0.5 * std::numbers::pi * (u - t0) / o.taper_width), 2);
          return states::eval_phi(g2, u) * taper * std::exp(std::complex<double>(0.0, u * x)) /
                 std::sqrt(2.0 * std::numbers::pi);
        },
        0.0, o.u_max, qo);
    CHECK(std::abs(w.values[j] - ref) < 1e-6);
  }
}

TEST_CASE("absorption drains the norm monotonically") {
  const auto g = states::make_gaussian(1.5, 1.5, 2.0, 1.0, 0.0);
  const auto psi = ms::from_gaussian(g, {-60.0, 80.0, 0.05}, -6.0);
  const auto tr = ms::propagate(psi, 0.01, 1200, 0.5);
  for (std::size_t k = 1; k < tr.norms.size(); ++k) CHECK(tr.norms[k] <= tr.norms[k - 1] + 1e-14);
  const auto sa = ms::survival_and_arrival(tr);
  CHECK(sa.absorbed > 0.9);
  CHECK(sa.arrival.min_value() > -1e-10);
  CHECK_THROWS_AS(ms::propagate(psi, 0.2, 10, 0.5), ParameterError);
  CHECK_THROWS_AS(ms::propagate(psi, 0.01, 10, -0.1), ParameterError);
}

TEST_CASE("smearing and deconvolution") {
  // constant current: Pi reaches J once the memory of the cut lower limit is lost
  const auto c = ms::smear_current([](double) { return 0.25; }, 0.5, {0.0, 1.0, 2.0});
  for (double v : c.values) CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
  // J = cos t: Pi = (2V0)/(4V0^2 + 1) (2V0 cos t + sin t)
  const double V0 = 0.3, k = 2.0 * V0;
  const auto ts = currents::linspace(0.0, 3.0, 301);
  const auto pi = ms::smear_current([](double t) { return std::cos(t); }, V0, ts);
  for (std::size_t i = 0; i < ts.size(); i += 50)
    CHECK(pi.values[i] == doctest::Approx(k / (k * k + 1.0) * (k * std::cos(ts[i]) + std::sin(ts[i]))).epsilon(1e-9));
  const auto back = ms::deconvolve(pi);
  for (std::size_t i = 0; i < ts.size(); ++i) CHECK(back.values[i] == doctest::Approx(std::cos(ts[i])).epsilon(1e-6));
  ms::ArrivalDistribution tiny = pi;
  tiny.times.resize(4);
  tiny.values.resize(4);
  CHECK_THROWS_AS(ms::deconvolve(tiny), AccuracyError);
  CHECK_THROWS_AS(ms::smear_current([](double) { return 0.0; }, 0.0, ts), ParameterError);
}

TEST_CASE("probability to the left") {
  const auto g = states::preset_gaussian("paper-gauss-B");
  quad::Options o;
  o.abs_tol = 1e-13;
  for (double t : {-5.0, 0.0, 3.0}) {
    const double ref = quad::integrate_real([&](double x) { return std::norm(states::position_wavefunction(g, x, t)); },
                                            -300.0, 0.0, o);
    CHECK(ms::probability_left(g, t) == doctest::Approx(ref).epsilon(1e-10));
  }
  // dP/dt = -J for a guess state inside |t| < 1
  const auto g2 = states::make_guess2(0.6, 2.8);
  const double h = 1e-3;
  const double d = (ms::probability_left(g2, 0.3 + h) - ms::probability_left(g2, 0.3 - h)) / (2.0 * h);
  CHECK(-d == doctest::Approx(currents::current_guess2(0.3, g2)).epsilon(2e-3));
  CHECK_THROWS_AS(ms::probability_left(states::make_plane_waves(1.0, 2.0, 1.0, 1.0), 0.0), ParameterError);
  ms::LeftProbabilityOptions tight;
  tight.u_max = 2.0;
  tight.max_missing_norm = 1e-6;
  CHECK_THROWS_AS(ms::probability_left(g2, 0.0, tight), AccuracyError);
}

TEST_CASE("sequential projection") {
  const auto g = states::preset_gaussian("paper-gauss-B");
  ms::SequentialOptions so;
  so.grid = {-150.0, 150.0, 0.05};
  const double p = ms::sequential_probability(g, 2.6131256, 4.0934321, so);
  const double F = fluxes::integrate_current(fluxes::current_function(g), 2.6131256, 4.0934321);
  CHECK(p >= 0.0);
  CHECK(p <= 1.0);
  CHECK(p >= F);
  // nothing has moved right yet; only the half-weighted node at x = 0 remains
  const double psi0 = std::norm(states::position_wavefunction(g, 0.0, 1.0));
  CHECK(ms::sequential_probability(g, 1.0, 1.0, so) <= 0.25 * so.grid.dx * psi0 * 1.0001);
  CHECK_THROWS_AS(ms::sequential_probability(g, 2.0, 1.0, so), ParameterError);
}

TEST_CASE("derivative kinks of a kinked current") {
  auto J = [](double t) { return std::fabs(t) < 1.0 ? -0.1 : 0.2; };
  const auto pi = ms::smear_current(J, 0.5, currents::linspace(-2.0, 2.0, 801), {-1.0, 1.0});
  const auto k = ms::derivative_kinks(pi);
  CHECK(k.t_minus == doctest::Approx(-1.0).epsilon(1e-2));
  CHECK(k.t_plus == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(k.jump_minus > 10.0 * k.background);
}
