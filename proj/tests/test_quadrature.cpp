#include <doctest.h>

#include <cmath>
#include <numbers>

#include "backflow/errors.hpp"
#include "backflow/quadrature.hpp"

using namespace backflow;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const auto r = quad::gauss_legendre(10, 0.0, 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 19);
  CHECK(s == doctest::Approx(std::pow(2.0, 20) / 20.0).epsilon(1e-13));
  for (std::size_t i = 1; i < r.nodes.size(); ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
}

TEST_CASE("adaptive integration") {
  const double v = quad::integrate_real([](double x) { return std::exp(-x * x); }, -8.0, 8.0);
  CHECK(v == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
  // endpoint singularity
  quad::Options o;
  o.abs_tol = 1e-10;
  o.rel_tol = 0.0;
  const double s = quad::integrate_real([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, o);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-8));
  const auto c = quad::integrate_complex([](double x) { return std::exp(std::complex<double>(0.0, x)); }, 0.0,
                                         std::numbers::pi);
  CHECK(std::abs(c - std::complex<double>(0.0, 2.0)) < 1e-12);
}

TEST_CASE("breakpoints and failure") {
  auto kink = [](double x) { return std::fabs(x - 0.3); };
  const double v = quad::integrate_real(kink, 0.0, 1.0, {}, {0.3});
  CHECK(v == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-13));
  quad::Options o;
  o.abs_tol = 1e-14;
  o.rel_tol = 0.0;
  o.max_panels = 5;
  CHECK_THROWS_AS(quad::integrate_real([](double x) { return std::sin(1.0 / x); }, 1e-4, 1.0, o), AccuracyError);
  o.throw_on_failure = false;
  const auto r = quad::integrate<double>([](double x) { return std::sin(1.0 / x); }, 1e-4, 1.0, o);
  CHECK_FALSE(r.converged);
}
