#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "backflow/errors.hpp"
#include "backflow/kernelspec.hpp"
#include "backflow/verify/oracles.hpp"

using namespace backflow;

TEST_CASE("small spectrum against the characteristic polynomial") {
  QuadratureGrid g;
  g.nodes = {0.4, 1.1, 1.9, 2.6};
  g.weights = {0.7, 0.8, 0.75, 0.7};
  g.u_max = 3.0;
  const auto k = kernelspec::build_kernel(g, 0.3);
  std::vector<std::vector<double>> a(4, std::vector<double>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a[i][j] = k.entries(i, j);
  auto ref = verify::characteristic_eigenvalues(a);
  std::sort(ref.rbegin(), ref.rend());
  const auto s = kernelspec::solve_spectrum(k);
  REQUIRE(s.eigenvalues.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(s.eigenvalues[i] == doctest::Approx(ref[i]).epsilon(1e-10));
  CHECK(s.most_negative == doctest::Approx(ref.back()).epsilon(1e-10));
}

TEST_CASE("spectrum of the sharp kernel") {
  const auto g = kernelspec::build_grid(200, 10.0);
  const auto s = kernelspec::solve_spectrum(kernelspec::build_kernel(g, 0.0));
  CHECK(s.max_eigenvalue == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(s.most_negative < -0.03);
  CHECK(s.most_negative > -0.038452);
  CHECK(std::is_sorted(s.eigenvalues.rbegin(), s.eigenvalues.rend()));
  // the extremal state reproduces its eigenvalue through the quadratic form
  const auto k = kernelspec::build_kernel(g, 0.0);
  CHECK(kernelspec::flux_quadratic_form(s.ground_state, k) == doctest::Approx(s.most_negative).epsilon(1e-10));
  CHECK(states::grid_norm_squared(s.ground_state) == doctest::Approx(1.0).epsilon(1e-12));
  // trapezoid grid lands close
  const auto t = kernelspec::solve_spectrum(
      kernelspec::build_kernel(kernelspec::build_grid(400, 10.0, GridScheme::trapezoid), 0.0), false);
  CHECK(t.most_negative == doctest::Approx(s.most_negative).epsilon(2e-2));
}

TEST_CASE("smearing weakens the bound") {
  const auto g = kernelspec::build_grid(200, 10.0);
  const auto l = kernelspec::lambda_of_a({0.0, 1.0, 3.0}, g);
  REQUIRE(l.size() == 3);
  CHECK(l[0].second < l[1].second);
  CHECK(l[1].second < l[2].second);
  CHECK(l[2].second < 0.0);
  // scaling kernel: spectrum scales exactly as a^-2 only asymptotically, but is
  // negative-definite enough to bracket
  const auto s3 = kernelspec::solve_spectrum(kernelspec::build_scaling_kernel(g, 3.0), false);
  CHECK(s3.max_eigenvalue > 0.0);
}

TEST_CASE("extrapolation in the cutoff") {
  std::vector<std::pair<double, double>> pts;
  for (double U : {10.0, 15.0, 20.0}) pts.push_back({U, -0.04 + 0.03 / U - 0.1 / (U * U)});
  CHECK(kernelspec::extrapolate_in_inverse_cutoff(pts) == doctest::Approx(-0.04).epsilon(1e-12));
  pts.pop_back();
  const double two = kernelspec::extrapolate_in_inverse_cutoff(pts);
  CHECK(two == doctest::Approx(-0.04).epsilon(0.1));
  CHECK(kernelspec::extrapolate_in_inverse_cutoff({{10.0, 1.0}}) == 1.0);
  CHECK_THROWS_AS(kernelspec::extrapolate_in_inverse_cutoff({}), ParameterError);
}

TEST_CASE("bound scan") {
  const auto scan = kernelspec::bound_scan({10.0, 15.0}, {100, 200});
  CHECK(scan.entries.size() == 4);
  CHECK(scan.finest.size() == 2);
  CHECK(scan.extrapolated < scan.finest.back().second);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(kernelspec::build_grid(8, 10.0), ParameterError);
  CHECK_THROWS_AS(kernelspec::build_grid(100, -1.0), ParameterError);
  CHECK_THROWS_AS(kernelspec::build_grid(100, 10.0, GridScheme::panel_gauss_legendre, 12), ParameterError);
  const auto p = kernelspec::build_panel_grid(5.0, 0.25, 12);
  CHECK(p.size() == 240);
  double w = 0.0;
  for (double x : p.weights) w += x;
  CHECK(w == doctest::Approx(5.0).epsilon(1e-13));
  const auto g1 = kernelspec::build_grid(100, 10.0);
  const auto g2 = kernelspec::build_grid(120, 10.0);
  const auto s = kernelspec::solve_spectrum(kernelspec::build_kernel(g1, 0.0));
  CHECK_THROWS_AS(kernelspec::flux_quadratic_form(s.ground_state, kernelspec::build_kernel(g2, 0.0)), ParameterError);
  CHECK(to_string(grid_scheme_from_string("trapezoid")) == "trapezoid");
  CHECK_THROWS_AS(grid_scheme_from_string("simpson"), ParameterError);
}
