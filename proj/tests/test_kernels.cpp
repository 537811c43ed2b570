#include <doctest.h>

#include <cmath>
#include <numbers>

#include "backflow/kernels.hpp"
#include "backflow/kernelspec.hpp"

using namespace backflow;

namespace {
std::vector<double> weighted_amplitude(const QuadratureGrid& g) {
  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = g.weights[i] * std::exp(-0.5 * g.nodes[i]) * std::cos(g.nodes[i]);
  return f;
}
}  // namespace

TEST_CASE("parallel kernels match the serial references") {
  const auto g = kernelspec::build_grid(160, 12.0);
  Eigen::MatrixXd a, b;
  kernels::assemble_flux_kernel(g, 0.7, a);
  kernels::assemble_flux_kernel_serial(g, 0.7, b);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((a - a.transpose()).cwiseAbs().maxCoeff() == 0.0);

  const auto f = weighted_amplitude(g);
  for (double t : {0.3, 1.0, 2.5})
    CHECK(kernels::time_window_form(g.nodes, f, t) ==
          doctest::Approx(kernels::time_window_form_serial(g.nodes, f, t)).epsilon(1e-11));

  const std::vector<double> x{-3.0, -0.5, 0.0, 0.4, 6.0};
  std::vector<std::complex<double>> p1, p2, d1, d2;
  kernels::momentum_to_position(g.nodes, f, x, 0.8, p1, &d1);
  kernels::momentum_to_position_serial(g.nodes, f, x, 0.8, p2, &d2);
  for (std::size_t k = 0; k < x.size(); ++k) {
    CHECK(std::abs(p1[k] - p2[k]) < 1e-12);
    CHECK(std::abs(d1[k] - d2[k]) < 1e-11);
  }

  const std::vector<double> ts{-2.0, -0.3, 0.0, 0.5, 1.7};
  std::vector<double> j1, j2;
  kernels::grid_current(g.nodes, f, ts, j1);
  kernels::grid_current_serial(g.nodes, f, ts, j2);
  for (std::size_t k = 0; k < ts.size(); ++k) CHECK(j1[k] == doctest::Approx(j2[k]).epsilon(1e-10));
}

TEST_CASE("flux kernel entries") {
  const auto g = kernelspec::build_grid(20, 4.0);
  Eigen::MatrixXd m;
  kernels::assemble_flux_kernel_serial(g, 0.0, m);
  const double u = g.nodes[3], v = g.nodes[7];
  const double ref = std::sqrt(g.weights[3] * g.weights[7]) * std::sin(u * u - v * v) / (std::numbers::pi * (u - v));
  CHECK(m(3, 7) == doctest::Approx(ref).epsilon(1e-14));
  CHECK(m(5, 5) == doctest::Approx(g.weights[5] * 2.0 * g.nodes[5] / std::numbers::pi).epsilon(1e-14));
}
