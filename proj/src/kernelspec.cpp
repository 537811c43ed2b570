#include "backflow/kernelspec.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "backflow/errors.hpp"
#include "backflow/kernels.hpp"
#include "backflow/quadrature.hpp"

namespace backflow::kernelspec {

QuadratureGrid build_grid(int n, double u_max, GridScheme scheme, int panel_order) {
  if (n < 16) throw ParameterError("build_grid: n must be >= 16");
  if (!(u_max > 0.0) || !std::isfinite(u_max)) throw ParameterError("build_grid: u_max must be positive");
  QuadratureGrid g;
  g.u_max = u_max;
  g.scheme = scheme;
  switch (scheme) {
    case GridScheme::gauss_legendre: {
      auto r = quad::gauss_legendre(n, 0.0, u_max);
      g.nodes = std::move(r.nodes);
      g.weights = std::move(r.weights);
      break;
    }
    case GridScheme::trapezoid: {
      // open composite rule: nodes at panel midpoints
      const double h = u_max / n;
      for (int i = 0; i < n; ++i) {
        g.nodes.push_back((i + 0.5) * h);
        g.weights.push_back(h);
      }
      break;
    }
    case GridScheme::panel_gauss_legendre: {
      if (panel_order < 2 || n % panel_order != 0)
        throw ParameterError("build_grid: n must be a multiple of the panel order");
      return build_panel_grid(u_max, u_max / (n / panel_order), panel_order);
    }
  }
  return g;
}

QuadratureGrid build_panel_grid(double u_max, double panel_width, int panel_order) {
  if (!(u_max > 0.0) || !(panel_width > 0.0) || panel_order < 2)
    throw ParameterError("build_panel_grid: invalid parameters");
  const int panels = std::max(1, static_cast<int>(std::lround(u_max / panel_width)));
  const double h = u_max / panels;
  const auto ref = quad::gauss_legendre(panel_order, 0.0, 1.0);
  QuadratureGrid g;
  g.u_max = u_max;
  g.scheme = GridScheme::panel_gauss_legendre;
  for (int p = 0; p < panels; ++p) {
    for (int k = 0; k < panel_order; ++k) {
      g.nodes.push_back((p + ref.nodes[k]) * h);
      g.weights.push_back(ref.weights[k] * h);
    }
  }
  if (g.nodes.size() < 16) throw ParameterError("build_panel_grid: fewer than 16 nodes");
  return g;
}

KernelMatrix build_kernel(const QuadratureGrid& grid, double a) {
  if (!(a >= 0.0)) throw ParameterError("build_kernel: smearing a must be >= 0");
  KernelMatrix k{grid, a, {}};
  kernels::assemble_flux_kernel(grid, a, k.entries);
  return k;
}

KernelMatrix build_scaling_kernel(const QuadratureGrid& grid, double a) {
  if (!(a >= 0.0)) throw ParameterError("build_scaling_kernel: a must be >= 0");
  const long n = static_cast<long>(grid.size());
  KernelMatrix k{grid, a, Eigen::MatrixXd(n, n)};
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      const double d = grid.nodes[i] - grid.nodes[j];
      k.entries(i, j) = std::sqrt(grid.weights[i] * grid.weights[j]) * (grid.nodes[i] + grid.nodes[j]) /
                        std::numbers::pi * std::exp(-a * a * d * d);
    }
  }
  return k;
}

SpectrumResult solve_spectrum(const KernelMatrix& kernel, bool with_ground_state) {
  const auto& m = kernel.entries;
  if (!m.allFinite()) throw NumericError("solve_spectrum: kernel has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, with_ground_state ? Eigen::ComputeEigenvectors
                                                                         : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("solve_spectrum: eigensolver failed");
  SpectrumResult r;
  r.a = kernel.a;
  const auto& ev = es.eigenvalues();  // ascending
  const long n = ev.size();
  r.eigenvalues.resize(n);
  for (long i = 0; i < n; ++i) r.eigenvalues[i] = ev[n - 1 - i];
  r.most_negative = ev[0];
  r.max_eigenvalue = ev[n - 1];
  for (long i = 1; i < n && ev[i] < 0.0; ++i) r.sub_extremal_negatives.push_back(ev[i]);
  if (with_ground_state) {
    const auto& g = kernel.grid;
    Eigen::VectorXd y = es.eigenvectors().col(0);
    std::vector<double> phi(n);
    for (long i = 0; i < n; ++i) phi[i] = y[i] / std::sqrt(g.weights[i]);
    if (phi[0] < 0.0)
      for (double& v : phi) v = -v;
    r.ground_state = states::make_grid_state(g, std::move(phi), true, "extremal");
  }
  return r;
}

double flux_quadratic_form(const states::GridMomentumState& phi, const KernelMatrix& kernel) {
  if (!phi.grid.same_as(kernel.grid)) throw ParameterError("flux_quadratic_form: state and kernel grids differ");
  const long n = static_cast<long>(phi.values.size());
  Eigen::VectorXd y(n);
  for (long i = 0; i < n; ++i) y[i] = std::sqrt(phi.grid.weights[i]) * phi.values[i];
  return y.dot(kernel.entries * y);
}

std::vector<std::pair<double, double>> lambda_of_a(const std::vector<double>& a_values, const QuadratureGrid& grid) {
  std::vector<std::pair<double, double>> out;
  for (double a : a_values) {
    if (!(a >= 0.0)) throw ParameterError("lambda_of_a: a must be >= 0");
    const auto s = solve_spectrum(build_kernel(grid, a), false);
    out.emplace_back(a, s.most_negative);
  }
  return out;
}

double extrapolate_in_inverse_cutoff(const std::vector<std::pair<double, double>>& samples) {
  const std::size_t m = samples.size();
  if (m == 0) throw ParameterError("extrapolation needs at least one sample");
  if (m == 1) return samples[0].second;
  const int terms = m == 2 ? 2 : 3;
  Eigen::MatrixXd A(m, terms);
  Eigen::VectorXd b(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = 1.0 / samples[i].first;
    A(i, 0) = 1.0;
    A(i, 1) = x;
    if (terms == 3) A(i, 2) = x * x;
    b[i] = samples[i].second;
  }
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  return c[0];
}

BoundScan bound_scan(const std::vector<double>& u_max_values, const std::vector<int>& n_values, double a) {
  if (u_max_values.empty() || n_values.empty()) throw ParameterError("bound_scan: empty grid lists");
  BoundScan scan;
  std::map<std::pair<int, double>, double> table;
  for (double U : u_max_values) {
    for (int n : n_values) {
      const auto s = solve_spectrum(build_kernel(build_grid(n, U), a), false);
      scan.entries.push_back({U, n, s.most_negative, s.max_eigenvalue});
      table[{n, U}] = s.most_negative;
    }
  }
  const int n_max = *std::max_element(n_values.begin(), n_values.end());
  std::vector<double> us = u_max_values;
  std::sort(us.begin(), us.end());
  for (double U : us) scan.finest.emplace_back(U, table[{n_max, U}]);
  scan.extrapolated = extrapolate_in_inverse_cutoff(scan.finest);
  bool any = false;
  for (const auto& [key, val] : table) {
    auto it = table.find({2 * key.first, key.second + 5.0});
    if (it == table.end()) continue;
    any = true;
    scan.max_refinement_change = std::max(scan.max_refinement_change, std::fabs(it->second - val));
  }
  scan.converged = any && scan.max_refinement_change < 1e-3;
  return scan;
}

}  // namespace backflow::kernelspec
