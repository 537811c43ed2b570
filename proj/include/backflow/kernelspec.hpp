#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "backflow/grid.hpp"
#include "backflow/states.hpp"

namespace backflow::kernelspec {

inline constexpr double kBrackenMelloy = 0.038452;

// n >= 16 nodes on (0, u_max]. For the panel scheme `n` is the node count and
// must be a multiple of `panel_order`.
QuadratureGrid build_grid(int n, double u_max, GridScheme scheme = GridScheme::gauss_legendre, int panel_order = 12);
// Panel Gauss-Legendre grid with panels of width `panel_width`.
QuadratureGrid build_panel_grid(double u_max, double panel_width, int panel_order);

struct KernelMatrix {
  QuadratureGrid grid;
  double a = 0.0;
  Eigen::MatrixXd entries;
};

KernelMatrix build_kernel(const QuadratureGrid& grid, double a);
// (u + v)/pi * exp(-a^2 (u - v)^2): the large-a form of the smeared kernel,
// whose spectrum scales exactly as 1/a^2.
KernelMatrix build_scaling_kernel(const QuadratureGrid& grid, double a);

struct SpectrumResult {
  std::vector<double> eigenvalues;  // descending
  double most_negative = 0.0;
  double max_eigenvalue = 0.0;
  std::vector<double> sub_extremal_negatives;
  states::GridMomentumState ground_state;
  double a = 0.0;
};

SpectrumResult solve_spectrum(const KernelMatrix& kernel, bool with_ground_state = true);

double flux_quadratic_form(const states::GridMomentumState& phi, const KernelMatrix& kernel);

std::vector<std::pair<double, double>> lambda_of_a(const std::vector<double>& a_values, const QuadratureGrid& grid);

struct ScanEntry {
  double u_max;
  int n;
  double most_negative;
  double max_eigenvalue;
};

struct BoundScan {
  std::vector<ScanEntry> entries;
  std::vector<std::pair<double, double>> finest;  // (u_max, most_negative at the largest n)
  double extrapolated = 0.0;
  // The (n, U) -> (2n, U + 5) changes in most_negative, where both exist.
  double max_refinement_change = 0.0;
  bool converged = false;
};

// Spectra for every (u_max, n) pair and a fit L + c/U + d/U^2 through the
// finest-n values (least squares beyond three u_max values, L + c/U for two).
BoundScan bound_scan(const std::vector<double>& u_max_values, const std::vector<int>& n_values, double a = 0.0);
double extrapolate_in_inverse_cutoff(const std::vector<std::pair<double, double>>& samples);

}  // namespace backflow::kernelspec
