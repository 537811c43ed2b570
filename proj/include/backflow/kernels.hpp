#pragma once

// Hot loops shared by kernelspec, currents and measurement. Each kernel has
// an OpenMP version and a plain serial reference; tests check they agree and
// bench/bench_kernels.cpp times them against each other.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "backflow/grid.hpp"

namespace backflow::kernels {

using Complex = std::complex<double>;

// M_ij = sqrt(w_i) K(u_i, u_j) exp(-a^2 (u_i - u_j)^2) sqrt(w_j),
// K(u, v) = sin(u^2 - v^2) / (pi (u - v)), K(u, u) = 2u/pi.
void assemble_flux_kernel(const QuadratureGrid& g, double a, Eigen::MatrixXd& m);
void assemble_flux_kernel_serial(const QuadratureGrid& g, double a, Eigen::MatrixXd& m);

// Quadratic form sum_ij f_i f_j sin(t (u_i^2 - u_j^2)) / (u_i - u_j) with
// diagonal 2 t u_i; f_i already carries the quadrature weight.
double time_window_form(const std::vector<double>& u, const std::vector<double>& f, double t);
double time_window_form_serial(const std::vector<double>& u, const std::vector<double>& f, double t);

// psi(x_k, t) = (1/sqrt(2 pi)) sum_i f_i exp(i u_i x_k - i u_i^2 t) with
// f_i = w_i phi_i. Optionally also d/dx psi.
void momentum_to_position(const std::vector<double>& u, const std::vector<double>& f, const std::vector<double>& x,
                          double t, std::vector<Complex>& psi, std::vector<Complex>* dpsi = nullptr);
void momentum_to_position_serial(const std::vector<double>& u, const std::vector<double>& f,
                                 const std::vector<double>& x, double t, std::vector<Complex>& psi,
                                 std::vector<Complex>* dpsi = nullptr);

// J(t_k) = (1/pi) Re(U V), U = sum f_i e^{i t u_i^2}, V = sum f_i u_i e^{-i t u_i^2}.
void grid_current(const std::vector<double>& u, const std::vector<double>& f, const std::vector<double>& t,
                  std::vector<double>& j);
void grid_current_serial(const std::vector<double>& u, const std::vector<double>& f, const std::vector<double>& t,
                         std::vector<double>& j);

}  // namespace backflow::kernels
