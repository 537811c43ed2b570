#include "backflow/kernels.hpp"

#include <cmath>
#include <numbers>

namespace backflow::kernels {

namespace {
constexpr double kPi = std::numbers::pi;

inline double kernel_entry(double ui, double uj, double a2) {
  const double d = ui - uj;
  const double base = d == 0.0 ? 2.0 * ui / kPi : std::sin((ui + uj) * d) / (kPi * d);
  return a2 == 0.0 ? base : base * std::exp(-a2 * d * d);
}
}  // namespace

void assemble_flux_kernel(const QuadratureGrid& g, double a, Eigen::MatrixXd& m) {
  const long n = static_cast<long>(g.size());
  m.resize(n, n);
  const double a2 = a * a;
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) {
    const double si = std::sqrt(g.weights[i]);
    for (long j = 0; j <= i; ++j) {
      const double v = si * kernel_entry(g.nodes[i], g.nodes[j], a2) * std::sqrt(g.weights[j]);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
}

void assemble_flux_kernel_serial(const QuadratureGrid& g, double a, Eigen::MatrixXd& m) {
  const long n = static_cast<long>(g.size());
  m.resize(n, n);
  const double a2 = a * a;
  for (long i = 0; i < n; ++i) {
    const double si = std::sqrt(g.weights[i]);
    for (long j = 0; j <= i; ++j) {
      const double v = si * kernel_entry(g.nodes[i], g.nodes[j], a2) * std::sqrt(g.weights[j]);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
}

double time_window_form(const std::vector<double>& u, const std::vector<double>& f, double t) {
  const long n = static_cast<long>(u.size());
  std::vector<double> s(n), c(n);
  for (long i = 0; i < n; ++i) {
    s[i] = std::sin(t * u[i] * u[i]);
    c[i] = std::cos(t * u[i] * u[i]);
  }
  double total = 0.0;
#pragma omp parallel for reduction(+ : total) schedule(dynamic, 32)
  for (long i = 0; i < n; ++i) {
    double row = 0.0;
    for (long j = 0; j < i; ++j) row += f[j] * (s[i] * c[j] - c[i] * s[j]) / (u[i] - u[j]);
    total += 2.0 * f[i] * row + f[i] * f[i] * 2.0 * t * u[i];
  }
  return total;
}

double time_window_form_serial(const std::vector<double>& u, const std::vector<double>& f, double t) {
  const std::size_t n = u.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double k = i == j ? 2.0 * t * u[i] : std::sin(t * (u[i] * u[i] - u[j] * u[j])) / (u[i] - u[j]);
      total += f[i] * f[j] * k;
    }
  }
  return total;
}

void momentum_to_position(const std::vector<double>& u, const std::vector<double>& f, const std::vector<double>& x,
                          double t, std::vector<Complex>& psi, std::vector<Complex>* dpsi) {
  const long nx = static_cast<long>(x.size());
  const long nu = static_cast<long>(u.size());
  psi.assign(nx, Complex{});
  if (dpsi) dpsi->assign(nx, Complex{});
  std::vector<Complex> amp(nu);
  for (long i = 0; i < nu; ++i) amp[i] = f[i] * std::polar(1.0, -u[i] * u[i] * t) / std::sqrt(2.0 * kPi);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < nx; ++k) {
    Complex acc{}, dacc{};
    for (long i = 0; i < nu; ++i) {
      const Complex term = amp[i] * std::polar(1.0, u[i] * x[k]);
      acc += term;
      dacc += Complex(0.0, u[i]) * term;
    }
    psi[k] = acc;
    if (dpsi) (*dpsi)[k] = dacc;
  }
}

void momentum_to_position_serial(const std::vector<double>& u, const std::vector<double>& f,
                                 const std::vector<double>& x, double t, std::vector<Complex>& psi,
                                 std::vector<Complex>* dpsi) {
  psi.assign(x.size(), Complex{});
  if (dpsi) dpsi->assign(x.size(), Complex{});
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      const Complex term = f[i] / std::sqrt(2.0 * kPi) * std::exp(Complex(0.0, u[i] * x[k] - u[i] * u[i] * t));
      psi[k] += term;
      if (dpsi) (*dpsi)[k] += Complex(0.0, u[i]) * term;
    }
  }
}

void grid_current(const std::vector<double>& u, const std::vector<double>& f, const std::vector<double>& t,
                  std::vector<double>& j) {
  const long nt = static_cast<long>(t.size());
  const long nu = static_cast<long>(u.size());
  j.assign(nt, 0.0);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < nt; ++k) {
    Complex U{}, V{};
    for (long i = 0; i < nu; ++i) {
      const Complex e = std::polar(1.0, t[k] * u[i] * u[i]);
      U += f[i] * e;
      V += f[i] * u[i] * std::conj(e);
    }
    j[k] = (U * V).real() / kPi;
  }
}

void grid_current_serial(const std::vector<double>& u, const std::vector<double>& f, const std::vector<double>& t,
                         std::vector<double>& j) {
  j.assign(t.size(), 0.0);
  for (std::size_t k = 0; k < t.size(); ++k) {
    // double sum (1/2pi) sum_ij f_i f_j (u_i + u_j) cos(t (u_i^2 - u_j^2))
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t l = 0; l < u.size(); ++l)
        acc += f[i] * f[l] * (u[i] + u[l]) * std::cos(t[k] * (u[i] * u[i] - u[l] * u[l]));
    j[k] = acc / (2.0 * kPi);
  }
}

}  // namespace backflow::kernels
