#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <vector>

#include "backflow/errors.hpp"

namespace backflow::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [lo, hi].
Rule gauss_legendre(int n, double lo = -1.0, double hi = 1.0);

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_panels = 4000;
  bool throw_on_failure = true;
};

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  int panels = 0;
  bool converged = false;
};

namespace detail {

inline constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                  0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                  0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                  0.207784955007898467600689403773245, 0.0};
inline constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                  0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                  0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                  0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                 0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double x) { return std::fabs(x); }
inline double magnitude(std::complex<double> x) { return std::abs(x); }

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T kron = fc * wgk[7];
  T gauss = fc * wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * xgk[j];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    kron += (f1 + f2) * wgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * wg[j / 2];
  }
  return {a, b, kron * h, magnitude((kron - gauss) * h)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) on [lo, hi], splitting first at the
// supplied breakpoints. Throws AccuracyError (with the best estimate) when the
// panel budget is exhausted, unless opts.throw_on_failure is false.
template <class T, class F>
Result<T> integrate(F&& f, double lo, double hi, const Options& opts = {},
                    const std::vector<double>& breakpoints = {}) {
  Result<T> res;
  if (lo == hi) {
    res.converged = true;
    return res;
  }
  double sign = 1.0;
  if (hi < lo) {
    std::swap(lo, hi);
    sign = -1.0;
  }
  std::vector<double> edges{lo};
  std::vector<double> inner;
  for (double bp : breakpoints)
    if (bp > lo && bp < hi) inner.push_back(bp);
  std::sort(inner.begin(), inner.end());
  edges.insert(edges.end(), inner.begin(), inner.end());
  edges.push_back(hi);

  std::priority_queue<detail::Panel<T>> heap;
  T total{};
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i + 1] <= edges[i]) continue;
    auto p = detail::gk15<T>(f, edges[i], edges[i + 1]);
    total += p.value;
    err += p.error;
    heap.push(p);
  }
  int panels = static_cast<int>(heap.size());
  auto tol = [&] { return std::max(opts.abs_tol, opts.rel_tol * detail::magnitude(total)); };
  while (err > tol() && panels < opts.max_panels) {
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(worst);
      break;
    }
    auto l = detail::gk15<T>(f, worst.a, mid);
    auto r = detail::gk15<T>(f, mid, worst.b);
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
    ++panels;
  }
  // recompute from panels to shed accumulated rounding in the running sums
  total = T{};
  err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  res.value = total * sign;
  res.error = err;
  res.panels = panels;
  res.converged = err <= tol();
  if (!res.converged && opts.throw_on_failure) {
    throw AccuracyError("adaptive quadrature did not reach the requested tolerance", detail::magnitude(res.value),
                        err);
  }
  return res;
}

template <class F>
double integrate_real(F&& f, double lo, double hi, const Options& opts = {},
                      const std::vector<double>& breakpoints = {}) {
  return integrate<double>(std::forward<F>(f), lo, hi, opts, breakpoints).value;
}

template <class F>
std::complex<double> integrate_complex(F&& f, double lo, double hi, const Options& opts = {},
                                       const std::vector<double>& breakpoints = {}) {
  return integrate<std::complex<double>>(std::forward<F>(f), lo, hi, opts, breakpoints).value;
}

}  // namespace backflow::quad
