#include "backflow/fluxes.hpp"

#include <algorithm>
#include <cmath>

#include "backflow/currents.hpp"
#include "backflow/errors.hpp"
#include "backflow/kernelspec.hpp"
#include "backflow/quadrature.hpp"

namespace backflow::fluxes {

std::string to_string(FluxMethod m) { return m == FluxMethod::kernel_form ? "kernel-form" : "adaptive-time"; }

double fraction_of_cbm(double F) { return F < 0.0 ? -F / kernelspec::kBrackenMelloy : 0.0; }

namespace {

struct SafeEval {
  const CurrentFunction& J;
  const std::vector<double>& excl;
  double operator()(double t) const {
    for (double e : excl) {
      if (t == e) t += 1e-12 * std::max(1.0, std::fabs(t));  // step off the singular point
    }
    return J(t);
  }
};

double bisect(const SafeEval& f, double a, double b, double fa, double tol) {
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<Interval> find_negative_intervals(const CurrentFunction& J, double lo, double hi,
                                              const SearchOptions& opts) {
  if (!(hi > lo)) throw ParameterError("find_negative_intervals: empty search window");
  if (opts.samples < 2) throw ParameterError("find_negative_intervals: need at least two samples");
  SafeEval f{J, opts.exclusions};
  const int n = opts.samples;
  std::vector<double> t(n), v(n);
  for (int i = 0; i < n; ++i) {
    t[i] = lo + (hi - lo) * i / (n - 1);
    v[i] = f(t[i]);
  }
  std::vector<Interval> out;
  bool inside = v[0] < 0.0;
  double start = lo;
  for (int i = 1; i < n; ++i) {
    const bool neg = v[i] < 0.0;
    if (neg == inside) continue;
    const double root = bisect(f, t[i - 1], t[i], v[i - 1], opts.bisection_tol);
    if (neg) {
      start = root;
    } else {
      out.push_back({start, root});
    }
    inside = neg;
  }
  if (inside) out.push_back({start, hi});
  return out;
}

bool find_negative_interval(const CurrentFunction& J, double lo, double hi, Interval& out,
                            const SearchOptions& opts) {
  const auto all = find_negative_intervals(J, lo, hi, opts);
  if (all.empty()) return false;
  out = *std::max_element(all.begin(), all.end(),
                          [](const Interval& a, const Interval& b) { return a.width() < b.width(); });
  return true;
}

double integrate_current(const CurrentFunction& J, double t1, double t2, double tol,
                         const std::vector<double>& breakpoints) {
  if (!(t1 < t2)) throw ParameterError("integrate_current: need t1 < t2");
  if (!(tol > 0.0)) throw ParameterError("integrate_current: tolerance must be positive");
  quad::Options o;
  o.abs_tol = tol;
  o.rel_tol = 0.0;
  o.max_panels = 20000;
  return quad::integrate_real([&](double t) { return J(t); }, t1, t2, o, breakpoints);
}

CurrentFunction current_function(const states::MomentumState& s) {
  return [s](double t) { return currents::current(s, t); };
}

std::vector<FluxResult> backflow_report(const states::MomentumState& s, double lo, double hi, double tol,
                                        int samples) {
  const auto J = current_function(s);
  SearchOptions opts;
  opts.samples = samples;
  opts.exclusions = currents::singular_times(s);
  std::vector<FluxResult> out;
  for (const auto& iv : find_negative_intervals(J, lo, hi, opts)) {
    FluxResult r;
    r.t1 = iv.t1;
    r.t2 = iv.t2;
    r.F = integrate_current(J, iv.t1, iv.t2, tol, opts.exclusions);
    r.fraction_of_cbm = fraction_of_cbm(r.F);
    r.method = FluxMethod::adaptive_time;
    r.tolerance = tol;
    out.push_back(r);
  }
  // mirror-image intervals of time-symmetric currents tie; the later one wins
  std::sort(out.begin(), out.end(), [](const FluxResult& a, const FluxResult& b) {
    const double fa = std::fabs(a.F), fb = std::fabs(b.F);
    if (std::fabs(fa - fb) > 1e-9 * std::max(fa, fb)) return fa > fb;
    return a.t1 > b.t1;
  });
  return out;
}

}  // namespace backflow::fluxes
