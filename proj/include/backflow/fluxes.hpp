#pragma once

#include <functional>
#include <string>
#include <vector>

#include "backflow/states.hpp"

namespace backflow::fluxes {

using CurrentFunction = std::function<double(double)>;

struct Interval {
  double t1, t2;
  double width() const { return t2 - t1; }
};

enum class FluxMethod { adaptive_time, kernel_form };
std::string to_string(FluxMethod m);

struct FluxResult {
  double t1 = 0.0, t2 = 0.0;
  double F = 0.0;
  double fraction_of_cbm = 0.0;  // |F| / 0.038452 when F < 0, else 0
  FluxMethod method = FluxMethod::adaptive_time;
  double tolerance = 0.0;
};

double fraction_of_cbm(double F);

struct SearchOptions {
  int samples = 4000;
  double bisection_tol = 1e-8;
  std::vector<double> exclusions;  // J is never evaluated exactly here
};

// All maximal sub-intervals of [lo, hi] on which J < 0, sorted by start.
// Intervals touching the window edge are clipped to it.
std::vector<Interval> find_negative_intervals(const CurrentFunction& J, double lo, double hi,
                                              const SearchOptions& opts = {});
// The widest negative interval; false when J has no negative excursion.
bool find_negative_interval(const CurrentFunction& J, double lo, double hi, Interval& out,
                            const SearchOptions& opts = {});

double integrate_current(const CurrentFunction& J, double t1, double t2, double tol = 1e-10,
                         const std::vector<double>& breakpoints = {});

// One FluxResult per negative interval of the state's current in [lo, hi],
// sorted by |F| descending.
std::vector<FluxResult> backflow_report(const states::MomentumState& s, double lo, double hi, double tol = 1e-10,
                                        int samples = 4000);

CurrentFunction current_function(const states::MomentumState& s);

}  // namespace backflow::fluxes
