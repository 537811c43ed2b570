#pragma once

#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace backflow::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs the numbered acceptance criteria (all of them when `only` is empty),
// writing one "PASS"/"FAIL" line per criterion to `out` as it goes.
std::vector<CriterionResult> run_acceptance(std::ostream& out, const std::set<int>& only = {});

}  // namespace backflow::verify
