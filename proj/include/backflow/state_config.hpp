#pragma once

#include <json.hpp>

#include "backflow/states.hpp"

namespace backflow::states {

// {"family": "gauss2" | "planewaves" | "guess1" | "guess2" | "grid", ...}.
// gauss2 also accepts {"preset": "paper-gauss-A"}. A grid state is either
// explicit ("nodes", "weights", "values") or the extremal eigenstate of a
// kernel ("extremal": {"n": 400, "u_max": 15, "a": 0}). Unknown keys are rejected.
MomentumState state_from_json(const nlohmann::json& j);
nlohmann::json state_to_json(const MomentumState& s);

}  // namespace backflow::states
