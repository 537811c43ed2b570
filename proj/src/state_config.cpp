#include "backflow/state_config.hpp"

#include <set>

#include "backflow/errors.hpp"
#include "backflow/kernelspec.hpp"

namespace backflow::states {

namespace {

void only_keys(const nlohmann::json& j, const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ParameterError("state config: unknown key '" + it.key() + "'");
}

double num(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ParameterError(std::string("state config: missing '") + key + "'");
  if (!j.at(key).is_number()) throw ParameterError(std::string("state config: '") + key + "' must be a number");
  return j.at(key).get<double>();
}

double num_or(const nlohmann::json& j, const char* key, double fallback) {
  return j.contains(key) ? num(j, key) : fallback;
}

}  // namespace

MomentumState state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
    throw ParameterError("state config: expected an object with a string 'family'");
  const std::string family = j.at("family");
  if (family == "guess1") {
    only_keys(j, {"family", "a", "epsilon"});
    return make_guess1(num(j, "a"), num_or(j, "epsilon", kDefaultEpsilon));
  }
  if (family == "guess2") {
    only_keys(j, {"family", "a", "b", "epsilon"});
    return make_guess2(num(j, "a"), num(j, "b"), num_or(j, "epsilon", kDefaultEpsilon));
  }
  if (family == "gauss2") {
    if (j.contains("preset")) {
      only_keys(j, {"family", "preset"});
      return preset_gaussian(j.at("preset").get<std::string>());
    }
    only_keys(j, {"family", "p1", "p2", "sigma", "A1", "A2"});
    return make_gaussian(num(j, "p1"), num(j, "p2"), num(j, "sigma"), num(j, "A1"), num(j, "A2"));
  }
  if (family == "planewaves") {
    only_keys(j, {"family", "p1", "p2", "A1", "A2"});
    return make_plane_waves(num(j, "p1"), num(j, "p2"), num(j, "A1"), num(j, "A2"));
  }
  if (family == "grid") {
    if (j.contains("extremal")) {
      only_keys(j, {"family", "extremal"});
      const auto& e = j.at("extremal");
      only_keys(e, {"n", "u_max", "a"});
      const auto grid = kernelspec::build_grid(static_cast<int>(num_or(e, "n", 400)), num_or(e, "u_max", 15.0));
      return kernelspec::solve_spectrum(kernelspec::build_kernel(grid, num_or(e, "a", 0.0))).ground_state;
    }
    only_keys(j, {"family", "nodes", "weights", "values", "u_max", "label"});
    QuadratureGrid g;
    g.nodes = j.at("nodes").get<std::vector<double>>();
    g.weights = j.at("weights").get<std::vector<double>>();
    if (g.nodes.size() != g.weights.size() || g.nodes.empty())
      throw ParameterError("state config: nodes and weights must be non-empty and of equal length");
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      if (!(g.weights[i] > 0.0)) throw ParameterError("state config: weights must be positive");
      if (i > 0 && !(g.nodes[i] > g.nodes[i - 1])) throw ParameterError("state config: nodes must increase");
    }
    g.u_max = num_or(j, "u_max", g.nodes.back());
    g.scheme = GridScheme::gauss_legendre;
    return make_grid_state(g, j.at("values").get<std::vector<double>>(), true,
                           j.value("label", std::string("grid")));
  }
  throw ParameterError("state config: unknown family '" + family + "'");
}

nlohmann::json state_to_json(const MomentumState& s) {
  struct V {
    nlohmann::json operator()(const PlaneWavePair& x) const {
      return {{"family", "planewaves"}, {"p1", x.p1}, {"p2", x.p2}, {"A1", x.A1}, {"A2", x.A2}};
    }
    nlohmann::json operator()(const GaussianSuperposition& x) const {
      return {{"family", "gauss2"}, {"p1", x.p1}, {"p2", x.p2}, {"sigma", x.sigma}, {"A1", x.A1}, {"A2", x.A2}};
    }
    nlohmann::json operator()(const Guess1State& x) const {
      return {{"family", "guess1"}, {"a", x.a}, {"epsilon", x.epsilon}};
    }
    nlohmann::json operator()(const Guess2State& x) const {
      return {{"family", "guess2"}, {"a", x.a}, {"b", x.b}, {"epsilon", x.epsilon}};
    }
    nlohmann::json operator()(const GridMomentumState& x) const {
      return {{"family", "grid"},         {"nodes", x.grid.nodes}, {"weights", x.grid.weights},
              {"values", x.values},       {"u_max", x.grid.u_max}, {"label", x.label}};
    }
  };
  return std::visit(V{}, s);
}

}  // namespace backflow::states
