#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "backflow/currents.hpp"
#include "backflow/errors.hpp"
#include "backflow/fluxes.hpp"
#include "backflow/kernelspec.hpp"
#include "backflow/measurement.hpp"
#include "backflow/parallel.hpp"
#include "backflow/state_config.hpp"
#include "backflow/states.hpp"
#include "backflow/verify/acceptance.hpp"

namespace backflow::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// JSON numbers rounded to 12 significant digits so output is stable.
json jnum(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(num(v));
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("invalid number '") + item + "' in --" + what);
    }
  }
  if (out.empty()) throw UsageError(std::string("--") + what + " must not be empty");
  return out;
}

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

class Table {
 public:
  explicit Table(std::vector<std::string> cols) : cols_(std::move(cols)) {}
  void row(std::vector<std::string> r) { rows_.push_back(std::move(r)); }
  void write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < cols_.size(); ++i) os << (i ? "," : "") << cols_[i];
    os << "\n";
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << "\n";
    }
  }
  json to_json() const {
    json arr = json::array();
    for (const auto& r : rows_) {
      json o = json::object();
      for (std::size_t i = 0; i < cols_.size(); ++i) {
        const auto& v = r[i];
        if (v == "nan")
          o[cols_[i]] = nullptr;
        else {
          char* end = nullptr;
          const double d = std::strtod(v.c_str(), &end);
          if (end && *end == '\0' && !v.empty())
            o[cols_[i]] = d;
          else
            o[cols_[i]] = v;
        }
      }
      arr.push_back(o);
    }
    return arr;
  }

 private:
  std::vector<std::string> cols_;
  std::vector<std::vector<std::string>> rows_;
};

// Options shared by the subcommands; each subcommand registers what it uses.
struct Opts {
  std::string format;
  std::string output;
  std::string config;
  // state
  std::string state;
  std::string state_json;
  double a = std::nan(""), b = std::nan(""), epsilon = states::kDefaultEpsilon;
  double p1 = std::nan(""), p2 = std::nan(""), sigma = std::nan(""), A1 = std::nan(""), A2 = std::nan("");
  int state_n = 400;
  double state_umax = 15.0;
  // grids
  int n = 400;
  double umax = 15.0;
  double smear_a = 0.0;
  std::string scheme = "gauss-legendre";
  std::string umax_list = "10,15,20";
  std::string n_list = "200,400,800";
  std::string a_list;
  std::string emit = "summary";
  std::string compare;
  // time axes
  double t_min = std::nan(""), t_max = std::nan("");
  int samples = 1200;
  double tol = 1e-10;
  std::string method = "adaptive-time";
  // measurement
  std::string V0 = "0.5";
  double asym_a = 0.0, asym_b = -0.1;
  double t0 = std::nan("");
  double dt = std::nan("");
  int steps = 0;
  double x_min = -200.0, x_max = 100.0, dx = 0.05;
  double u_cut = 40.0, taper = 10.0;
  bool deconvolve = false;
  double t1 = std::nan(""), t2 = std::nan("");
  // gauss-scan
  std::string p1_list = "0.3", p2_list = "1.4", A1_list = "1.8";
  double scan_sigma = 10.0, scan_A2 = 1.0;
  // verify
  std::string only;
};

void add_output_options(CLI::App* sc, Opts& o, const std::string& default_format) {
  sc->add_option("--format", o.format, "output format (default " + default_format + ")")->check(CLI::IsMember({"csv", "json"}));
  sc->add_option("--output", o.output, "output file (default stdout)");
}

void add_state_options(CLI::App* sc, Opts& o) {
  sc->add_option("--state", o.state,
                 "guess1, guess2, gauss2, planewaves, extremal, or a preset (paper-gauss-A, paper-gauss-B)");
  sc->add_option("--state-json", o.state_json, "state description as JSON");
  sc->add_option("--a", o.a, "guess shape parameter a");
  sc->add_option("--b", o.b, "guess-2 decay rate b");
  sc->add_option("--epsilon", o.epsilon, "regulator epsilon");
  sc->add_option("--p1", o.p1);
  sc->add_option("--p2", o.p2);
  sc->add_option("--sigma", o.sigma);
  sc->add_option("--A1", o.A1);
  sc->add_option("--A2", o.A2);
  sc->add_option("--state-n", o.state_n, "grid size for the extremal state");
  sc->add_option("--state-umax", o.state_umax, "momentum cutoff for the extremal state");
}

void add_time_options(CLI::App* sc, Opts& o) {
  sc->add_option("--t-min", o.t_min);
  sc->add_option("--t-max", o.t_max);
  sc->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
}

double need(double v, const char* flag) {
  if (std::isnan(v)) throw UsageError(std::string("missing --") + flag);
  return v;
}

states::MomentumState make_state(const Opts& o) {
  if (!o.state_json.empty()) {
    json j;
    try {
      j = json::parse(o.state_json);
    } catch (const json::exception& e) {
      throw UsageError(std::string("invalid state JSON: ") + e.what());
    }
    return states::state_from_json(j);
  }
  const std::string& s = o.state;
  if (s.empty()) throw UsageError("a state is required (--state or a config 'state' object)");
  if (s == "guess1") return states::make_guess1(need(o.a, "a"), o.epsilon);
  if (s == "guess2") return states::make_guess2(need(o.a, "a"), need(o.b, "b"), o.epsilon);
  if (s == "paper-gauss-A" || s == "paper-gauss-B") return states::preset_gaussian(s);
  if (s == "gauss2")
    return states::make_gaussian(need(o.p1, "p1"), need(o.p2, "p2"), need(o.sigma, "sigma"), need(o.A1, "A1"),
                                 need(o.A2, "A2"));
  if (s == "planewaves") return states::make_plane_waves(need(o.p1, "p1"), need(o.p2, "p2"), need(o.A1, "A1"), need(o.A2, "A2"));
  if (s == "extremal") {
    const auto grid = kernelspec::build_grid(o.state_n, o.state_umax);
    return kernelspec::solve_spectrum(kernelspec::build_kernel(grid, 0.0)).ground_state;
  }
  throw UsageError("unknown state '" + s + "'");
}

bool is_gaussian(const states::MomentumState& s) { return std::holds_alternative<states::GaussianSuperposition>(s); }

struct Emitter {
  const Opts& o;
  std::ostream& out;
  json meta;

  void emit(const Table& t, json extra = json::object()) {
    write([&](std::ostream& os) {
      if (o.format == "csv") {
        t.write_csv(os);
      } else {
        json j = std::move(extra);
        j["meta"] = meta;
        j["rows"] = t.to_json();
        os << j.dump(2) << "\n";
      }
    });
  }

  void emit_object(json j) {
    write([&](std::ostream& os) {
      if (o.format == "csv") {
        Table t({"key", "value"});
        for (auto it = j.begin(); it != j.end(); ++it)
          if (it.value().is_number()) t.row({it.key(), num(it.value().get<double>())});
          else if (it.value().is_string()) t.row({it.key(), it.value().get<std::string>()});
        t.write_csv(os);
      } else {
        j["meta"] = meta;
        os << j.dump(2) << "\n";
      }
    });
  }

  template <class F>
  void write(F&& f) {
    if (o.output.empty()) {
      f(out);
      return;
    }
    std::ofstream file(o.output, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + o.output + "'");
    f(file);
  }
};

std::vector<std::string> expand_config(const std::string& path, const std::vector<std::string>& args,
                                       std::string& command) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  std::vector<std::string> extra;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const auto& v = it.value();
    if (key == "command") {
      command = v.get<std::string>();
    } else if (key == "description") {
      continue;
    } else if (key == "state") {
      extra.push_back("--state-json");
      extra.push_back(v.dump());
    } else if (v.is_boolean()) {
      if (v.get<bool>()) extra.push_back("--" + key);
    } else if (v.is_array()) {
      std::string joined;
      for (const auto& e : v) joined += (joined.empty() ? "" : ",") + (e.is_string() ? e.get<std::string>() : e.dump());
      extra.push_back("--" + key);
      extra.push_back(joined);
    } else {
      extra.push_back("--" + key);
      extra.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
  }
  (void)args;
  return extra;
}

json effective_config(const CLI::App* sc) {
  json j = json::object();
  for (const auto* opt : sc->get_options()) {
    const std::string name = opt->get_name();
    if (name.empty() || name == "--help" || name == "--output" || name == "--config" || name == "-h,--help") continue;
    if (opt->count() == 0) continue;
    j[name] = opt->as<std::string>();
  }
  j["command"] = sc->get_name();
  return j;
}

// --- subcommands --------------------------------------------------------

void cmd_eigen(const Opts& o, Emitter& em) {
  const auto grid = kernelspec::build_grid(o.n, o.umax, grid_scheme_from_string(o.scheme));
  const auto spec = kernelspec::solve_spectrum(kernelspec::build_kernel(grid, o.smear_a));
  if (o.emit == "spectrum") {
    Table t({"index", "eigenvalue"});
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) t.row({std::to_string(i), num(spec.eigenvalues[i])});
    em.emit(t);
    return;
  }
  if (o.emit == "state") {
    std::vector<std::string> cols{"u", "phi"};
    std::optional<states::MomentumState> cmp;
    if (o.compare == "asymptotic") {
      cols.push_back("phi_asymptotic");
    } else if (!o.compare.empty()) {
      Opts c = o;
      c.state = o.compare;
      c.state_json.clear();
      cmp = make_state(c);
      cols.push_back("phi_" + o.compare);
    }
    Table t(cols);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::vector<std::string> r{num(grid.nodes[i]), num(spec.ground_state.values[i])};
      if (o.compare == "asymptotic") {
        const double u = grid.nodes[i];
        r.push_back(num((o.asym_a * std::sin(u * u) + o.asym_b * std::cos(u * u)) / u));
      } else if (cmp) {
        double v = 0.0;
        if (auto g1 = std::get_if<states::Guess1State>(&*cmp)) v = states::eval_phi(*g1, grid.nodes[i]);
        else if (auto g2 = std::get_if<states::Guess2State>(&*cmp)) v = states::eval_phi(*g2, grid.nodes[i]);
        else throw UsageError("--compare needs guess1 or guess2");
        r.push_back(num(v));
      }
      t.row(r);
    }
    em.emit(t);
    return;
  }
  if (o.emit != "summary") throw UsageError("--emit must be summary, spectrum or state");
  // eigenvalues within roundoff of zero are not counted
  const double floor = 1e-12 * spec.max_eigenvalue;
  std::size_t negatives = spec.most_negative < -floor ? 1 : 0;
  for (double v : spec.sub_extremal_negatives) negatives += v < -floor ? 1 : 0;
  json sub = json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(spec.sub_extremal_negatives.size(), 8); ++i)
    sub.push_back(jnum(spec.sub_extremal_negatives[i]));
  em.emit_object({{"most_negative", jnum(spec.most_negative)},
                  {"max_eigenvalue", jnum(spec.max_eigenvalue)},
                  {"fraction_of_cbm", jnum(-spec.most_negative / kernelspec::kBrackenMelloy)},
                  {"negative_count", negatives},
                  {"sub_extremal_negatives", sub},
                  {"n", o.n},
                  {"u_max", jnum(o.umax)},
                  {"a", jnum(o.smear_a)},
                  {"scheme", o.scheme}});
}

void cmd_bound_scan(const Opts& o, Emitter& em) {
  if (!o.a_list.empty()) {
    const auto as = parse_list(o.a_list, "a-list");
    const auto lam = kernelspec::lambda_of_a(as, kernelspec::build_grid(o.n, o.umax));
    Table t({"a", "lambda", "lambda_a2"});
    for (const auto& [a, l] : lam) t.row({num(a), num(l), num(l * a * a)});
    em.emit(t, {{"n", o.n}, {"u_max", jnum(o.umax)}});
    return;
  }
  std::vector<int> ns;
  for (double v : parse_list(o.n_list, "n-list")) ns.push_back(static_cast<int>(v));
  const auto scan = kernelspec::bound_scan(parse_list(o.umax_list, "umax-list"), ns, o.smear_a);
  Table t({"u_max", "n", "most_negative", "max_eigenvalue"});
  for (const auto& e : scan.entries) t.row({num(e.u_max), std::to_string(e.n), num(e.most_negative), num(e.max_eigenvalue)});
  em.emit(t, {{"extrapolated", jnum(scan.extrapolated)},
              {"converged", scan.converged},
              {"max_refinement_change", jnum(scan.max_refinement_change)},
              {"fraction_of_cbm", jnum(-scan.extrapolated / kernelspec::kBrackenMelloy)}});
}

std::pair<double, double> time_window(const Opts& o, const states::MomentumState& s, double lo, double hi) {
  if (is_gaussian(s)) {
    lo = -40.0;
    hi = 40.0;
  }
  return {std::isnan(o.t_min) ? lo : o.t_min, std::isnan(o.t_max) ? hi : o.t_max};
}

void cmd_current(const Opts& o, Emitter& em) {
  const auto s = make_state(o);
  const auto [lo, hi] = time_window(o, s, -3.0, 3.0);
  const auto tr = currents::trace(s, currents::linspace(lo, hi, o.samples));
  Table t({"t", "J", "excluded"});
  for (std::size_t i = 0; i < tr.times.size(); ++i)
    t.row({num(tr.times[i]), num(tr.values[i]), tr.excluded[i] ? "1" : "0"});
  em.emit(t, {{"state", states::state_to_json(s)}});
}

void cmd_flux(const Opts& o, Emitter& em) {
  const auto s = make_state(o);
  Table t({"t1", "t2", "F", "fraction", "method", "tolerance"});
  if (o.method == "kernel-form") {
    const auto* g = std::get_if<states::GridMomentumState>(&s);
    states::GridMomentumState phi;
    const auto grid = kernelspec::build_grid(o.n, o.umax);
    if (g) {
      phi = *g;
    } else {
      std::vector<double> v(grid.size());
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (auto g1 = std::get_if<states::Guess1State>(&s)) v[i] = states::eval_phi(*g1, grid.nodes[i]);
        else if (auto g2 = std::get_if<states::Guess2State>(&s)) v[i] = states::eval_phi(*g2, grid.nodes[i]);
        else throw UsageError("kernel-form flux needs a guess or grid state");
      }
      phi = states::make_grid_state(grid, v, false);
    }
    const double F = kernelspec::flux_quadratic_form(phi, kernelspec::build_kernel(phi.grid, 0.0));
    t.row({"-1", "1", num(F), num(fluxes::fraction_of_cbm(F)), "kernel-form", "0"});
    em.emit(t);
    return;
  }
  if (o.method != "adaptive-time") throw UsageError("--method must be adaptive-time or kernel-form");
  const auto [lo, hi] = time_window(o, s, -3.0, 3.0);
  const auto rep = fluxes::backflow_report(s, lo, hi, o.tol, std::max(o.samples, 4000));
  for (const auto& r : rep)
    t.row({num(r.t1), num(r.t2), num(r.F), num(r.fraction_of_cbm), fluxes::to_string(r.method), num(r.tolerance)});
  json extra = json::object();
  if (!rep.empty()) {
    extra["F"] = jnum(rep.front().F);
    extra["fraction"] = jnum(rep.front().fraction_of_cbm);
  }
  em.emit(t, extra);
}

void cmd_prob(const Opts& o, Emitter& em) {
  const auto s = make_state(o);
  const auto [lo, hi] = time_window(o, s, -3.0, 3.0);
  const auto ts = currents::linspace(lo, hi, o.samples);
  const auto p = measurement::probability_left_curve(s, ts);
  Table t({"t", "P"});
  for (std::size_t i = 0; i < ts.size(); ++i) t.row({num(ts[i]), num(p[i])});
  em.emit(t);
}

void cmd_smear(const Opts& o, Emitter& em) {
  const auto s = make_state(o);
  const auto [lo, hi] = time_window(o, s, -3.0, 3.0);
  const auto ts = currents::linspace(lo, hi, o.samples);
  const auto J = fluxes::current_function(s);
  const auto bps = currents::singular_times(s);
  auto safe = [&](double t) { return currents::is_excluded(s, t) ? std::nan("") : J(t); };
  const auto V0s = parse_list(o.V0, "V0");
  std::vector<std::string> cols{"tau", "J"};
  std::vector<measurement::ArrivalDistribution> pis;
  std::vector<currents::CurrentTrace> backs;
  json info = json::array();
  for (double v : V0s) {
    if (!(v > 0.0)) throw UsageError("--V0 values must be positive");
    pis.push_back(measurement::smear_current(J, v, ts, bps));
    const std::string tag = V0s.size() == 1 ? "" : "_" + num(v);
    cols.push_back("Pi" + tag);
    if (o.deconvolve) {
      backs.push_back(measurement::deconvolve(pis.back()));
      cols.push_back("J_recovered" + tag);
    }
    const auto k = measurement::derivative_kinks(pis.back());
    info.push_back({{"V0", jnum(v)},
                    {"min_Pi", jnum(pis.back().min_value())},
                    {"kinks", {{"t_minus", jnum(k.t_minus)}, {"jump_minus", jnum(k.jump_minus)},
                               {"t_plus", jnum(k.t_plus)}, {"jump_plus", jnum(k.jump_plus)},
                               {"background", jnum(k.background)}}}});
  }
  Table t(cols);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::vector<std::string> r{num(ts[i]), num(safe(ts[i]))};
    for (std::size_t k = 0; k < pis.size(); ++k) {
      r.push_back(num(pis[k].values[i]));
      if (o.deconvolve) r.push_back(num(backs[k].values[i]));
    }
    t.row(r);
  }
  em.emit(t, {{"smearing", info}});
}

void cmd_propagate(const Opts& o, Emitter& em) {
  const auto s = make_state(o);
  measurement::PositionGrid pg{o.x_min, o.x_max, o.dx};
  measurement::GridWavefunction psi;
  const double t0 = std::isnan(o.t0) ? (is_gaussian(s) ? -20.0 : -2.0) : o.t0;
  if (auto g = std::get_if<states::GaussianSuperposition>(&s)) {
    psi = measurement::from_gaussian(*g, pg, t0);
  } else {
    measurement::TransformOptions to;
    to.u_max = o.u_cut;
    to.taper_width = std::min(o.taper, o.u_cut);
    psi = measurement::from_momentum_state(s, pg, t0, to);
  }
  const double dt = std::isnan(o.dt) ? 0.4 / (psi.k_max * psi.k_max / (2.0 * psi.mass)) : o.dt;
  const int steps = o.steps > 0 ? o.steps : static_cast<int>(std::ceil(4.0 / dt));
  const double V0 = parse_list(o.V0, "V0").front();
  const auto tr = measurement::propagate(psi, dt, steps, V0);
  const auto sa = measurement::survival_and_arrival(tr);
  const int stride = std::max(1, static_cast<int>(sa.times.size() / std::max(o.samples, 1)));
  Table t({"tau", "N", "Pi"});
  for (std::size_t i = 0; i < sa.times.size(); i += stride)
    t.row({num(sa.times[i]), num(sa.survival[i]), num(sa.arrival.values[i])});
  em.emit(t, {{"V0", jnum(V0)},
              {"dt", jnum(dt)},
              {"min_Pi", jnum(sa.arrival.min_value())},
              {"absorbed", jnum(sa.absorbed)},
              {"max_boundary_density",
               jnum(*std::max_element(tr.boundary_density.begin(), tr.boundary_density.end()))}});
}

void cmd_seq(const Opts& o, Emitter& em) {
  const auto s = make_state(o);
  const double t1 = need(o.t1, "t1"), t2 = need(o.t2, "t2");
  measurement::SequentialOptions so;
  so.grid = {o.x_min, o.x_max, o.dx};
  if (!std::isnan(o.dt)) so.dt = o.dt;
  const double p = measurement::sequential_probability(s, t1, t2, so);
  double F = std::nan("");
  if (t2 > t1) F = fluxes::integrate_current(fluxes::current_function(s), t1, t2, o.tol, currents::singular_times(s));
  em.emit_object({{"t1", jnum(t1)}, {"t2", jnum(t2)}, {"p", jnum(p)}, {"F", jnum(F)}});
}

void cmd_gauss_scan(const Opts& o, Emitter& em) {
  Table t({"p1", "p2", "sigma", "A1", "A2", "t1", "t2", "F", "fraction"});
  for (double p1 : parse_list(o.p1_list, "p1-list"))
    for (double p2 : parse_list(o.p2_list, "p2-list"))
      for (double A1 : parse_list(o.A1_list, "A1-list")) {
        const auto g = states::make_gaussian(p1, p2, o.scan_sigma, A1, o.scan_A2);
        const double lo = std::isnan(o.t_min) ? -40.0 : o.t_min;
        const double hi = std::isnan(o.t_max) ? 40.0 : o.t_max;
        const auto rep = fluxes::backflow_report(g, lo, hi, o.tol, std::max(o.samples, 4000));
        if (rep.empty()) {
          t.row({num(p1), num(p2), num(o.scan_sigma), num(A1), num(o.scan_A2), "nan", "nan", "0", "0"});
        } else {
          const auto& r = rep.front();
          t.row({num(p1), num(p2), num(o.scan_sigma), num(A1), num(o.scan_A2), num(r.t1), num(r.t2), num(r.F),
                 num(r.fraction_of_cbm)});
        }
      }
  em.emit(t);
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  apply_thread_limit();
  std::vector<std::string> args = args_in;
  const std::vector<std::string> commands{"eigen", "bound-scan", "current", "flux",       "prob",
                                          "smear", "propagate",  "seq",     "gauss-scan", "verify"};
  try {
    // --config expands into flags placed after the command line, so it wins.
    std::string config_path;
    for (std::size_t i = 1; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) {
        config_path = args[i + 1];
        args.erase(args.begin() + i, args.begin() + i + 2);
        break;
      }
      if (args[i].rfind("--config=", 0) == 0) {
        config_path = args[i].substr(9);
        args.erase(args.begin() + i);
        break;
      }
    }
    if (!config_path.empty()) {
      std::string command;
      auto extra = expand_config(config_path, args, command);
      bool has_command = false;
      for (std::size_t i = 1; i < args.size(); ++i)
        if (std::find(commands.begin(), commands.end(), args[i]) != commands.end()) has_command = true;
      if (!has_command) {
        if (command.empty()) throw UsageError("config has no 'command' and none was given");
        args.insert(args.begin() + 1, command);
      }
      args.insert(args.end(), extra.begin(), extra.end());
    }

    CLI::App app{"Numerical laboratory for quantum backflow"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.set_version_flag("--version", BACKFLOW_VERSION);
    Opts o;

    auto* eigen = app.add_subcommand("eigen", "spectrum of the discretized flux operator");
    add_output_options(eigen, o, "json");
    eigen->add_option("--n", o.n)->check(CLI::Range(16, 4000));
    eigen->add_option("--umax", o.umax)->check(CLI::PositiveNumber);
    eigen->add_option("--smear-a", o.smear_a, "smearing parameter a (0: sharp)")->check(CLI::NonNegativeNumber);
    eigen->add_option("--scheme", o.scheme)->check(CLI::IsMember({"gauss-legendre", "trapezoid"}));
    eigen->add_option("--emit", o.emit, "summary, spectrum or state");
    eigen->add_option("--compare", o.compare,
                      "with --emit state: add a column for guess1, guess2 or asymptotic (a sin(u^2)/u + b cos(u^2)/u)");
    eigen->add_option("--asym-a", o.asym_a);
    eigen->add_option("--asym-b", o.asym_b);
    eigen->add_option("--a", o.a);
    eigen->add_option("--b", o.b);

    auto* bscan = app.add_subcommand("bound-scan", "extrapolated bound over grids, or lambda(a)");
    add_output_options(bscan, o, "csv");
    bscan->add_option("--umax-list", o.umax_list);
    bscan->add_option("--n-list", o.n_list);
    bscan->add_option("--smear-a", o.smear_a)->check(CLI::NonNegativeNumber);
    bscan->add_option("--a-list", o.a_list, "tabulate lambda(a) on the (--n, --umax) grid");
    bscan->add_option("--n", o.n)->check(CLI::Range(16, 4000));
    bscan->add_option("--umax", o.umax)->check(CLI::PositiveNumber);

    auto* cur = app.add_subcommand("current", "current at the origin J(t)");
    add_output_options(cur, o, "csv");
    add_state_options(cur, o);
    add_time_options(cur, o);

    auto* flux = app.add_subcommand("flux", "backflow intervals and fluxes");
    add_output_options(flux, o, "csv");
    add_state_options(flux, o);
    add_time_options(flux, o);
    flux->add_option("--tol", o.tol)->check(CLI::PositiveNumber);
    flux->add_option("--method", o.method, "adaptive-time or kernel-form");
    flux->add_option("--n", o.n)->check(CLI::Range(16, 4000));
    flux->add_option("--umax", o.umax)->check(CLI::PositiveNumber);

    auto* prob = app.add_subcommand("prob", "probability of x < 0, P(t)");
    add_output_options(prob, o, "csv");
    add_state_options(prob, o);
    add_time_options(prob, o);

    auto* smear = app.add_subcommand("smear", "weak-measurement arrival distribution");
    add_output_options(smear, o, "csv");
    add_state_options(smear, o);
    add_time_options(smear, o);
    smear->add_option("--V0", o.V0, "absorption strength, or a comma-separated list");
    smear->add_flag("--deconvolve", o.deconvolve, "also recover J from Pi");

    auto* prop = app.add_subcommand("propagate", "complex-potential propagation, survival and arrival");
    add_output_options(prop, o, "csv");
    add_state_options(prop, o);
    prop->add_option("--V0", o.V0, "absorption strength");
    prop->add_option("--t0", o.t0, "initial time");
    prop->add_option("--dt", o.dt)->check(CLI::PositiveNumber);
    prop->add_option("--steps", o.steps)->check(CLI::NonNegativeNumber);
    prop->add_option("--x-min", o.x_min);
    prop->add_option("--x-max", o.x_max);
    prop->add_option("--dx", o.dx)->check(CLI::PositiveNumber);
    prop->add_option("--u-cut", o.u_cut, "momentum cutoff of the transform")->check(CLI::PositiveNumber);
    prop->add_option("--taper", o.taper)->check(CLI::NonNegativeNumber);
    prop->add_option("--samples", o.samples, "approximate number of output rows")->check(CLI::PositiveNumber);

    auto* seq = app.add_subcommand("seq", "sequential-projection probability p(t1, t2)");
    add_output_options(seq, o, "json");
    add_state_options(seq, o);
    seq->add_option("--t1", o.t1);
    seq->add_option("--t2", o.t2);
    seq->add_option("--x-min", o.x_min);
    seq->add_option("--x-max", o.x_max);
    seq->add_option("--dx", o.dx)->check(CLI::PositiveNumber);
    seq->add_option("--dt", o.dt)->check(CLI::PositiveNumber);
    seq->add_option("--tol", o.tol)->check(CLI::PositiveNumber);

    auto* gscan = app.add_subcommand("gauss-scan", "grid scan of two-gaussian parameters");
    add_output_options(gscan, o, "csv");
    gscan->add_option("--p1-list", o.p1_list);
    gscan->add_option("--p2-list", o.p2_list);
    gscan->add_option("--A1-list", o.A1_list);
    gscan->add_option("--sigma", o.scan_sigma)->check(CLI::PositiveNumber);
    gscan->add_option("--A2", o.scan_A2);
    gscan->add_option("--tol", o.tol)->check(CLI::PositiveNumber);
    add_time_options(gscan, o);

    auto* ver = app.add_subcommand("verify", "run the acceptance suite");
    ver->add_option("--only", o.only, "comma-separated criterion numbers");

    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    try {
      app.parse(rev);
    } catch (const CLI::ParseError& e) {
      std::ostringstream eo, oo;
      const int code = app.exit(e, oo, eo);
      out << oo.str();
      err << eo.str();
      return code == 0 ? 0 : 2;
    }

    CLI::App* sc = app.get_subcommands().front();
    if (o.format.empty()) o.format = (sc->get_name() == "eigen" || sc->get_name() == "seq") ? "json" : "csv";
    json cfg = effective_config(sc);
    Emitter em{o, out, {{"version", BACKFLOW_VERSION}, {"config_hash", fnv1a(cfg.dump())}, {"command", sc->get_name()}}};
    const std::string name = sc->get_name();
    if (name == "eigen") cmd_eigen(o, em);
    else if (name == "bound-scan") cmd_bound_scan(o, em);
    else if (name == "current") cmd_current(o, em);
    else if (name == "flux") cmd_flux(o, em);
    else if (name == "prob") cmd_prob(o, em);
    else if (name == "smear") cmd_smear(o, em);
    else if (name == "propagate") cmd_propagate(o, em);
    else if (name == "seq") cmd_seq(o, em);
    else if (name == "gauss-scan") cmd_gauss_scan(o, em);
    else if (name == "verify") {
      std::set<int> only;
      if (!o.only.empty())
        for (double v : parse_list(o.only, "only")) only.insert(static_cast<int>(v));
      const auto res = verify::run_acceptance(out, only);
      int failed = 0;
      for (const auto& r : res) failed += r.pass ? 0 : 1;
      out << res.size() - failed << "/" << res.size() << " criteria passed\n";
      return failed ? 1 : 0;
    }
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParameterError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const AccuracyError& e) {
    err << "numeric failure: " << e.what() << " (best estimate " << num(e.best_estimate) << ", error "
        << num(e.error_estimate) << ")\n";
    return 1;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace backflow::cli
