#include "ngtele/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ngtele/errors.hpp"

namespace ngtele {

namespace {

using nlohmann::json;

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw DomainError(key + ": expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw DomainError(key + ": expected an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw DomainError(key + ": expected a string");
  return v.get<std::string>();
}

double parse_double(const std::string& text, const std::string& field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DomainError(field + ": '" + text + "' is not a number");
  }
  if (used != text.size()) throw DomainError(field + ": '" + text + "' is not a number");
  return v;
}

template <class T>
void take(std::optional<T>& dst, const std::optional<T>& src) {
  if (src) dst = src;
}

}  // namespace

RunConfig run_config_from_json(const json& doc) {
  if (!doc.is_object()) throw DomainError("config: expected a JSON object");
  RunConfig cfg;
  for (const auto& [key, v] : doc.items()) {
    if (key == "kind") cfg.kind = as_string(v, key);
    else if (key == "n") cfg.n = as_int(v, key);
    else if (key == "r") cfg.r = as_number(v, key);
    else if (key == "rGrid") {
      if (v.is_string()) {
        cfg.r_grid = parse_r_grid(v.get<std::string>());
      } else if (v.is_array()) {
        std::vector<double> grid;
        for (const auto& x : v) grid.push_back(as_number(x, key));
        cfg.r_grid = grid;
      } else {
        throw DomainError("rGrid: expected an array of numbers or 'lo:hi:step'");
      }
    } else if (key == "T1") cfg.T1 = as_number(v, key);
    else if (key == "T2") cfg.T2 = as_number(v, key);
    else if (key == "eta1") cfg.eta1 = as_number(v, key);
    else if (key == "eta2") cfg.eta2 = as_number(v, key);
    else if (key == "input") cfg.input = as_string(v, key);
    else if (key == "epsilon") cfg.epsilon = as_number(v, key);
    else if (key == "objective") cfg.objective = as_string(v, key);
    else if (key == "cutoff") cfg.cutoff = as_int(v, key);
    else if (key == "outputPath") cfg.output_path = as_string(v, key);
    else if (key == "mode") cfg.mode = as_string(v, key);
    else throw DomainError("config: unknown key '" + key + "'");
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError("config: " + path + " is not valid JSON: " + e.what());
  }
  return run_config_from_json(doc);
}

RunConfig overlay(RunConfig base, const RunConfig& top) {
  take(base.kind, top.kind);
  take(base.n, top.n);
  take(base.r, top.r);
  take(base.r_grid, top.r_grid);
  take(base.T1, top.T1);
  take(base.T2, top.T2);
  take(base.eta1, top.eta1);
  take(base.eta2, top.eta2);
  take(base.input, top.input);
  take(base.epsilon, top.epsilon);
  take(base.objective, top.objective);
  take(base.cutoff, top.cutoff);
  take(base.output_path, top.output_path);
  take(base.mode, top.mode);
  return base;
}

std::vector<double> parse_r_grid(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ':')) parts.push_back(parse_double(item, "rGrid"));
    if (parts.size() != 3) throw DomainError("rGrid: expected 'lo:hi:step'");
    return uniform_grid(parts[0], parts[1], parts[2]);
  }
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_double(item, "rGrid"));
  if (out.empty()) throw DomainError("rGrid: empty grid");
  return out;
}

OperationKind resolve_kind(const RunConfig& cfg) {
  if (!cfg.kind) throw DomainError("kind: required");
  try {
    return parse_kind(*cfg.kind);
  } catch (const DomainError& e) {
    throw DomainError(std::string("kind: ") + e.what());
  }
}

int resolve_n(const RunConfig& cfg) {
  const int n = cfg.n.value_or(1);
  if (n < 1) throw DomainError("n: must be at least 1");
  return n;
}

HeraldConfig resolve_herald(const RunConfig& cfg) {
  const OperationKind kind = resolve_kind(cfg);
  if (!cfg.r) throw DomainError("r: required");
  double T1 = 1.0;
  double T2 = 1.0;
  if (kind == OperationKind::Tmsv) {
    if ((cfg.T1 && *cfg.T1 != 1.0) || (cfg.T2 && *cfg.T2 != 1.0))
      throw DomainError("T1/T2: the TMSV has no beam splitters; omit them or use 1");
  } else if (uses_both_arms(kind)) {
    if (!cfg.T1) throw DomainError("T1: required for " + std::string(to_string(kind)));
    if (!cfg.T2) throw DomainError("T2: required for " + std::string(to_string(kind)));
    T1 = *cfg.T1;
    T2 = *cfg.T2;
  } else {
    if (cfg.T1 && *cfg.T1 != 1.0)
      throw DomainError("T1: asymmetric operations act on the second arm only; T1 must be 1");
    if (!cfg.T2) throw DomainError("T2: required for " + std::string(to_string(kind)));
    T2 = *cfg.T2;
  }
  HeraldConfig h = config_from_kind(kind, resolve_n(cfg), *cfg.r, T1, T2);
  h.eta1 = cfg.eta1.value_or(1.0);
  h.eta2 = cfg.eta2.value_or(1.0);
  h.validate();
  return h;
}

InputState resolve_input(const RunConfig& cfg) {
  const std::string name = cfg.input.value_or("coherent");
  if (name == "coherent") {
    if (cfg.epsilon) throw DomainError("epsilon: only valid with input sqv");
    return Coherent{};
  }
  if (name == "sqv") {
    if (!cfg.epsilon) throw DomainError("epsilon: required for input sqv");
    if (!std::isfinite(*cfg.epsilon)) throw DomainError("epsilon: must be finite");
    return SqueezedVacuum{*cfg.epsilon};
  }
  throw DomainError("input: expected 'coherent' or 'sqv', got '" + name + "'");
}

Objective resolve_objective(const RunConfig& cfg) {
  Objective obj;
  obj.input = resolve_input(cfg);
  try {
    obj.kind = parse_objective(cfg.objective.value_or("fidelity"));
  } catch (const DomainError& e) {
    throw DomainError(std::string("objective: ") + e.what());
  }
  return obj;
}

TransmissivityMode resolve_mode(const RunConfig& cfg) {
  const std::string m = cfg.mode.value_or("symmetric");
  if (m == "symmetric") return TransmissivityMode::Symmetric;
  if (m == "independent") return TransmissivityMode::Independent;
  throw DomainError("mode: expected 'symmetric' or 'independent', got '" + m + "'");
}

std::vector<double> resolve_r_grid(const RunConfig& cfg) {
  if (!cfg.r_grid) throw DomainError("rGrid: required");
  for (double r : *cfg.r_grid)
    if (!(r > 0.0 && r <= 3.0)) throw DomainError("rGrid: values must lie in (0, 3]");
  for (std::size_t i = 1; i < cfg.r_grid->size(); ++i)
    if (!((*cfg.r_grid)[i] > (*cfg.r_grid)[i - 1])) throw DomainError("rGrid: must be strictly ascending");
  return *cfg.r_grid;
}

}  // namespace ngtele
