#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ngtele/herald_config.hpp"
#include "ngtele/optimizer.hpp"
#include "ngtele/quadrature.hpp"

namespace ngtele {

/// Flat command parameters. Unset fields fall back to command defaults.
struct RunConfig {
  std::optional<std::string> kind;
  std::optional<int> n;
  std::optional<double> r;
  std::optional<std::vector<double>> r_grid;
  std::optional<double> T1;
  std::optional<double> T2;
  std::optional<double> eta1;
  std::optional<double> eta2;
  std::optional<std::string> input;
  std::optional<double> epsilon;
  std::optional<std::string> objective;
  std::optional<int> cutoff;
  std::optional<std::string> output_path;
  std::optional<std::string> mode;
};

/// Keys: kind, n, r, rGrid, T1, T2, eta1, eta2, input, epsilon, objective, cutoff, outputPath, mode.
/// Unknown keys and wrongly typed values throw DomainError naming the key.
RunConfig run_config_from_json(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

/// Fields set in `top` replace those in `base`.
RunConfig overlay(RunConfig base, const RunConfig& top);

/// "lo:hi:step" or a comma-separated list.
std::vector<double> parse_r_grid(const std::string& text);

OperationKind resolve_kind(const RunConfig& cfg);
int resolve_n(const RunConfig& cfg);
/// Complete point configuration; errors name the offending field.
HeraldConfig resolve_herald(const RunConfig& cfg);
InputState resolve_input(const RunConfig& cfg);
Objective resolve_objective(const RunConfig& cfg);
TransmissivityMode resolve_mode(const RunConfig& cfg);
std::vector<double> resolve_r_grid(const RunConfig& cfg);

}  // namespace ngtele
