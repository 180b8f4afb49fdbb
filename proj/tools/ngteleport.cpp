// ngteleport: fidelity, probability, optimization and reproduction presets for
// teleportation with heralded non-Gaussian two-mode squeezed resources.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ngtele/errors.hpp"
#include "ngtele/fock_oracle.hpp"
#include "ngtele/heralded_circuit.hpp"
#include "ngtele/optimizer.hpp"
#include "ngtele/report.hpp"
#include "ngtele/reproduce.hpp"
#include "ngtele/run_config.hpp"
#include "ngtele/teleportation.hpp"

using namespace ngtele;

namespace {

enum ExitCode { kOk = 0, kValidation = 2, kNumerical = 3, kOracleMismatch = 4 };

constexpr double kProbabilityGate = 1e-7;
constexpr double kFidelityGate = 1e-6;

struct Flags {
  RunConfig run;
  std::optional<double> t_both;
  std::optional<double> eta_both;
  std::optional<std::string> r_grid_text;
  std::string config_path;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON file with the same keys; flags override it");
  cmd->add_option("--kind", f.run.kind, "tmsv, asym-ps, asym-pa, asym-pc, sym-ps, sym-pa, sym-pc");
  cmd->add_option("--n", f.run.n, "photons subtracted/added/catalysed per arm");
  cmd->add_option("--input", f.run.input, "coherent or sqv");
  cmd->add_option("--epsilon", f.run.epsilon, "input squeezing for sqv");
  cmd->add_option("--eta", f.eta_both, "detector efficiency for both detectors");
  cmd->add_option("--eta1", f.run.eta1);
  cmd->add_option("--eta2", f.run.eta2);
  cmd->add_option("--output", f.run.output_path, "write the result to this path");
}

void add_point(CLI::App* cmd, Flags& f) {
  cmd->add_option("--r", f.run.r, "two-mode squeezing");
  cmd->add_option("--t", f.t_both, "transmissivity of both beam splitters");
  cmd->add_option("--t1", f.run.T1);
  cmd->add_option("--t2", f.run.T2);
}

void add_search(CLI::App* cmd, Flags& f) {
  cmd->add_option("--objective", f.run.objective, "fidelity, delta-f, p-delta-f, peff-delta-f");
  cmd->add_option("--mode", f.run.mode, "symmetric or independent");
}

RunConfig merged(const Flags& f) {
  RunConfig flags = f.run;
  if (f.eta_both) {
    if (!flags.eta1) flags.eta1 = *f.eta_both;
    if (!flags.eta2) flags.eta2 = *f.eta_both;
  }
  if (f.r_grid_text) flags.r_grid = parse_r_grid(*f.r_grid_text);
  RunConfig cfg = f.config_path.empty() ? flags : overlay(load_run_config(f.config_path), flags);
  if (f.t_both) {
    // Asymmetric kinds only have the second beam splitter.
    const bool asymmetric =
        cfg.kind && parse_kind(*cfg.kind) != OperationKind::Tmsv && !uses_both_arms(parse_kind(*cfg.kind));
    if (!f.run.T1 && !asymmetric) cfg.T1 = *f.t_both;
    if (!f.run.T2) cfg.T2 = *f.t_both;
  }
  return cfg;
}

void emit(const RunConfig& cfg, const std::string& text) {
  std::cout << text;
  if (cfg.output_path) write_atomic(*cfg.output_path, text);
}

int cmd_fidelity(const RunConfig& cfg) {
  const HeraldConfig h = resolve_herald(cfg);
  const InputState input = resolve_input(cfg);
  const FidelityResult res = evaluate_fidelity(input, h);
  const double p1 = h.m1 == 0 ? 1.0 : fock_preparation_probability(h.m1, h.r);
  const double p2 = h.m2 == 0 ? 1.0 : fock_preparation_probability(h.m2, h.r);
  const auto j = fidelity_json(res, resolve_kind(cfg), resolve_n(cfg), input, p1 * p2 * res.probability,
                               fidelity_tmsv(input, h.r));
  emit(cfg, j.dump(2) + "\n");
  return kOk;
}

int cmd_probability(const RunConfig& cfg) {
  const HeraldConfig h = resolve_herald(cfg);
  nlohmann::ordered_json j;
  j["kind"] = std::string(to_string(resolve_kind(cfg)));
  j["n"] = resolve_n(cfg);
  j["r"] = h.r;
  j["T1"] = h.T1;
  j["T2"] = h.T2;
  j["eta1"] = h.eta1;
  j["eta2"] = h.eta2;
  const double p = success_probability(h);
  j["probability"] = std::stod(format_number(p));
  j["probabilityEff"] = std::stod(format_number(effective_probability(h, h.r)));
  emit(cfg, j.dump(2) + "\n");
  return kOk;
}

OptimizerOptions detector_options(const RunConfig& cfg) {
  OptimizerOptions opts;
  opts.eta1 = cfg.eta1.value_or(1.0);
  opts.eta2 = cfg.eta2.value_or(1.0);
  return opts;
}

int cmd_optimize(const RunConfig& cfg) {
  if (!cfg.r) throw DomainError("r: required");
  const SweepRecord rec = optimize_transmissivities(resolve_kind(cfg), resolve_n(cfg), *cfg.r,
                                                    resolve_objective(cfg), resolve_mode(cfg), detector_options(cfg));
  emit(cfg, record_json(rec).dump(2) + "\n");
  return kOk;
}

int cmd_sweep(const RunConfig& cfg) {
  const OperationKind kind = resolve_kind(cfg);
  const Objective obj = resolve_objective(cfg);
  const auto grid = resolve_r_grid(cfg);
  const auto records = sweep_squeezing(kind, resolve_n(cfg), grid, obj, resolve_mode(cfg), detector_options(cfg));
  const std::vector<std::string> comments = {
      "kind: " + std::string(to_string(kind)) + ", n: " + std::to_string(resolve_n(cfg)),
      "input: " + describe(obj.input) + ", objective: " + std::string(to_string(obj.kind)) +
          ", mode: " + cfg.mode.value_or("symmetric"),
      "eta1: " + format_number(cfg.eta1.value_or(1.0)) + ", eta2: " + format_number(cfg.eta2.value_or(1.0))};
  emit(cfg, sweep_table(records, comments).str());
  for (const auto& rec : records)
    if (!rec.error.empty()) std::cerr << "r = " << format_number(rec.r) << ": " << rec.error << "\n";
  return kOk;
}

int cmd_oracle_check(const RunConfig& cfg) {
  const HeraldConfig h = resolve_herald(cfg);
  const InputState input = resolve_input(cfg);
  const OperationKind kind = resolve_kind(cfg);
  const int cutoff = cfg.cutoff.value_or(kDefaultCutoff);
  const int max_cutoff = cfg.cutoff ? cutoff : kMaxCutoff;

  const FidelityResult analytic = evaluate_fidelity(input, h);
  const double p_analytic = success_probability(h);
  const OracleResult oracle = oracle_fidelity(h, input, cutoff, {}, max_cutoff);
  const double dp = std::abs(oracle.probability - p_analytic);
  const double df = std::abs(oracle.fidelity - analytic.fidelity);
  const bool p_ok = dp < kProbabilityGate;
  const bool f_ok = df < kFidelityGate;

  nlohmann::ordered_json j;
  j["kind"] = std::string(to_string(kind));
  j["input"] = describe(input);
  j["cutoff"] = oracle.cutoff;
  j["probabilityAnalytic"] = p_analytic;
  j["probabilityOracle"] = oracle.probability;
  j["fidelityAnalytic"] = analytic.fidelity;
  j["fidelityOracle"] = oracle.fidelity;
  j["absDiffProbability"] = dp;
  j["absDiffFidelity"] = df;
  j["probabilityPass"] = p_ok;
  j["fidelityPass"] = f_ok;
  bool exact_ok = true;
  if (kind == OperationKind::Tmsv) {
    const double exact = fidelity_tmsv(input, h.r);
    j["fidelityExactFormula"] = exact;
    exact_ok = std::abs(exact - analytic.fidelity) < kFidelityGate && std::abs(exact - oracle.fidelity) < kFidelityGate;
    j["exactFormulaPass"] = exact_ok;
  }

  std::cout << "method: " << to_string(analytic.method) << ", cutoff: " << oracle.cutoff << "\n";
  std::cout << "|dP|<1e-7: " << (p_ok ? "pass" : "FAIL") << " (" << format_number(dp) << ")\n";
  std::cout << "|dF|<1e-6: " << (f_ok ? "pass" : "FAIL") << " (" << format_number(df) << ")\n";
  if (kind == OperationKind::Tmsv) std::cout << "exact formula: " << (exact_ok ? "pass" : "FAIL") << "\n";
  if (cfg.output_path) write_atomic(*cfg.output_path, j.dump(2) + "\n");
  return p_ok && f_ok && exact_ok ? kOk : kOracleMismatch;
}

int cmd_reproduce(const std::string& target, const RunConfig& cfg) {
  const std::filesystem::path dir = cfg.output_path.value_or(".");
  const auto files = reproduce(target);
  std::filesystem::create_directories(dir);
  for (const auto& f : files) {
    write_atomic(dir / f.name, f.content);
    std::cout << (dir / f.name).string() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Teleportation fidelity with heralded non-Gaussian two-mode squeezed resources"};
  app.require_subcommand(1);

  Flags f;
  auto* fid = app.add_subcommand("fidelity", "fidelity, P, P_eff, delta F and classification at one point");
  add_common(fid, f);
  add_point(fid, f);
  auto* prob = app.add_subcommand("probability", "heralding probability at one point");
  add_common(prob, f);
  add_point(prob, f);
  auto* opt = app.add_subcommand("optimize", "optimal transmissivities at one squeezing");
  add_common(opt, f);
  opt->add_option("--r", f.run.r, "two-mode squeezing");
  add_search(opt, f);
  auto* sweep = app.add_subcommand("sweep", "optimized records over a squeezing grid (CSV)");
  add_common(sweep, f);
  add_search(sweep, f);
  sweep->add_option("--r-grid", f.r_grid_text, "lo:hi:step or comma-separated values");
  auto* oracle = app.add_subcommand("oracle-check", "analytic result against the truncated Fock computation");
  add_common(oracle, f);
  add_point(oracle, f);
  oracle->add_option("--cutoff", f.run.cutoff, "photon cutoff per mode; fixed when given");
  auto* repro = app.add_subcommand("reproduce", "write the CSV files of a figure or table preset");
  std::string target;
  repro->add_option("target", target, "fig2 ... fig13, table2, table3")->required();
  repro->add_option("--output", f.run.output_path, "output directory (default: current directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*repro) return cmd_reproduce(target, f.run);
    const RunConfig cfg = merged(f);
    if (*fid) return cmd_fidelity(cfg);
    if (*prob) return cmd_probability(cfg);
    if (*opt) return cmd_optimize(cfg);
    if (*sweep) return cmd_sweep(cfg);
    if (*oracle) return cmd_oracle_check(cfg);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const ZeroProbabilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const TruncationError& e) {
    std::cerr << "truncation failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kOk;
}
