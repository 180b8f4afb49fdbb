#include "ngtele/reproduce.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "ngtele/errors.hpp"
#include "ngtele/optimizer.hpp"
#include "ngtele/report.hpp"
#include "ngtele/teleportation.hpp"

namespace ngtele {

namespace {

constexpr double kInputSqueezing = 1.7;

const std::vector<OperationKind> kFamilies[] = {
    {OperationKind::AsymPS, OperationKind::SymPS},
    {OperationKind::AsymPA, OperationKind::SymPA},
    {OperationKind::AsymPC, OperationKind::SymPC},
};

std::vector<double> r_grid() { return uniform_grid(0.02, 2.0, 0.02); }
std::vector<double> eta_r_grid() { return uniform_grid(0.05, 1.5, 0.05); }

std::string label(OperationKind kind, int n) {
  return std::string(to_string(kind)) + (kind == OperationKind::Tmsv ? "" : "_n" + std::to_string(n));
}

std::vector<std::string> preset(std::string_view target, const std::string& detail) {
  return {"target: " + std::string(target), detail,
          "transmissivity search: grid step 0.01 on [0.01, 1] then Nelder-Mead",
          "columns: r, optimal T1 and T2, fidelity, deltaF, P, P_eff, objective value, boundary and degenerate flags"};
}

OutputFile curve(std::string_view target, OperationKind kind, int n, const Objective& objective) {
  const auto grid = r_grid();
  const auto records = sweep_squeezing(kind, n, grid, objective);
  const std::string detail = "kind: " + std::string(to_string(kind)) + ", n: " + std::to_string(n) +
                             ", input: " + describe(objective.input) + ", objective: " +
                             std::string(to_string(objective.kind)) + ", r: 0.02 to 2 step 0.02";
  return {std::string(target) + "_" + std::string(to_string(objective.kind)) + "_" + label(kind, n) + ".csv",
          sweep_table(records, preset(target, detail)).str()};
}

std::vector<OutputFile> family_curves(std::string_view target, const std::vector<OperationKind>& kinds,
                                      const Objective& objective) {
  std::vector<OutputFile> out;
  for (auto kind : kinds)
    for (int n : {1, 2}) out.push_back(curve(target, kind, n, objective));
  const bool catalysis = std::find(kinds.begin(), kinds.end(), OperationKind::AsymPC) != kinds.end();
  if (catalysis && (objective.kind == ObjectiveKind::Fidelity || objective.kind == ObjectiveKind::DeltaF))
    out.push_back(curve(target, OperationKind::AsymPC12, 1, objective));
  return out;
}

std::vector<OperationKind> all_kinds() {
  std::vector<OperationKind> out;
  for (const auto& f : kFamilies) out.insert(out.end(), f.begin(), f.end());
  return out;
}

OutputFile tmsv_curve(std::string_view target, const InputState& input) {
  CsvTable t;
  t.comments = {"target: " + std::string(target), "TMSV reference, input: " + describe(input)};
  t.header = {"r", "F"};
  for (double r : r_grid()) t.add_row({format_number(r), format_number(fidelity_tmsv(input, r))});
  return {std::string(target) + "_tmsv.csv", t.str()};
}

std::vector<OutputFile> optimized(std::string_view target, ObjectiveKind obj, const InputState& input,
                                  const std::vector<OperationKind>& kinds, bool with_tmsv) {
  std::vector<OutputFile> out = family_curves(target, kinds, {obj, input});
  if (with_tmsv) out.push_back(tmsv_curve(target, input));
  return out;
}

std::vector<OutputFile> transmissivity_profile() {
  constexpr double r = 0.5;
  CsvTable t;
  t.comments = {"target: fig5", "kind: sym-ps, n: 1, input: coherent, r: 0.5",
                "T = 1 is evaluated at 1 - 1e-9 where the heralding probability vanishes"};
  t.header = {"T", "deltaF", "P"};
  for (int i = 1; i <= 100; ++i) {
    const double T = i / 100.0;
    const SweepRecord rec = evaluate_point(OperationKind::SymPS, 1, r, T, T, {ObjectiveKind::DeltaF, Coherent{}});
    t.add_row({format_number(T), format_number(rec.delta_f), format_number(rec.probability)});
  }
  return {{"fig5_sym-ps_n1.csv", t.str()}};
}

std::vector<OutputFile> epsilon_dependence() {
  std::vector<OutputFile> out;
  const auto eps_grid = uniform_grid(0.0, 2.5, 0.05);
  for (auto kind : {OperationKind::SymPS, OperationKind::SymPA, OperationKind::SymPC}) {
    CsvTable t;
    t.comments = {"target: fig11", "kind: " + std::string(to_string(kind)) + ", n: 1, objective: delta-f",
                  "input: squeezed vacuum, epsilon: 0 to 2.5 step 0.05", "r values: 0.3, 0.6, 0.9, 1.2"};
    t.header = {"epsilon", "r", "T1", "T2", "deltaF", "P"};
    for (double r : {0.3, 0.6, 0.9, 1.2})
      for (double eps : eps_grid) {
        const SweepRecord rec =
            optimize_transmissivities(kind, 1, r, {ObjectiveKind::DeltaF, SqueezedVacuum{eps}});
        t.add_row({format_number(eps), format_number(r), format_number(rec.T1), format_number(rec.T2),
                   format_number(rec.delta_f), format_number(rec.probability)});
      }
    out.push_back({"fig11_" + label(kind, 1) + ".csv", t.str()});
  }
  return out;
}

std::vector<OutputFile> efficiency_curves(std::string_view target, const InputState& input,
                                          const std::vector<std::pair<OperationKind, double>>& presets) {
  std::vector<OutputFile> out;
  for (const auto& [kind, T] : presets) {
    CsvTable t;
    t.comments = {"target: " + std::string(target),
                  "kind: " + std::string(to_string(kind)) + ", n: 1, T1 = T2 = " + format_number(T) +
                      ", input: " + describe(input),
                  "eta1 = eta2 = eta, r: 0.05 to 1.5 step 0.05"};
    t.header = {"r", "eta", "F", "P", "F_tmsv"};
    for (double eta : {1.0, 0.95, 0.9, 0.8})
      for (double r : eta_r_grid()) {
        HeraldConfig cfg = config_from_kind(kind, 1, r, T, T);
        cfg.eta1 = cfg.eta2 = eta;
        const FidelityResult res = evaluate_fidelity(input, cfg);
        t.add_row({format_number(r), format_number(eta), format_number(res.fidelity), format_number(res.probability),
                   format_number(fidelity_tmsv(input, r))});
      }
    out.push_back({std::string(target) + "_" + label(kind, 1) + ".csv", t.str()});
  }
  return out;
}

std::vector<OutputFile> table(std::string_view target, const InputState& input,
                              const std::vector<std::pair<OperationKind, ObjectiveKind>>& rows) {
  CsvTable t;
  t.comments = {"target: " + std::string(target), "input: " + describe(input) + ", n: 1, symmetric transmissivities",
                "maximum over r in 0.02 to 2 step 0.02 of the optimized objective",
                "P column holds P_eff for the peff-delta-f objective"};
  t.header = {"kind", "objective", "max", "P", "deltaF", "r", "T1", "T2"};
  for (const auto& [kind, obj] : rows) {
    const TableRow row = table_summary(sweep_squeezing(kind, 1, r_grid(), {obj, input}));
    t.add_row({std::string(to_string(kind)), std::string(to_string(obj)), format_number(row.value),
               format_number(row.probability), format_number(row.delta_f), format_number(row.r),
               format_number(row.T1), format_number(row.T2)});
  }
  return {{std::string(target) + ".csv", t.str()}};
}

using Builder = std::function<std::vector<OutputFile>()>;

const std::map<std::string, Builder, std::less<>>& builders() {
  static const std::map<std::string, Builder, std::less<>> table_of_targets = {
      {"fig2", [] { return optimized("fig2", ObjectiveKind::Fidelity, Coherent{}, all_kinds(), true); }},
      {"fig3", [] { return optimized("fig3", ObjectiveKind::DeltaF, Coherent{}, all_kinds(), false); }},
      {"fig4", [] { return optimized("fig4", ObjectiveKind::Fidelity, Coherent{}, kFamilies[2], false); }},
      {"fig5", [] { return transmissivity_profile(); }},
      {"fig6",
       [] {
         auto out = optimized("fig6", ObjectiveKind::ProbTimesDeltaF, Coherent{}, all_kinds(), false);
         auto eff = optimized("fig6", ObjectiveKind::ProbEffTimesDeltaF, Coherent{}, kFamilies[2], false);
         out.insert(out.end(), eff.begin(), eff.end());
         return out;
       }},
      {"fig7",
       [] { return optimized("fig7", ObjectiveKind::Fidelity, SqueezedVacuum{kInputSqueezing}, all_kinds(), true); }},
      {"fig8",
       [] { return optimized("fig8", ObjectiveKind::Fidelity, SqueezedVacuum{kInputSqueezing}, kFamilies[2], false); }},
      {"fig9",
       [] { return optimized("fig9", ObjectiveKind::DeltaF, SqueezedVacuum{kInputSqueezing}, all_kinds(), false); }},
      {"fig10",
       [] {
         const InputState in = SqueezedVacuum{kInputSqueezing};
         auto out = optimized("fig10", ObjectiveKind::ProbTimesDeltaF, in, all_kinds(), false);
         std::vector<OperationKind> fock_ancilla = kFamilies[1];
         fock_ancilla.insert(fock_ancilla.end(), kFamilies[2].begin(), kFamilies[2].end());
         auto eff = optimized("fig10", ObjectiveKind::ProbEffTimesDeltaF, in, fock_ancilla, false);
         out.insert(out.end(), eff.begin(), eff.end());
         return out;
       }},
      {"fig11", [] { return epsilon_dependence(); }},
      {"fig12",
       [] {
         return efficiency_curves("fig12", Coherent{}, {{OperationKind::SymPS, 0.8}, {OperationKind::SymPC, 0.2}});
       }},
      {"fig13",
       [] {
         return efficiency_curves("fig13", SqueezedVacuum{kInputSqueezing},
                                  {{OperationKind::SymPS, 0.8}, {OperationKind::SymPA, 0.9},
                                   {OperationKind::SymPC, 0.2}});
       }},
      {"table2",
       [] {
         return table("table2", Coherent{},
                      {{OperationKind::SymPS, ObjectiveKind::ProbTimesDeltaF},
                       {OperationKind::SymPC, ObjectiveKind::ProbTimesDeltaF},
                       {OperationKind::SymPC, ObjectiveKind::ProbEffTimesDeltaF}});
       }},
      {"table3",
       [] {
         return table("table3", SqueezedVacuum{kInputSqueezing},
                      {{OperationKind::SymPS, ObjectiveKind::ProbTimesDeltaF},
                       {OperationKind::SymPA, ObjectiveKind::ProbTimesDeltaF},
                       {OperationKind::SymPA, ObjectiveKind::ProbEffTimesDeltaF},
                       {OperationKind::SymPC, ObjectiveKind::ProbTimesDeltaF},
                       {OperationKind::SymPC, ObjectiveKind::ProbEffTimesDeltaF}});
       }},
  };
  return table_of_targets;
}

}  // namespace

const std::vector<std::string>& reproduce_targets() {
  static const std::vector<std::string> names = {"fig2", "fig3", "fig4",  "fig5",  "fig6",  "fig7",   "fig8",
                                                 "fig9", "fig10", "fig11", "fig12", "fig13", "table2", "table3"};
  return names;
}

std::vector<OutputFile> reproduce(std::string_view target) {
  const auto& b = builders();
  const auto it = b.find(target);
  if (it == b.end()) {
    std::string known;
    for (const auto& name : reproduce_targets()) known += (known.empty() ? "" : ", ") + name;
    throw DomainError("unknown reproduction target '" + std::string(target) + "' (known: " + known + ")");
  }
  return it->second();
}

}  // namespace ngtele
