#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ngtele/herald_config.hpp"
#include "ngtele/quadrature.hpp"

namespace ngtele {

enum class ObjectiveKind { Fidelity, DeltaF, ProbTimesDeltaF, ProbEffTimesDeltaF };

std::string_view to_string(ObjectiveKind kind);
/// Accepts "fidelity", "delta-f", "p-delta-f", "peff-delta-f".
ObjectiveKind parse_objective(std::string_view text);

struct Objective {
  ObjectiveKind kind = ObjectiveKind::Fidelity;
  InputState input = Coherent{};
};

/// Symmetric ties T1 = T2; Independent searches the square. Asymmetric kinds only move T2.
enum class TransmissivityMode { Symmetric, Independent };

inline constexpr double kMinTransmissivity = 0.01;
inline constexpr double kGridStep = 0.01;
/// Distance from T = 1 at which zero-probability boundary points are evaluated.
inline constexpr double kBoundaryOffset = 1e-9;
inline constexpr double kDegenerateDeltaF = 1e-9;

struct OptimizerOptions {
  int max_iterations = 200;
  double tolerance = 1e-10;
  double eta1 = 1.0;
  double eta2 = 1.0;
};

struct SweepRecord {
  OperationKind kind = OperationKind::Tmsv;
  int n = 1;
  std::string input;
  ObjectiveKind objective = ObjectiveKind::Fidelity;
  double r = 0.0;
  double T1 = 1.0;
  double T2 = 1.0;
  double fidelity = 0.0;
  double delta_f = 0.0;
  double probability = 0.0;
  double probability_eff = 0.0;
  double objective_value = 0.0;
  /// Optimum sits at T = 1, where PS/PA become ideal and P vanishes.
  bool boundary = false;
  /// Delta F below kDegenerateDeltaF: no advantage over the TMSV.
  bool degenerate = false;
  /// Empty on success; otherwise the failure message and NaN values.
  std::string error;
};

/// All quantities at one point. At T = 1 a pattern that cannot fire there is
/// evaluated at T = 1 - kBoundaryOffset instead.
SweepRecord evaluate_point(OperationKind kind, int n, double r, double T1, double T2, const Objective& objective,
                           const OptimizerOptions& options = {});

/// Grid search with step 0.01 on [0.01, 1] followed by a Nelder-Mead refinement.
SweepRecord optimize_transmissivities(OperationKind kind, int n, double r, const Objective& objective,
                                      TransmissivityMode mode = TransmissivityMode::Symmetric,
                                      const OptimizerOptions& options = {});

/// Worker count from NGTELEPORT_THREADS, defaulting to the hardware concurrency.
int worker_count();

/// One optimized record per r, in grid order. Failed points keep their error message.
std::vector<SweepRecord> sweep_squeezing(OperationKind kind, int n, const std::vector<double>& r_grid,
                                         const Objective& objective,
                                         TransmissivityMode mode = TransmissivityMode::Symmetric,
                                         const OptimizerOptions& options = {});

/// Evenly spaced grid lo, lo + step, ..., up to hi.
std::vector<double> uniform_grid(double lo, double hi, double step);

struct TableRow {
  OperationKind kind = OperationKind::Tmsv;
  ObjectiveKind objective = ObjectiveKind::ProbTimesDeltaF;
  double r = 0.0;
  double value = 0.0;
  /// P, or P_eff for the ProbEffTimesDeltaF objective.
  double probability = 0.0;
  double delta_f = 0.0;
  double T1 = 1.0;
  double T2 = 1.0;
};

/// Record with the largest objective value among the successful ones.
TableRow table_summary(const std::vector<SweepRecord>& records);
std::vector<TableRow> table_summary(const std::vector<OperationKind>& kinds, int n, const std::vector<double>& r_grid,
                                    const Objective& objective,
                                    TransmissivityMode mode = TransmissivityMode::Symmetric);

}  // namespace ngtele
