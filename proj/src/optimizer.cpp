#include "ngtele/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "ngtele/errors.hpp"
#include "ngtele/heralded_circuit.hpp"
#include "ngtele/teleportation.hpp"

namespace ngtele {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kSimplexStep = 0.01;

std::string point_suffix(double T1, double T2) {
  std::ostringstream out;
  out.precision(12);
  out << " at (T1, T2) = (" << T1 << ", " << T2 << ")";
  return out.str();
}

template <class Error>
[[noreturn]] void rethrow_as(const Error& e, double T1, double T2) {
  throw Error(e.what() + point_suffix(T1, T2));
}

/// Evaluates and rethrows any library error with the offending point appended.
SweepRecord evaluate_tagged(OperationKind kind, int n, double r, double T1, double T2, const Objective& objective,
                            const OptimizerOptions& options) {
  try {
    return evaluate_point(kind, n, r, T1, T2, objective, options);
  } catch (const ZeroProbabilityError& e) {
    rethrow_as(e, T1, T2);
  } catch (const ConvergenceError& e) {
    rethrow_as(e, T1, T2);
  } catch (const DivergenceError& e) {
    rethrow_as(e, T1, T2);
  } catch (const DomainError& e) {
    rethrow_as(e, T1, T2);
  }
}

bool better(const SweepRecord& candidate, const SweepRecord& best) {
  if (candidate.objective_value != best.objective_value) return candidate.objective_value > best.objective_value;
  if (candidate.T1 != best.T1) return candidate.T1 > best.T1;
  return candidate.T2 > best.T2;
}

struct Search {
  OperationKind kind;
  int n;
  double r;
  const Objective* objective;
  const OptimizerOptions* options;
  bool two_dimensional;
  std::exception_ptr failure;

  [[nodiscard]] std::pair<double, double> point(const double* x) const {
    const double a = std::clamp(x[0], kMinTransmissivity, 1.0);
    if (two_dimensional) return {a, std::clamp(x[1], kMinTransmissivity, 1.0)};
    if (is_symmetric(kind)) return {a, a};
    return {1.0, a};
  }
};

double simplex_cost(const gsl_vector* v, void* params) {
  auto* search = static_cast<Search*>(params);
  const double* x = gsl_vector_const_ptr(v, 0);
  const auto [T1, T2] = search->point(x);
  double outside = 0.0;
  for (std::size_t i = 0; i < v->size; ++i) {
    const double xi = gsl_vector_get(v, i);
    outside += std::max(0.0, kMinTransmissivity - xi) + std::max(0.0, xi - 1.0);
  }
  try {
    const SweepRecord rec = evaluate_tagged(search->kind, search->n, search->r, T1, T2, *search->objective,
                                            *search->options);
    return -rec.objective_value + outside;
  } catch (...) {
    if (!search->failure) search->failure = std::current_exception();
    return kNaN;
  }
}

void disable_gsl_abort() {
  static std::once_flag flag;
  std::call_once(flag, [] { gsl_set_error_handler_off(); });
}

std::vector<double> transmissivity_grid() {
  std::vector<double> grid;
  const int steps = static_cast<int>(std::lround(1.0 / kGridStep));
  for (int i = static_cast<int>(std::lround(kMinTransmissivity / kGridStep)); i <= steps; ++i)
    grid.push_back(static_cast<double>(i) / steps);
  return grid;
}

SweepRecord failed_record(OperationKind kind, int n, double r, const Objective& objective, const std::string& msg) {
  SweepRecord rec;
  rec.kind = kind;
  rec.n = n;
  rec.r = r;
  rec.input = describe(objective.input);
  rec.objective = objective.kind;
  rec.T1 = rec.T2 = rec.fidelity = rec.delta_f = rec.probability = rec.probability_eff = rec.objective_value = kNaN;
  rec.error = msg;
  return rec;
}

}  // namespace

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::Fidelity: return "fidelity";
    case ObjectiveKind::DeltaF: return "delta-f";
    case ObjectiveKind::ProbTimesDeltaF: return "p-delta-f";
    case ObjectiveKind::ProbEffTimesDeltaF: return "peff-delta-f";
  }
  return "unknown";
}

ObjectiveKind parse_objective(std::string_view text) {
  for (auto kind : {ObjectiveKind::Fidelity, ObjectiveKind::DeltaF, ObjectiveKind::ProbTimesDeltaF,
                    ObjectiveKind::ProbEffTimesDeltaF})
    if (text == to_string(kind)) return kind;
  throw DomainError("unknown objective '" + std::string(text) +
                    "' (expected fidelity, delta-f, p-delta-f or peff-delta-f)");
}

SweepRecord evaluate_point(OperationKind kind, int n, double r, double T1, double T2, const Objective& objective,
                           const OptimizerOptions& options) {
  HeraldConfig cfg = config_from_kind(kind, n, r, T1, T2);
  cfg.eta1 = options.eta1;
  cfg.eta2 = options.eta2;
  cfg.validate();

  HeraldConfig eval = cfg;
  if (eval.T1 == 1.0 && eval.n1 != eval.m1) eval.T1 = 1.0 - kBoundaryOffset;
  if (eval.T2 == 1.0 && eval.n2 != eval.m2) eval.T2 = 1.0 - kBoundaryOffset;

  const FidelityResult res = evaluate_fidelity(objective.input, eval);
  SweepRecord rec;
  rec.kind = kind;
  rec.n = n;
  rec.input = describe(objective.input);
  rec.objective = objective.kind;
  rec.r = r;
  rec.T1 = cfg.T1;
  rec.T2 = cfg.T2;
  rec.fidelity = res.fidelity;
  rec.delta_f = res.delta_f;
  rec.probability = res.probability;
  const double p1 = cfg.m1 == 0 ? 1.0 : fock_preparation_probability(cfg.m1, r);
  const double p2 = cfg.m2 == 0 ? 1.0 : fock_preparation_probability(cfg.m2, r);
  rec.probability_eff = p1 * p2 * res.probability;
  switch (objective.kind) {
    case ObjectiveKind::Fidelity: rec.objective_value = rec.fidelity; break;
    case ObjectiveKind::DeltaF: rec.objective_value = rec.delta_f; break;
    case ObjectiveKind::ProbTimesDeltaF: rec.objective_value = rec.probability * rec.delta_f; break;
    case ObjectiveKind::ProbEffTimesDeltaF: rec.objective_value = rec.probability_eff * rec.delta_f; break;
  }
  if (kind != OperationKind::Tmsv) rec.boundary = cfg.T2 == 1.0 || (uses_both_arms(kind) && cfg.T1 == 1.0);
  rec.degenerate = rec.delta_f < kDegenerateDeltaF;
  return rec;
}

SweepRecord optimize_transmissivities(OperationKind kind, int n, double r, const Objective& objective,
                                      TransmissivityMode mode, const OptimizerOptions& options) {
  if (kind == OperationKind::Tmsv) return evaluate_tagged(kind, n, r, 1.0, 1.0, objective, options);

  const bool two_dimensional =
      kind == OperationKind::AsymPC12 || (is_symmetric(kind) && mode == TransmissivityMode::Independent);
  const std::vector<double> grid = transmissivity_grid();
  SweepRecord best;
  bool have_best = false;
  auto consider = [&](double T1, double T2) {
    SweepRecord rec = evaluate_tagged(kind, n, r, T1, T2, objective, options);
    if (!have_best || better(rec, best)) {
      best = std::move(rec);
      have_best = true;
    }
  };
  if (two_dimensional) {
    for (double a : grid)
      for (double b : grid) consider(a, b);
  } else {
    for (double t : grid) consider(is_symmetric(kind) ? t : 1.0, t);
  }

  disable_gsl_abort();
  Search search{kind, n, r, &objective, &options, two_dimensional, nullptr};
  const std::size_t dim = two_dimensional ? 2 : 1;
  gsl_vector* x0 = gsl_vector_alloc(dim);
  gsl_vector* step = gsl_vector_alloc(dim);
  gsl_vector_set(x0, 0, uses_both_arms(kind) ? best.T1 : best.T2);
  if (two_dimensional) gsl_vector_set(x0, 1, best.T2);
  gsl_vector_set_all(step, kSimplexStep);
  gsl_multimin_function fn{&simplex_cost, dim, &search};
  gsl_multimin_fminimizer* solver = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
  gsl_multimin_fminimizer_set(solver, &fn, x0, step);
  for (int it = 0; it < options.max_iterations; ++it) {
    if (gsl_multimin_fminimizer_iterate(solver) != GSL_SUCCESS || search.failure) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(solver), options.tolerance) == GSL_SUCCESS) break;
  }
  std::vector<double> x(dim);
  for (std::size_t i = 0; i < dim; ++i) x[i] = gsl_vector_get(solver->x, i);
  gsl_multimin_fminimizer_free(solver);
  gsl_vector_free(step);
  gsl_vector_free(x0);
  if (search.failure) std::rethrow_exception(search.failure);

  for (double& xi : x) {
    xi = std::clamp(xi, kMinTransmissivity, 1.0);
    if (xi >= 1.0 - kBoundaryOffset) xi = 1.0;
  }
  const auto [T1, T2] = search.point(x.data());
  SweepRecord refined = evaluate_tagged(kind, n, r, T1, T2, objective, options);
  if (refined.objective_value > best.objective_value) best = std::move(refined);
  return best;
}

int worker_count() {
  if (const char* env = std::getenv("NGTELEPORT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    throw DomainError("NGTELEPORT_THREADS must be a positive integer, got '" + std::string(env) + "'");
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<SweepRecord> sweep_squeezing(OperationKind kind, int n, const std::vector<double>& r_grid,
                                         const Objective& objective, TransmissivityMode mode,
                                         const OptimizerOptions& options) {
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > 0.0 && r_grid[i] <= 3.0)) throw DomainError("squeezing grid values must lie in (0, 3]");
    if (i > 0 && !(r_grid[i] > r_grid[i - 1])) throw DomainError("squeezing grid must be strictly ascending");
  }
  std::vector<SweepRecord> out(r_grid.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < r_grid.size(); i = next++) {
      try {
        out[i] = optimize_transmissivities(kind, n, r_grid[i], objective, mode, options);
      } catch (const std::exception& e) {
        out[i] = failed_record(kind, n, r_grid[i], objective, e.what());
      }
    }
  };
  const int workers = std::min<int>(worker_count(), static_cast<int>(r_grid.size()));
  if (workers <= 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw DomainError("grid needs step > 0 and hi >= lo");
  std::vector<double> out;
  const long count = std::lround(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

TableRow table_summary(const std::vector<SweepRecord>& records) {
  TableRow row;
  row.r = row.value = row.probability = row.delta_f = row.T1 = row.T2 = kNaN;
  const SweepRecord* best = nullptr;
  for (const auto& rec : records) {
    if (!rec.error.empty()) continue;
    if (!best || rec.objective_value > best->objective_value) best = &rec;
  }
  if (!records.empty()) {
    row.kind = records.front().kind;
    row.objective = records.front().objective;
  }
  if (!best) return row;
  row.r = best->r;
  row.value = best->objective_value;
  row.probability = best->objective == ObjectiveKind::ProbEffTimesDeltaF ? best->probability_eff : best->probability;
  row.delta_f = best->delta_f;
  row.T1 = best->T1;
  row.T2 = best->T2;
  return row;
}

std::vector<TableRow> table_summary(const std::vector<OperationKind>& kinds, int n, const std::vector<double>& r_grid,
                                    const Objective& objective, TransmissivityMode mode) {
  std::vector<TableRow> rows;
  for (auto kind : kinds) rows.push_back(table_summary(sweep_squeezing(kind, n, r_grid, objective, mode)));
  return rows;
}

}  // namespace ngtele
