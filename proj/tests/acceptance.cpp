// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ngtele/fock_oracle.hpp"
#include "ngtele/optimizer.hpp"
#include "ngtele/phase_space.hpp"
#include "ngtele/quadratic_form.hpp"
#include "ngtele/teleportation.hpp"
#include "oracles.hpp"

using namespace ngtele;

namespace {

const std::vector<OperationKind> kKinds = {OperationKind::AsymPS, OperationKind::AsymPA, OperationKind::AsymPC,
                                           OperationKind::SymPS,  OperationKind::SymPA,  OperationKind::SymPC};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

bool within(double value, double reference, double rel) { return std::abs(value - reference) <= rel * reference; }

void criterion1(Outcome& o) {
  double worst = 0.0;
  for (int i = 0; i <= 8; ++i) {
    const double r = 0.25 * i;
    const HeraldConfig c = config_from_kind(OperationKind::Tmsv, 1, r, 1.0, 1.0);
    worst = std::max(worst, std::abs(fidelity_coherent_closed(c) - 0.5 * (1 + std::tanh(r))));
    worst = std::max(worst, std::abs(fidelity_exact(c, Coherent{}) - 0.5 * (1 + std::tanh(r))));
    for (double eps : {0.0, 0.8, 1.7}) {
      const double ref = fidelity_tmsv(SqueezedVacuum{eps}, r);
      worst = std::max(worst, std::abs(fidelity_squeezed_closed(c, eps) - ref));
      worst = std::max(worst, std::abs(fidelity_exact(c, SqueezedVacuum{eps}) - ref));
    }
  }
  o.check(worst <= 1e-10, "max deviation " + num(worst));
  o.detail << (o.pass ? "max deviation " + num(worst) : "");
}

void criterion2(Outcome& o) {
  const HeraldConfig t = config_from_kind(OperationKind::Tmsv, 1, 0.0, 1.0, 1.0);
  o.check(std::abs(evaluate_fidelity(Coherent{}, t).fidelity - 0.5) <= 1e-10, "tmsv r=0");
  o.check(classify_fidelity(0.5) == FidelityClass::SubClassical, "F=1/2 class");
  o.check(classify_fidelity(0.5 + 1e-13) == FidelityClass::SubClassical, "F=1/2+1e-13 class");
  o.check(classify_fidelity(0.6) == FidelityClass::Quantum, "F=0.6 class");
  o.check(classify_fidelity(2.0 / 3.0) == FidelityClass::Quantum, "F=2/3 class");
  o.check(classify_fidelity(0.7) == FidelityClass::Secure, "F=0.7 class");
}

void criterion3(Outcome& o) {
  double worst = 0.0;
  for (auto kind : kKinds)
    for (int n : {1, 2})
      for (double r : {0.1, 0.5, 1.0})
        for (double T : {0.5, 0.8, 0.95}) {
          const HeraldConfig c = config_from_kind(kind, n, r, T, T);
          const ResourceExponent a = resource_exponent(general_pipeline(c), c);
          const ResourceExponent b = closed_form_matrices(c);
          worst = std::max({worst, (a.M1 - b.M1).cwiseAbs().maxCoeff(), (a.M2 - b.M2).cwiseAbs().maxCoeff(),
                            (a.M3 - b.M3).cwiseAbs().maxCoeff()});
          const auto p4 = fidelity_exponent_pipeline(c, Coherent{});
          const auto c4 = closed_form_m4(c);
          const auto p5 = fidelity_exponent_pipeline(c, SqueezedVacuum{1.0});
          const auto c5 = closed_form_m5(c, 1.0);
          worst = std::max({worst, (p4.M - c4.M).cwiseAbs().maxCoeff(), (p5.M - c5.M).cwiseAbs().maxCoeff(),
                            std::abs(p4.prefactor_log - c4.prefactor_log),
                            std::abs(p5.prefactor_log - c5.prefactor_log)});
        }
  o.check(worst <= 1e-12, "max deviation " + num(worst));
  if (o.pass) o.detail << "max deviation " + num(worst);
}

void criterion4(Outcome& o) {
  struct Job {
    HeraldConfig cfg;
    InputState input;
  };
  std::vector<Job> jobs;
  for (auto kind : kKinds)
    for (int n : {1, 2})
      for (double r : {0.1, 0.5, 1.0})
        for (double T : {0.5, 0.8, 0.95})
          for (const InputState& in : {InputState{Coherent{}}, InputState{SqueezedVacuum{1.0}}})
            jobs.push_back({config_from_kind(kind, n, r, T, T), in});

  struct Gap {
    double dp = 0.0;
    double df = 0.0;
    std::string error;
  };
  std::vector<Gap> gaps(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        const OracleResult res = oracle_fidelity(jobs[i].cfg, jobs[i].input, 40);
        const FidelityResult ref = evaluate_fidelity(jobs[i].input, jobs[i].cfg);
        gaps[i] = {std::abs(res.probability - ref.probability), std::abs(res.fidelity - ref.fidelity), {}};
      } catch (const std::exception& e) {
        gaps[i].error = e.what();
      }
    }
  };
  std::vector<std::future<void>> pool;
  for (int t = 0; t < worker_count(); ++t) pool.push_back(std::async(std::launch::async, work));
  for (auto& f : pool) f.get();

  double dp = 0.0;
  double df = 0.0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    o.check(gaps[i].error.empty(), "config " + std::to_string(i) + ": " + gaps[i].error);
    dp = std::max(dp, gaps[i].dp);
    df = std::max(df, gaps[i].df);
  }
  o.check(dp <= 1e-7, "max |dP| " + num(dp));
  o.check(df <= 1e-6, "max |dF| " + num(df));
  if (o.pass) o.detail << jobs.size() << " configs, max |dP| " << num(dp) << ", max |dF| " << num(df);
}

void check_row(Outcome& o, const std::string& label, const TableRow& row, double value, double prob, double delta_f,
               double rel) {
  o.check(within(row.value, value, rel), label + " max " + num(row.value));
  o.check(within(row.probability, prob, rel), label + " P " + num(row.probability));
  o.check(within(row.delta_f, delta_f, rel), label + " dF " + num(row.delta_f));
  o.detail << (o.pass ? label + " " + num(row.value) + " " : "");
}

void criterion5(Outcome& o) {
  const auto grid = uniform_grid(0.02, 2.0, 0.02);
  const auto pdf = table_summary({OperationKind::SymPS, OperationKind::SymPC}, 1, grid,
                                 {ObjectiveKind::ProbTimesDeltaF, Coherent{}});
  const auto peff = table_summary({OperationKind::SymPC}, 1, grid, {ObjectiveKind::ProbEffTimesDeltaF, Coherent{}});
  o.check(pdf[0].value >= 0.7e-3 && pdf[0].value <= 1.3e-3, "PS max " + num(pdf[0].value));
  o.check(pdf[1].value >= 2.2e-3 && pdf[1].value <= 3.8e-3, "PC max " + num(pdf[1].value));
  check_row(o, "PS", pdf[0], 1e-3, 0.03, 0.04, 0.3);
  check_row(o, "PC", pdf[1], 3e-3, 0.04, 0.07, 0.3);
  check_row(o, "PC-eff", peff[0], 5e-5, 0.0014, 0.03, 0.4);
}

void criterion6(Outcome& o) {
  const auto grid = uniform_grid(0.02, 2.0, 0.02);
  const InputState sq = SqueezedVacuum{1.7};
  const auto pdf = table_summary({OperationKind::SymPS, OperationKind::SymPA, OperationKind::SymPC}, 1, grid,
                                 {ObjectiveKind::ProbTimesDeltaF, sq});
  const auto peff =
      table_summary({OperationKind::SymPA, OperationKind::SymPC}, 1, grid, {ObjectiveKind::ProbEffTimesDeltaF, sq});
  check_row(o, "PS", pdf[0], 1.6e-3, 0.03, 0.05, 0.3);
  check_row(o, "PA", pdf[1], 0.9e-3, 0.03, 0.03, 0.3);
  check_row(o, "PC", pdf[2], 1.5e-3, 0.04, 0.03, 0.3);
  check_row(o, "PA-eff", peff[0], 5e-5, 0.0016, 0.03, 0.4);
  check_row(o, "PC-eff", peff[1], 2.6e-5, 0.0014, 0.02, 0.4);
}

void criterion7(Outcome& o) {
  // (a) transmissivity profile of Sym1-PS at r = 0.5
  const Objective df_coh{ObjectiveKind::DeltaF, Coherent{}};
  const auto at = [&](double T) { return evaluate_point(OperationKind::SymPS, 1, 0.5, T, T, df_coh); };
  bool rising = true;
  for (int i = 50; i < 99; ++i) rising = rising && at(i / 100.0).delta_f < at((i + 1) / 100.0).delta_f;
  o.check(rising, "(a) dF not increasing toward T=1");
  o.check(at(0.99).probability < at(0.5).probability / 10, "(a) P(0.99) >= P(0.5)/10");

  // (b) shape of the optimized curves in r
  const auto grid = uniform_grid(0.02, 2.0, 0.02);
  const auto argmax = [](const std::vector<SweepRecord>& recs) {
    return std::max_element(recs.begin(), recs.end(),
                            [](const auto& a, const auto& b) { return a.delta_f < b.delta_f; }) -
           recs.begin();
  };
  const auto ps = sweep_squeezing(OperationKind::SymPS, 1, grid, df_coh);
  const auto ips = argmax(ps);
  o.check(ips > 0 && ips + 1 < static_cast<long>(ps.size()), "(b) Sym1-PS max at edge r=" + num(ps[ips].r));
  const auto pc = sweep_squeezing(OperationKind::SymPC, 1, grid, df_coh);
  o.check(argmax(pc) == 0, "(b) Sym1-PC max at r=" + num(pc[argmax(pc)].r));

  // (c) coherent input, r in [0.1, 1.5]
  const auto mid = uniform_grid(0.1, 1.5, 0.05);
  for (const auto& rec : sweep_squeezing(OperationKind::AsymPS, 1, mid, df_coh))
    o.check(rec.delta_f < 0, "(c) Asym1-PS dF=" + num(rec.delta_f) + " at r=" + num(rec.r));
  for (auto kind : {OperationKind::SymPA, OperationKind::AsymPA})
    for (const auto& rec : sweep_squeezing(kind, 1, mid, df_coh))
      o.check(rec.delta_f <= 1e-12,
              "(c) " + std::string(to_string(kind)) + " dF=" + num(rec.delta_f) + " at r=" + num(rec.r));

  // (d) squeezed input
  const auto pa = sweep_squeezing(OperationKind::SymPA, 1, grid, {ObjectiveKind::DeltaF, SqueezedVacuum{1.7}});
  o.check(std::any_of(pa.begin(), pa.end(), [](const auto& r) { return r.delta_f > 0; }), "(d) Sym PA never gains");
}

void criterion8(Outcome& o) {
  struct Preset {
    OperationKind kind;
    double T;
    InputState input;
  };
  const std::vector<Preset> presets = {{OperationKind::SymPS, 0.8, Coherent{}},
                                       {OperationKind::SymPC, 0.2, Coherent{}},
                                       {OperationKind::SymPS, 0.8, SqueezedVacuum{1.7}},
                                       {OperationKind::SymPA, 0.9, SqueezedVacuum{1.7}},
                                       {OperationKind::SymPC, 0.2, SqueezedVacuum{1.7}}};
  for (const auto& p : presets)
    for (double r : {0.3, 0.6, 0.9}) {
      HeraldConfig c = config_from_kind(p.kind, 1, r, p.T, p.T);
      const double lossless = evaluate_fidelity(p.input, c).fidelity;
      o.check(std::abs(fidelity_exact(c, p.input) - lossless) <= 1e-8, "eta=1 pipeline differs");
      double prev = lossless;
      for (double eta : {0.95, 0.9}) {
        c.eta1 = c.eta2 = eta;
        const double f = evaluate_fidelity(p.input, c).fidelity;
        o.check(f <= prev + 1e-10, std::string(to_string(p.kind)) + " r=" + num(r) + " eta=" + num(eta) +
                                       " F rises to " + num(f));
        prev = f;
      }
    }
  bool beats = false;
  for (double r : uniform_grid(0.2, 1.0, 0.05)) {
    HeraldConfig c = config_from_kind(OperationKind::SymPS, 1, r, 0.8, 0.8);
    c.eta1 = c.eta2 = 0.9;
    beats = beats || evaluate_fidelity(Coherent{}, c).delta_f > 0;
  }
  o.check(beats, "Sym1-PS at eta=0.9 never beats TMSV");
}

void criterion9(Outcome& o) {
  std::mt19937 rng(2024);
  std::normal_distribution<double> g(0.0, 0.5);
  std::uniform_int_distribution<int> nvar(1, 4);
  std::uniform_int_distribution<int> ord(0, 2);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = nvar(rng);
    std::vector<std::string> names;
    Eigen::MatrixXcd a(n, n);
    Eigen::VectorXcd b(n);
    for (int i = 0; i < n; ++i) {
      names.push_back("x" + std::to_string(i));
      b(i) = {g(rng), g(rng)};
      for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
    }
    const auto f = QuadraticExponent::from_coefficients(names, a, b, {g(rng), g(rng)});
    MultiIndex k;
    std::vector<int> orders;
    for (int i = 0; i < n; ++i) {
      orders.push_back(ord(rng));
      k.orders[names[static_cast<std::size_t>(i)]] = orders.back();
    }
    const Complex ref = ngtele::testing::series_derivative(f.quadratic(), f.linear(), f.constant(), orders);
    worst = std::max(worst, std::abs(derivative_at_zero(f, k) - ref) / std::max(1.0, std::abs(ref)));
  }
  o.check(worst <= 1e-9, "derivative deviation " + num(worst));

  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<std::string> names = {"a", "b", "c", "u"};
    Eigen::MatrixXd m(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = g(rng);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(4, 4);
    a.topLeftCorner(3, 3) = -(m * m.transpose() + Eigen::MatrixXd::Identity(3, 3)).cast<Complex>();
    for (int i = 0; i < 3; ++i) a(i, 3) = a(3, i) = Complex(g(rng), g(rng));
    Eigen::VectorXcd b(4);
    for (int i = 0; i < 4; ++i) b(i) = {g(rng), g(rng)};
    const auto f = QuadraticExponent::from_coefficients(names, a, b);
    const auto g1 = gaussian_integrate(f, std::vector<std::string>{"a", "b", "c"});
    const auto g2 = gaussian_integrate(gaussian_integrate(f, std::vector<std::string>{"c"}),
                                       std::vector<std::string>{"b", "a"});
    o.check(g1.approx_equal(g2, 1e-12), "integration order dependence");

    auto even = QuadraticExponent::from_coefficients(names, a, Eigen::VectorXcd::Zero(4));
    o.check(derivative_at_zero(even, {{"a", 2}, {"u", 1}}) == Complex(0.0, 0.0), "odd Wick term nonzero");
  }

  double fock = 0.0;
  for (int n = 0; n <= 6; ++n)
    for (double t : {-1.2, 0.0, 0.7})
      for (double s : {-0.4, 0.9}) fock = std::max(fock, std::abs(fock_char(n, t, s) - fock_char_generating(n, t, s)));
  o.check(fock <= 1e-12, "number-state char deviation " + num(fock));
  if (o.pass) o.detail << "derivative deviation " << num(worst) << ", number-state char " << num(fock);
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::function<void(Outcome&)> run;
    double budget_seconds;
  };
  const std::vector<Criterion> criteria = {{1, criterion1, 1.0},   {2, criterion2, 1.0},   {3, criterion3, 10.0},
                                           {4, criterion4, 300.0}, {5, criterion5, 600.0}, {6, criterion6, 900.0},
                                           {7, criterion7, 600.0}, {8, criterion8, 600.0}, {9, criterion9, 60.0}};
  bool all = true;
  for (const auto& [id, run, budget] : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.check(secs <= budget, "over time budget of " + num(budget) + " s");
    std::printf("criterion %d: %s (%.1f s) %s\n", id, o.pass ? "PASS" : "FAIL", secs, o.detail.str().c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
