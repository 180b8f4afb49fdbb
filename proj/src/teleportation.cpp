#include "ngtele/teleportation.hpp"

#include <cmath>
#include <numbers>

#include "ngtele/errors.hpp"

namespace ngtele {

namespace {

constexpr double kThresholdSlack = 1e-12;

struct Params {
  double al, be, t1, t2, r1, r2;
};

Params params_of(const HeraldConfig& cfg) {
  return {std::sinh(cfg.r), std::cosh(cfg.r), std::sqrt(cfg.T1), std::sqrt(cfg.T2),
          std::sqrt(1.0 - cfg.T1), std::sqrt(1.0 - cfg.T2)};
}

void require_lossless(const HeraldConfig& cfg) {
  cfg.validate();
  if (!cfg.lossless()) throw DomainError("closed-form fidelity requires unit detector efficiency");
}

double normalized(const FidelityExponent& fe, const HeraldConfig& cfg, double probability) {
  if (probability == 0.0)
    throw ZeroProbabilityError("herald pattern has zero probability; fidelity is undefined");
  return std::real(herald_moment(fe.M, cfg) * std::exp(fe.prefactor_log)) / probability;
}

double closed_fidelity(const HeraldConfig& cfg, const InputState& input, double probability) {
  if (const auto* sq = std::get_if<SqueezedVacuum>(&input))
    return normalized(closed_form_m5(cfg, sq->epsilon), cfg, probability);
  return normalized(closed_form_m4(cfg), cfg, probability);
}

}  // namespace

FidelityExponent closed_form_m4(const HeraldConfig& cfg) {
  require_lossless(cfg);
  const auto [al, be, t1, t2, r1, r2] = params_of(cfg);
  const double c1 = be * be * r1 * r1;
  const double c4 = -al * be * r1 * r2 * t1;
  const double c5 = be * be * r2 * r2;
  const double c6 = -al * be * r1 * r2 * t2;
  const double c8 = al * al * r1 * r1 * t2 * t2;
  const double c10 = al * al * r2 * r2 * t1 * t1;
  const double d0 = 2.0 * be * (be - al * t1 * t2);
  const double d1 = be * be * r1 * r2;
  const double d2 = be * (2.0 * be * t1 - al * t2 * (t1 * t1 + 1.0));
  const double d3 = be * (2.0 * be * t2 - al * t1 * (t2 * t2 + 1.0));
  const double d4 = al * r1 * r2 * (2.0 * be - al * t1 * t2);

  FidelityExponent out;
  out.M << 0, c1, d1, 0, 0, d2, c4, 0,
           c1, 0, 0, d1, d2, 0, 0, c4,
           d1, 0, 0, c5, c6, 0, 0, d3,
           0, d1, c5, 0, 0, c6, d3, 0,
           0, d2, c6, 0, 0, c8, d4, 0,
           d2, 0, 0, c6, c8, 0, 0, d4,
           c4, 0, 0, d3, d4, 0, 0, c10,
           0, c4, d3, 0, 0, d4, c10, 0;
  out.M /= d0;
  out.prefactor_log = -std::log(d0);
  return out;
}

FidelityExponent closed_form_m5(const HeraldConfig& cfg, double epsilon) {
  require_lossless(cfg);
  if (!std::isfinite(epsilon)) throw DomainError("input squeezing must be finite");
  const auto [al, be, t1, t2, r1, r2] = params_of(cfg);
  const double a0 = be * be - al * al * t1 * t1 * t2 * t2;
  const double a1 = be * be + al * al * t1 * t1 * t2 * t2;
  const double a3 = a1 - 2.0 * al * be * t1 * t2;
  const double sa3 = std::sqrt(a3);
  const double g = std::sinh(2.0 * epsilon);
  const double d = std::cosh(2.0 * epsilon);
  const double k = a0 / a3 + d;

  double e[21];
  e[0] = 2.0 * (a0 * d + a1);
  e[1] = -be * be * g * r1 * r1;
  e[2] = be * be * r1 * r1 * k;
  e[3] = be * r1 * r2 * (d * (a0 / sa3 + al * t1 * t2) + a1 / sa3 - al * t1 * t2);
  e[4] = be * be * g * r1 * r2;
  e[5] = -al * be * g * r1 * r1 * t2;
  e[6] = e[0] / a0 * (t1 * (1.0 + al * al * r2 * r2) - al * be * r1 * r1 * t2 * (a0 * d + a3) / e[0]);
  e[7] = -al * be * r1 * r2 * t1 * k;
  e[8] = al * be * g * r1 * r2 * t1;
  e[9] = -be * be * g * r2 * r2;
  e[10] = be * be * r2 * r2 * k;
  e[11] = -al * be * r1 * r2 * t2 * k;
  e[12] = al * be * g * r1 * r2 * t2;
  e[13] = -al * be * g * r2 * r2 * t1;
  e[14] = e[0] / a0 * (t2 * (1.0 + al * al * r1 * r1) - al * be * r2 * r2 * t1 * (a0 * d + a3) / e[0]);
  e[15] = -al * al * g * r1 * r1 * t2 * t2;
  e[16] = al * al * r1 * r1 * t2 * t2 * k;
  e[17] = al * r1 * r2 * (d * (2.0 * be * be / sa3 - al * t1 * t2 * a0 / a3) + a1 / sa3 + be);
  e[18] = al * al * g * r1 * r2 * t1 * t2;
  e[19] = -al * al * g * r2 * r2 * t1 * t1;
  e[20] = al * al * r2 * r2 * t1 * t1 * k;

  static constexpr int kLayout[8][8] = {
      {1, 2, 3, 4, 5, 6, 7, 8},         {2, 1, 4, 3, 6, 5, 8, 7},
      {3, 4, 9, 10, 11, 12, 13, 14},    {4, 3, 10, 9, 12, 11, 14, 13},
      {5, 6, 11, 12, 15, 16, 17, 18},   {6, 5, 12, 11, 16, 15, 18, 17},
      {7, 8, 13, 14, 17, 18, 19, 20},   {8, 7, 14, 13, 18, 17, 20, 19}};
  FidelityExponent out;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) out.M(i, j) = e[kLayout[i][j]] / e[0];
  out.prefactor_log = -0.5 * std::log(a0 * a0 + 2.0 * a0 * a3 * d + a3 * a3);
  return out;
}

QuadraticExponent fidelity_form(const QuadraticExponent& resource, const InputState& input) {
  const std::vector<std::string> targets(lambda_names().begin(), lambda_names().end());
  const std::vector<std::string> sources = {"tau", "sigma"};
  Eigen::MatrixXd map(4, 2);
  map << -1, 0,
         0, 1,
         -1, 0,
         0, -1;
  QuadraticExponent form = substitute_linear(resource, targets, sources, map);
  double wt = 1.0;
  double ws = 1.0;
  if (const auto* sq = std::get_if<SqueezedVacuum>(&input)) {
    wt = std::exp(2.0 * sq->epsilon);
    ws = std::exp(-2.0 * sq->epsilon);
  }
  form.add_product("tau", "tau", -0.5 * wt);
  form.add_product("sigma", "sigma", -0.5 * ws);
  form.add_log_prefactor(-std::log(2.0 * std::numbers::pi));
  form = gaussian_integrate(form, sources);
  const std::vector<std::string> u(ancilla_names().begin(), ancilla_names().end());
  return restrict_to(form, u);
}

FidelityExponent fidelity_exponent_pipeline(const HeraldConfig& cfg, const InputState& input) {
  const QuadraticExponent form = fidelity_form(general_pipeline(cfg), input);
  FidelityExponent out;
  out.M = form.quadratic();
  out.prefactor_log = form.log_prefactor() + form.constant();
  return out;
}

double fidelity_coherent_closed(const HeraldConfig& cfg) {
  return closed_fidelity(cfg, Coherent{}, closed_form_probability(cfg));
}

double fidelity_squeezed_closed(const HeraldConfig& cfg, double epsilon) {
  return closed_fidelity(cfg, SqueezedVacuum{epsilon}, closed_form_probability(cfg));
}

double fidelity_exact(const HeraldConfig& cfg, const InputState& input) {
  const double p = success_probability(cfg);
  return normalized(fidelity_exponent_pipeline(cfg, input), cfg, p);
}

double fidelity_quadrature(const InputState& input, const HeraldConfig& cfg, const QuadratureOptions& options) {
  const HeraldedState state(cfg);
  if (state.zero_probability())
    throw ZeroProbabilityError("herald pattern has zero probability; fidelity is undefined");
  const ResourceChar chi = [&state](double t1, double s1, double t2, double s2) {
    return state.char_value(t1, s1, t2, s2);
  };
  return teleportation_overlap(input, chi, options).value;
}

double fidelity_tmsv(const InputState& input, double r) {
  if (!(r >= 0.0)) throw DomainError("squeezing r must be non-negative");
  if (const auto* sq = std::get_if<SqueezedVacuum>(&input))
    return std::sqrt(0.25 * (1.0 + std::tanh(r + sq->epsilon)) * (1.0 + std::tanh(r - sq->epsilon)));
  return 0.5 * (1.0 + std::tanh(r));
}

FidelityClass classify_fidelity(double fidelity) {
  if (fidelity > 2.0 / 3.0 + kThresholdSlack) return FidelityClass::Secure;
  if (fidelity > 0.5 + kThresholdSlack) return FidelityClass::Quantum;
  return FidelityClass::SubClassical;
}

std::string_view to_string(FidelityClass cls) {
  switch (cls) {
    case FidelityClass::SubClassical: return "sub-classical";
    case FidelityClass::Quantum: return "quantum";
    case FidelityClass::Secure: return "secure";
  }
  return "unknown";
}

std::string_view to_string(FidelityMethod method) {
  return method == FidelityMethod::ClosedForm ? "closed-form" : "quadrature";
}

FidelityResult evaluate_fidelity(const InputState& input, const HeraldConfig& cfg) {
  cfg.validate();
  FidelityResult out;
  out.config = cfg;
  if (cfg.lossless()) {
    out.probability = closed_form_probability(cfg);
    out.fidelity = closed_fidelity(cfg, input, out.probability);
    out.method = FidelityMethod::ClosedForm;
  } else {
    const HeraldedState state(cfg);
    if (state.zero_probability())
      throw ZeroProbabilityError("herald pattern has zero probability; fidelity is undefined");
    const ResourceChar chi = [&state](double t1, double s1, double t2, double s2) {
      return state.char_value(t1, s1, t2, s2);
    };
    out.probability = state.probability();
    out.fidelity = teleportation_overlap(input, chi).value;
    out.method = FidelityMethod::Quadrature;
  }
  out.delta_f = out.fidelity - fidelity_tmsv(input, cfg.r);
  return out;
}

double delta_fidelity(const InputState& input, const HeraldConfig& cfg) {
  return evaluate_fidelity(input, cfg).delta_f;
}

}  // namespace ngtele
