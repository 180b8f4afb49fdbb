#include "ngtele/heralded_circuit.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ngtele/errors.hpp"
#include "ngtele/phase_space.hpp"

namespace ngtele {

namespace {

const std::vector<std::string> kModeNames = {"tau1", "sigma1", "tau2", "sigma2", "tau3", "sigma3", "tau4", "sigma4"};
const std::vector<std::string> kDetectedNames = {"tau3", "sigma3", "tau4", "sigma4"};
const std::vector<std::string> kLossNames = {"tau5", "sigma5", "tau6", "sigma6"};

double factorial(int n) { return std::tgamma(n + 1.0); }

std::vector<std::string> canonical_order() {
  std::vector<std::string> out(lambda_names().begin(), lambda_names().end());
  out.insert(out.end(), ancilla_names().begin(), ancilla_names().end());
  return out;
}

DerivativeKernel make_kernel(const QuadraticExponent& form, const HeraldConfig& cfg,
                             std::vector<Eigen::Index>& active) {
  const MultiIndex k = herald_orders(cfg);
  std::vector<int> orders;
  for (std::size_t j = 0; j < ancilla_names().size(); ++j) {
    const int order = k.order(ancilla_names()[j]);
    if (order == 0) continue;
    active.push_back(static_cast<Eigen::Index>(4 + j));
    orders.push_back(order);
  }
  const auto n = static_cast<Eigen::Index>(active.size());
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q) a(p, q) = form.quadratic()(active[p], active[q]);
  return DerivativeKernel(std::move(a), std::move(orders));
}

}  // namespace

const std::array<std::string, 4>& lambda_names() {
  static const std::array<std::string, 4> names = {"tau1", "sigma1", "tau2", "sigma2"};
  return names;
}

const std::array<std::string, 8>& ancilla_names() {
  static const std::array<std::string, 8> names = {"u1", "v1", "u2", "v2", "u1p", "v1p", "u2p", "v2p"};
  return names;
}

MultiIndex herald_orders(const HeraldConfig& cfg) {
  const auto& u = ancilla_names();
  return MultiIndex{{u[0], cfg.m1}, {u[1], cfg.m1}, {u[2], cfg.m2}, {u[3], cfg.m2},
                    {u[4], cfg.n1}, {u[5], cfg.n1}, {u[6], cfg.n2}, {u[7], cfg.n2}};
}

double herald_scale(const HeraldConfig& cfg) {
  return std::pow(2.0, -cfg.total_photons()) /
         (factorial(cfg.m1) * factorial(cfg.m2) * factorial(cfg.n1) * factorial(cfg.n2));
}

Complex herald_moment(const Eigen::Matrix<std::complex<double>, 8, 8>& m, const HeraldConfig& cfg) {
  const int per_var[] = {cfg.m1, cfg.m1, cfg.m2, cfg.m2, cfg.n1, cfg.n1, cfg.n2, cfg.n2};
  std::vector<Eigen::Index> active;
  std::vector<int> orders;
  for (Eigen::Index j = 0; j < 8; ++j) {
    if (per_var[j] == 0) continue;
    active.push_back(j);
    orders.push_back(per_var[j]);
  }
  const auto n = static_cast<Eigen::Index>(active.size());
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q) a(p, q) = m(active[p], active[q]);
  const DerivativeKernel kernel(std::move(a), std::move(orders));
  return kernel.evaluate(Eigen::VectorXcd::Zero(n), 0.0) * herald_scale(cfg);
}

ResourceExponent closed_form_matrices(const HeraldConfig& cfg) {
  cfg.validate();
  if (!cfg.lossless()) throw DomainError("closed-form matrices exist only for unit detector efficiency");
  const double al = std::sinh(cfg.r);
  const double be = std::cosh(cfg.r);
  const double t1 = std::sqrt(cfg.T1);
  const double t2 = std::sqrt(cfg.T2);
  const double r1 = std::sqrt(1.0 - cfg.T1);
  const double r2 = std::sqrt(1.0 - cfg.T2);
  const double a0 = be * be - al * al * t1 * t1 * t2 * t2;
  const double a1 = be * be + al * al * t1 * t1 * t2 * t2;
  const double a2 = 2.0 * al * be * t1 * t2;

  ResourceExponent out;
  out.config = cfg;
  out.prefactor_log = -std::log(a0);
  out.M1 << a1, 0, -a2, 0,
            0, a1, 0, a2,
            -a2, 0, a1, 0,
            0, a2, 0, a1;
  out.M1 *= -1.0 / (4.0 * a0);

  const double b1 = be * be * r1;
  const double b2 = -al * be * r1 * t1 * t2;
  const double b3 = -al * be * r2 * t1 * t2;
  const double b4 = be * be * r2;
  const double b5 = -al * al * r1 * t1 * t2 * t2;
  const double b6 = al * be * r1 * t2;
  const double b7 = al * be * r2 * t1;
  const double b8 = -al * al * r2 * t1 * t1 * t2;
  const Complex i(0.0, 1.0);
  out.M2 << b1, i * b1, b2, -i * b2,
            -b1, i * b1, -b2, -i * b2,
            b3, -i * b3, b4, i * b4,
            -b3, -i * b3, -b4, i * b4,
            b5, i * b5, b6, -i * b6,
            -b5, i * b5, -b6, -i * b6,
            b7, -i * b7, b8, i * b8,
            -b7, -i * b7, -b8, i * b8;
  out.M2 /= a0;

  const double c1 = be * be * r1 * r1;
  const double c2 = al * be * r1 * r2 * t1 * t2;
  const double c3 = be * be * t1 - al * al * t1 * t2 * t2;
  const double c4 = -al * be * r1 * r2 * t1;
  const double c5 = be * be * r2 * r2;
  const double c6 = -al * be * r1 * r2 * t2;
  const double c7 = be * be * t2 - al * al * t1 * t1 * t2;
  const double c8 = al * al * r1 * r1 * t2 * t2;
  const double c9 = al * be * r1 * r2;
  const double c10 = al * al * r2 * r2 * t1 * t1;
  out.M3 << 0, c1, c2, 0, 0, c3, c4, 0,
            c1, 0, 0, c2, c3, 0, 0, c4,
            c2, 0, 0, c5, c6, 0, 0, c7,
            0, c2, c5, 0, 0, c6, c7, 0,
            0, c3, c6, 0, 0, c8, c9, 0,
            c3, 0, 0, c6, c8, 0, 0, c9,
            c4, 0, 0, c7, c9, 0, 0, c10,
            0, c4, c7, 0, 0, c9, c10, 0;
  out.M3 /= a0;
  return out;
}

QuadraticExponent general_pipeline(const HeraldConfig& cfg) {
  cfg.validate();
  const auto& u = ancilla_names();
  const GaussianState tmsv = apply_symplectic(GaussianState::vacuum(2), two_mode_squeezer_symplectic(cfg.r));
  QuadraticExponent form = gaussian_char_exponent(tmsv, {"tau1", "sigma1", "tau2", "sigma2"});
  form = form * fock_generating_exponent("tau3", "sigma3", u[0], u[1]);
  form = form * fock_generating_exponent("tau4", "sigma4", u[2], u[3]);

  // Modes in phase-space order: A1, A2, F1, F2.
  const SymplecticMatrix mixing =
      beam_splitter_symplectic(cfg.T1).embed(4, {0, 2}) * beam_splitter_symplectic(cfg.T2).embed(4, {1, 3});
  form = substitute_linear(form, kModeNames, kModeNames, mixing.inverse().matrix());

  if (!cfg.lossless()) {
    // Modes F1, F2, L1, L2; the loss ports start in vacuum and are traced out.
    std::vector<std::string> names = kDetectedNames;
    names.insert(names.end(), kLossNames.begin(), kLossNames.end());
    form = form * gaussian_char_exponent(GaussianState::vacuum(2), kLossNames);
    const SymplecticMatrix loss = beam_splitter_symplectic(cfg.eta1).embed(4, {0, 2}) *
                                  beam_splitter_symplectic(cfg.eta2).embed(4, {1, 3});
    form = substitute_linear(form, names, names, loss.inverse().matrix());
    const std::vector<Complex> zeros(kLossNames.size(), Complex{0.0, 0.0});
    form = fix_variables(form, kLossNames, zeros);
  }

  form = form * fock_generating_exponent("tau3", "sigma3", u[4], u[5], -1);
  form = form * fock_generating_exponent("tau4", "sigma4", u[6], u[7], -1);
  form.add_log_prefactor(-2.0 * std::log(2.0 * std::numbers::pi));
  form = gaussian_integrate(form, kDetectedNames);
  return restrict_to(form, canonical_order());
}

ResourceExponent resource_exponent(const QuadraticExponent& form, const HeraldConfig& cfg) {
  const QuadraticExponent ordered = restrict_to(form, canonical_order());
  const Eigen::MatrixXcd& a = ordered.quadratic();
  ResourceExponent out;
  out.config = cfg;
  out.M1 = a.topLeftCorner(4, 4);
  out.M2 = 2.0 * a.bottomLeftCorner(8, 4);
  out.M3 = a.bottomRightCorner(8, 8);
  out.prefactor_log = ordered.log_prefactor() + ordered.constant();
  return out;
}

bool structurally_zero(const HeraldConfig& cfg) {
  const int m[] = {cfg.m1, cfg.m2};
  const int n[] = {cfg.n1, cfg.n2};
  const double T[] = {cfg.T1, cfg.T2};
  const double eta[] = {cfg.eta1, cfg.eta2};
  for (int i = 0; i < 2; ++i) {
    if (cfg.r == 0.0 && n[i] > m[i]) return true;
    if (T[i] == 1.0 && (eta[i] == 1.0 ? n[i] != m[i] : n[i] > m[i])) return true;
  }
  return false;
}

double success_probability(const HeraldConfig& cfg) {
  cfg.validate();
  if (structurally_zero(cfg)) return 0.0;
  const QuadraticExponent form = general_pipeline(cfg);
  const std::vector<std::string> u(ancilla_names().begin(), ancilla_names().end());
  const Complex d = derivative_at_zero(restrict_to(form, u), herald_orders(cfg));
  return std::real(d) * herald_scale(cfg);
}

double closed_form_probability(const HeraldConfig& cfg) {
  const ResourceExponent res = closed_form_matrices(cfg);
  if (structurally_zero(cfg)) return 0.0;
  return std::real(herald_moment(res.M3, cfg) * std::exp(res.prefactor_log));
}

HeraldedState::HeraldedState(const HeraldConfig& cfg)
    : cfg_(cfg),
      form_(general_pipeline(cfg)),
      scale_(herald_scale(cfg)),
      kernel_(Eigen::MatrixXcd(0, 0), {}) {
  std::vector<Eigen::Index> active;
  kernel_ = make_kernel(form_, cfg_, active);
  const Eigen::MatrixXcd& a = form_.quadratic();
  const Eigen::VectorXcd& b = form_.linear();
  lambda_quad_ = a.topLeftCorner(4, 4);
  lambda_lin_ = b.head(4);
  log_const_ = form_.log_prefactor() + form_.constant();
  const auto n = static_cast<Eigen::Index>(active.size());
  coupling_.resize(n, 4);
  ancilla_lin_.resize(n);
  for (Eigen::Index p = 0; p < n; ++p) {
    coupling_.row(p) = 2.0 * a.row(active[p]).head(4);
    ancilla_lin_(p) = b(active[p]);
  }
  if (!structurally_zero(cfg_))
    probability_ = std::real(kernel_.evaluate(ancilla_lin_, log_const_)) * scale_;
}

Complex HeraldedState::unnormalized_char(double tau1, double sigma1, double tau2, double sigma2) const {
  const Eigen::Vector4cd lam(tau1, sigma1, tau2, sigma2);
  const Complex constant = log_const_ + (lam.transpose() * lambda_quad_ * lam)(0, 0) + (lambda_lin_.transpose() * lam)(0, 0);
  const Eigen::VectorXcd linear = ancilla_lin_ + coupling_ * lam;
  return kernel_.evaluate(linear, constant) * scale_;
}

Complex HeraldedState::char_value(double tau1, double sigma1, double tau2, double sigma2) const {
  if (zero_probability())
    throw ZeroProbabilityError("herald pattern has zero probability; the conditional state is undefined");
  return unnormalized_char(tau1, sigma1, tau2, sigma2) / probability_;
}

Complex ng_char(const HeraldConfig& cfg, double tau1, double sigma1, double tau2, double sigma2) {
  return HeraldedState(cfg).char_value(tau1, sigma1, tau2, sigma2);
}

double fock_preparation_probability(int m, double r) {
  if (m < 0) throw DomainError("photon number must be non-negative");
  if (r < 0.0) throw DomainError("source squeezing must be non-negative");
  const double lam = std::tanh(r);
  return (1.0 - lam * lam) * std::pow(lam, 2 * m);
}

double effective_probability(const HeraldConfig& cfg, double source_r) {
  // Vacuum ancillas need no heralded source.
  const double p1 = cfg.m1 == 0 ? 1.0 : fock_preparation_probability(cfg.m1, source_r);
  const double p2 = cfg.m2 == 0 ? 1.0 : fock_preparation_probability(cfg.m2, source_r);
  return p1 * p2 * success_probability(cfg);
}

}  // namespace ngtele
