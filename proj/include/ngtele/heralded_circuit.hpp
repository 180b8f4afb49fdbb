#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ngtele/herald_config.hpp"
#include "ngtele/quadratic_form.hpp"

namespace ngtele {

/// Exponent  Lambda^T M1 Lambda + u^T M2 Lambda + u^T M3 u  with Lambda = (tau1, sigma1, tau2, sigma2)
/// and u = (u1, v1, u2, v2, u1', v1', u2', v2').
struct ResourceExponent {
  Eigen::Matrix4cd M1;
  Eigen::Matrix<std::complex<double>, 8, 4> M2;
  Eigen::Matrix<std::complex<double>, 8, 8> M3;
  Complex prefactor_log{0.0, 0.0};
  HeraldConfig config;
};

/// Variable names used by every resource form.
const std::array<std::string, 4>& lambda_names();
const std::array<std::string, 8>& ancilla_names();

/// Derivative orders of the heralding operator for a configuration.
MultiIndex herald_orders(const HeraldConfig& cfg);
/// 2^{-(m1+m2+n1+n2)} / (m1! m2! n1! n2!).
double herald_scale(const HeraldConfig& cfg);

/// herald_scale(cfg) times the herald derivative of exp(u^T M u) at u = 0.
Complex herald_moment(const Eigen::Matrix<std::complex<double>, 8, 8>& m, const HeraldConfig& cfg);

/// Entries written directly from the closed-form expressions; requires eta1 = eta2 = 1.
ResourceExponent closed_form_matrices(const HeraldConfig& cfg);

/// Builds the unnormalized resource exponent by composing the elementary
/// characteristic functions, beam-splitter substitutions, optional loss and the
/// Gaussian integrals over the detected modes. Variables: lambda_names() then ancilla_names().
QuadraticExponent general_pipeline(const HeraldConfig& cfg);

/// Splits a pipeline form into (M1, M2, M3, prefactor).
ResourceExponent resource_exponent(const QuadraticExponent& form, const HeraldConfig& cfg);

/// True when the herald pattern cannot occur (e.g. n_i > m_i at r = 0, or n_i != m_i at T_i = 1 without loss).
bool structurally_zero(const HeraldConfig& cfg);

double success_probability(const HeraldConfig& cfg);
/// Same probability from the closed-form M3 (requires unit efficiency).
double closed_form_probability(const HeraldConfig& cfg);

/// Normalized resource characteristic function with cached pipeline data.
class HeraldedState {
 public:
  explicit HeraldedState(const HeraldConfig& cfg);

  [[nodiscard]] const HeraldConfig& config() const { return cfg_; }
  [[nodiscard]] double probability() const { return probability_; }
  [[nodiscard]] bool zero_probability() const { return probability_ == 0.0; }
  [[nodiscard]] const QuadraticExponent& form() const { return form_; }

  /// Unnormalized value (P times the normalized characteristic function).
  [[nodiscard]] Complex unnormalized_char(double tau1, double sigma1, double tau2, double sigma2) const;
  /// Throws ZeroProbabilityError when the herald never fires.
  [[nodiscard]] Complex char_value(double tau1, double sigma1, double tau2, double sigma2) const;

 private:
  HeraldConfig cfg_;
  QuadraticExponent form_;
  double probability_ = 0.0;
  double scale_ = 1.0;
  Complex log_const_{0.0, 0.0};
  Eigen::Matrix4cd lambda_quad_;
  Eigen::Vector4cd lambda_lin_;
  Eigen::MatrixXcd coupling_;
  Eigen::VectorXcd ancilla_lin_;
  DerivativeKernel kernel_;
};

Complex ng_char(const HeraldConfig& cfg, double tau1, double sigma1, double tau2, double sigma2);

/// (1 - lambda^2) lambda^{2m}, lambda = tanh r.
double fock_preparation_probability(int m, double r);
/// P_{|m1>} P_{|m2>} times the heralding probability; vacuum ancillas contribute a factor 1.
double effective_probability(const HeraldConfig& cfg, double source_r);

}  // namespace ngtele
