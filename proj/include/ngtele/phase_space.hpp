#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ngtele/quadratic_form.hpp"

namespace ngtele {

/// Phase-space test variables (tau_1, sigma_1, ..., tau_n, sigma_n).
using PhasePoint = Eigen::VectorXd;

/// Block-diagonal symplectic form  Omega = (+)_n [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int modes);

class SymplecticMatrix {
 public:
  /// Throws DimensionError for odd/non-square input and DomainError when S Omega S^T != Omega.
  explicit SymplecticMatrix(Eigen::MatrixXd entries);
  static SymplecticMatrix identity(int modes);

  [[nodiscard]] const Eigen::MatrixXd& matrix() const { return s_; }
  [[nodiscard]] int modes() const { return static_cast<int>(s_.rows() / 2); }
  /// S^{-1} = Omega S^T Omega^T, exact for symplectic S.
  [[nodiscard]] SymplecticMatrix inverse() const;
  /// Embeds this k-mode operation into an n-mode identity, acting on the listed modes.
  [[nodiscard]] SymplecticMatrix embed(int total_modes, const std::vector<int>& on_modes) const;

  friend SymplecticMatrix operator*(const SymplecticMatrix& lhs, const SymplecticMatrix& rhs);

 private:
  Eigen::MatrixXd s_;
};

/// Displacement d and covariance V of an n-mode Gaussian state (vacuum V = 1/2).
class GaussianState {
 public:
  /// Validates symmetry and the uncertainty relation V + (i/2) Omega >= 0.
  GaussianState(Eigen::VectorXd d, Eigen::MatrixXd v);
  static GaussianState vacuum(int modes);
  static GaussianState coherent(double d_x, double d_p);

  [[nodiscard]] const Eigen::VectorXd& displacement() const { return d_; }
  [[nodiscard]] const Eigen::MatrixXd& covariance() const { return v_; }
  [[nodiscard]] int modes() const { return static_cast<int>(d_.size() / 2); }

 private:
  Eigen::VectorXd d_;
  Eigen::MatrixXd v_;
};

SymplecticMatrix beam_splitter_symplectic(double transmissivity);
SymplecticMatrix two_mode_squeezer_symplectic(double r);

GaussianState apply_symplectic(const GaussianState& state, const SymplecticMatrix& s);

/// chi(Lambda) = exp[-1/2 Lambda^T (Omega V Omega^T) Lambda - i (Omega d)^T Lambda].
std::complex<double> gaussian_char(const GaussianState& state, const PhasePoint& lambda);
std::complex<double> coherent_char(double d_x, double d_p, double tau, double sigma);
double squeezed_vacuum_char(double epsilon, double tau, double sigma);

/// Laguerre polynomial L_n(x) by the three-term recurrence.
double laguerre(int n, double x);
/// exp(-(tau^2 + sigma^2)/4) L_n((tau^2 + sigma^2)/2).
double fock_char(int n, double tau, double sigma);
/// Same value, extracted from the generating form through derivative_at_zero.
double fock_char_generating(int n, double tau, double sigma);

/// Characteristic function of a Gaussian state as a quadratic exponent over
/// the given names (tau_1, sigma_1, ...).
QuadraticExponent gaussian_char_exponent(const GaussianState& state, const std::vector<std::string>& names);

/// Generating form of the Fock characteristic function:
///   exp(-(tau^2 + sigma^2)/4 + 2 s t + sign (s (tau + i sigma) - t (tau - i sigma))).
/// chi_n = 1/(2^n n!) d^n/ds^n d^n/dt^n at s = t = 0. sign = -1 yields chi_n(-Lambda).
QuadraticExponent fock_generating_exponent(const std::string& tau, const std::string& sigma, const std::string& s,
                                           const std::string& t, int sign = 1);

}  // namespace ngtele
