#include "ngtele/phase_space.hpp"

#include <cmath>
#include <string>

#include "ngtele/errors.hpp"

namespace ngtele {

namespace {

constexpr double kSymplecticTol = 1e-12;
constexpr double kPhysicalityTol = 1e-10;

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) throw DomainError(std::string(what) + " must be finite");
}

}  // namespace

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

SymplecticMatrix::SymplecticMatrix(Eigen::MatrixXd entries) : s_(std::move(entries)) {
  if (s_.rows() != s_.cols() || s_.rows() % 2 != 0)
    throw DimensionError("symplectic matrix must be square with even dimension");
  const Eigen::MatrixXd omega = symplectic_form(modes());
  const double scale = std::max(1.0, s_.cwiseAbs().maxCoeff());
  const double err = (s_ * omega * s_.transpose() - omega).cwiseAbs().maxCoeff();
  if (err > kSymplecticTol * scale * scale)
    throw DomainError("matrix is not symplectic (max |S Omega S^T - Omega| = " + std::to_string(err) + ")");
}

SymplecticMatrix SymplecticMatrix::identity(int modes) {
  return SymplecticMatrix(Eigen::MatrixXd::Identity(2 * modes, 2 * modes));
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  const Eigen::MatrixXd omega = symplectic_form(modes());
  return SymplecticMatrix(omega * s_.transpose() * omega.transpose());
}

SymplecticMatrix SymplecticMatrix::embed(int total_modes, const std::vector<int>& on_modes) const {
  if (static_cast<int>(on_modes.size()) != modes())
    throw DimensionError("embed: expected " + std::to_string(modes()) + " target modes");
  Eigen::MatrixXd big = Eigen::MatrixXd::Identity(2 * total_modes, 2 * total_modes);
  for (int a = 0; a < modes(); ++a) {
    if (on_modes[a] < 0 || on_modes[a] >= total_modes) throw DimensionError("embed: mode index out of range");
    for (int b = 0; b < modes(); ++b)
      big.block(2 * on_modes[a], 2 * on_modes[b], 2, 2) = s_.block(2 * a, 2 * b, 2, 2);
  }
  return SymplecticMatrix(std::move(big));
}

SymplecticMatrix operator*(const SymplecticMatrix& lhs, const SymplecticMatrix& rhs) {
  if (lhs.s_.cols() != rhs.s_.rows()) throw DimensionError("symplectic product: dimension mismatch");
  return SymplecticMatrix(lhs.s_ * rhs.s_);
}

GaussianState::GaussianState(Eigen::VectorXd d, Eigen::MatrixXd v) : d_(std::move(d)), v_(std::move(v)) {
  if (d_.size() % 2 != 0 || v_.rows() != d_.size() || v_.cols() != d_.size())
    throw DimensionError("Gaussian state needs a 2n displacement and a 2n x 2n covariance");
  if ((v_ - v_.transpose()).cwiseAbs().maxCoeff() > kSymplecticTol * std::max(1.0, v_.cwiseAbs().maxCoeff()))
    throw DomainError("covariance matrix is not symmetric");
  const Eigen::MatrixXcd h = v_.cast<std::complex<double>>() +
                             std::complex<double>(0.0, 0.5) * symplectic_form(modes()).cast<std::complex<double>>();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kPhysicalityTol)
    throw DomainError("covariance violates the uncertainty relation (min eigenvalue " +
                      std::to_string(eig.eigenvalues().minCoeff()) + ")");
}

GaussianState GaussianState::vacuum(int modes) {
  return {Eigen::VectorXd::Zero(2 * modes), 0.5 * Eigen::MatrixXd::Identity(2 * modes, 2 * modes)};
}

GaussianState GaussianState::coherent(double d_x, double d_p) {
  return {Eigen::Vector2d(d_x, d_p), 0.5 * Eigen::MatrixXd::Identity(2, 2)};
}

SymplecticMatrix beam_splitter_symplectic(double transmissivity) {
  if (!(transmissivity > 0.0 && transmissivity <= 1.0))
    throw DomainError("beam splitter transmissivity must lie in (0, 1], got " + std::to_string(transmissivity));
  const double t = std::sqrt(transmissivity);
  const double r = std::sqrt(1.0 - transmissivity);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(4, 4);
  b.block(0, 0, 2, 2) = t * Eigen::Matrix2d::Identity();
  b.block(0, 2, 2, 2) = r * Eigen::Matrix2d::Identity();
  b.block(2, 0, 2, 2) = -r * Eigen::Matrix2d::Identity();
  b.block(2, 2, 2, 2) = t * Eigen::Matrix2d::Identity();
  return SymplecticMatrix(std::move(b));
}

SymplecticMatrix two_mode_squeezer_symplectic(double r) {
  require_finite(r, "squeezing r");
  const Eigen::Matrix2d z = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(4, 4);
  s.block(0, 0, 2, 2) = std::cosh(r) * Eigen::Matrix2d::Identity();
  s.block(0, 2, 2, 2) = std::sinh(r) * z;
  s.block(2, 0, 2, 2) = std::sinh(r) * z;
  s.block(2, 2, 2, 2) = std::cosh(r) * Eigen::Matrix2d::Identity();
  return SymplecticMatrix(std::move(s));
}

GaussianState apply_symplectic(const GaussianState& state, const SymplecticMatrix& s) {
  if (state.modes() != s.modes())
    throw DimensionError("apply_symplectic: state has " + std::to_string(state.modes()) + " modes, matrix acts on " +
                         std::to_string(s.modes()));
  const Eigen::MatrixXd& m = s.matrix();
  Eigen::MatrixXd v = m * state.covariance() * m.transpose();
  v = 0.5 * (v + v.transpose()).eval();
  return {m * state.displacement(), std::move(v)};
}

std::complex<double> gaussian_char(const GaussianState& state, const PhasePoint& lambda) {
  if (lambda.size() != state.displacement().size())
    throw DimensionError("gaussian_char: phase point has " + std::to_string(lambda.size()) +
                         " components, state needs " + std::to_string(state.displacement().size()));
  const Eigen::MatrixXd omega = symplectic_form(state.modes());
  const Eigen::MatrixXd kernel = omega * state.covariance() * omega.transpose();
  const double quad = lambda.dot(kernel * lambda);
  const double lin = (omega * state.displacement()).dot(lambda);
  return std::exp(std::complex<double>(-0.5 * quad, -lin));
}

std::complex<double> coherent_char(double d_x, double d_p, double tau, double sigma) {
  return std::exp(std::complex<double>(-0.25 * (tau * tau + sigma * sigma), -(tau * d_p - sigma * d_x)));
}

double squeezed_vacuum_char(double epsilon, double tau, double sigma) {
  return std::exp(-0.25 * (tau * tau * std::exp(2.0 * epsilon) + sigma * sigma * std::exp(-2.0 * epsilon)));
}

double laguerre(int n, double x) {
  if (n < 0) throw DomainError("Laguerre degree must be non-negative");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double fock_char(int n, double tau, double sigma) {
  if (n < 0) throw DomainError("photon number must be non-negative, got " + std::to_string(n));
  const double rho2 = tau * tau + sigma * sigma;
  return std::exp(-0.25 * rho2) * laguerre(n, 0.5 * rho2);
}

double fock_char_generating(int n, double tau, double sigma) {
  if (n < 0) throw DomainError("photon number must be non-negative, got " + std::to_string(n));
  QuadraticExponent form = fock_generating_exponent("tau", "sigma", "s", "t");
  const std::string fixed[] = {"tau", "sigma"};
  const Complex values[] = {tau, sigma};
  form = fix_variables(form, fixed, values);
  const Complex d = derivative_at_zero(form, MultiIndex{{"s", n}, {"t", n}}, 2 * n);
  return std::real(d) / (std::pow(2.0, n) * std::tgamma(n + 1.0));
}

QuadraticExponent gaussian_char_exponent(const GaussianState& state, const std::vector<std::string>& names) {
  if (static_cast<Eigen::Index>(names.size()) != state.displacement().size())
    throw DimensionError("gaussian_char_exponent: need one name per phase-space component");
  QuadraticExponent form(names);
  const Eigen::MatrixXd omega = symplectic_form(state.modes());
  const Eigen::MatrixXd kernel = omega * state.covariance() * omega.transpose();
  const Eigen::VectorXd lin = omega * state.displacement();
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    form.add_linear(names[i], Complex(0.0, -lin(ii)));
    for (std::size_t j = 0; j < names.size(); ++j)
      if (i <= j) form.add_product(names[i], names[j], (i == j ? -0.5 : -1.0) * kernel(ii, static_cast<Eigen::Index>(j)));
  }
  return form;
}

QuadraticExponent fock_generating_exponent(const std::string& tau, const std::string& sigma, const std::string& s,
                                           const std::string& t, int sign) {
  QuadraticExponent form({tau, sigma, s, t});
  const double sg = sign >= 0 ? 1.0 : -1.0;
  const Complex i(0.0, 1.0);
  form.add_product(tau, tau, -0.25);
  form.add_product(sigma, sigma, -0.25);
  form.add_product(s, t, 2.0);
  form.add_product(s, tau, sg);
  form.add_product(s, sigma, sg * i);
  form.add_product(t, tau, -sg);
  form.add_product(t, sigma, sg * i);
  return form;
}

}  // namespace ngtele
