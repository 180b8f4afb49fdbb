#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ngtele {

using Complex = std::complex<double>;

/// Complex quadratic exponent  prefactor * exp(c + b^T x + x^T A x)  over named variables.
///
/// The prefactor is kept as a logarithm so that long chains of Gaussian
/// integrals do not underflow. A is always stored symmetric; the cross term
/// x_i x_j (i != j) therefore carries the coefficient 2 A_ij.
class QuadraticExponent {
 public:
  QuadraticExponent() = default;
  explicit QuadraticExponent(std::vector<std::string> vars);
  /// Takes the symmetric part of `a`.
  static QuadraticExponent from_coefficients(std::vector<std::string> vars, const Eigen::MatrixXcd& a,
                                             const Eigen::VectorXcd& b, Complex c = {},
                                             Complex log_prefactor = {});

  [[nodiscard]] const std::vector<std::string>& vars() const { return vars_; }
  [[nodiscard]] std::size_t size() const { return vars_.size(); }
  [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;
  /// Throws std::out_of_range for unknown names.
  [[nodiscard]] std::size_t index_of(std::string_view name) const;
  [[nodiscard]] bool contains(std::string_view name) const { return find(name).has_value(); }

  [[nodiscard]] const Eigen::MatrixXcd& quadratic() const { return a_; }
  [[nodiscard]] const Eigen::VectorXcd& linear() const { return b_; }
  [[nodiscard]] Complex constant() const { return c_; }
  [[nodiscard]] Complex log_prefactor() const { return log_prefactor_; }

  /// Adds coef * x_i * x_j to the exponent (coef * x_i^2 when the names coincide).
  void add_product(std::string_view xi, std::string_view xj, Complex coef);
  void add_linear(std::string_view x, Complex coef);
  void add_constant(Complex value) { c_ += value; }
  void add_log_prefactor(Complex value) { log_prefactor_ += value; }

  /// Appends variables with zero coefficients; existing names are left alone.
  void extend(std::span<const std::string> names);

  /// prefactor * exp(c), i.e. the value at x = 0.
  [[nodiscard]] Complex value_at_zero() const;
  /// Full evaluation at a point given in vars() order.
  [[nodiscard]] Complex evaluate(const Eigen::VectorXcd& x) const;

  /// Coefficient-level equality within an absolute tolerance (variable order must match).
  [[nodiscard]] bool approx_equal(const QuadraticExponent& other, double tol) const;

  friend QuadraticExponent operator*(const QuadraticExponent& lhs, const QuadraticExponent& rhs);

 private:
  std::vector<std::string> vars_;
  Eigen::MatrixXcd a_;
  Eigen::VectorXcd b_;
  Complex c_{0.0, 0.0};
  Complex log_prefactor_{0.0, 0.0};

  friend QuadraticExponent gaussian_integrate(const QuadraticExponent&, std::span<const std::string>);
  friend QuadraticExponent substitute_linear(const QuadraticExponent&, std::span<const std::string>,
                                             std::span<const std::string>, const Eigen::MatrixXd&);
  friend QuadraticExponent fix_variables(const QuadraticExponent&, std::span<const std::string>,
                                         std::span<const Complex>);
  friend QuadraticExponent restrict_to(const QuadraticExponent&, std::span<const std::string>);
};

/// Derivative orders per variable; variables not listed have order zero.
struct MultiIndex {
  std::map<std::string, int, std::less<>> orders;

  MultiIndex() = default;
  MultiIndex(std::initializer_list<std::pair<const std::string, int>> init) : orders(init) {}

  [[nodiscard]] int total() const;
  [[nodiscard]] int order(std::string_view name) const;
};

inline constexpr int kDefaultOrderCap = 16;

/// Integrates out the real variables `vars_out` one at a time:
///   \int exp(a x^2 + L x) dx = sqrt(pi / -a) exp(-L^2 / (4a)),
/// where L may depend on the remaining variables. Throws DivergenceError when
/// Re(-a) <= 0 at any step.
QuadraticExponent gaussian_integrate(const QuadraticExponent& form, std::span<const std::string> vars_out);

/// Replaces the variables `targets` by `map * y`, where y runs over `sources`.
/// Source names may be new, may coincide with the targets (in-place change of
/// variables) or with untouched variables (which are then shared). A map with
/// zero columns sets the targets to zero.
QuadraticExponent substitute_linear(const QuadraticExponent& form, std::span<const std::string> targets,
                                    std::span<const std::string> sources, const Eigen::MatrixXd& map);

/// Plugs numerical values into the named variables and removes them.
QuadraticExponent fix_variables(const QuadraticExponent& form, std::span<const std::string> names,
                                std::span<const Complex> values);

/// Keeps only the named variables (in the given order); all others are set to zero.
QuadraticExponent restrict_to(const QuadraticExponent& form, std::span<const std::string> names);

/// Exact mixed partial derivative of prefactor * exp(c + b^T x + x^T A x) at x = 0.
///
/// Builds the Taylor coefficient table of exp(Q) over the box 0 <= j <= k using
///   d/dx_i e^Q = (b_i + 2 (A x)_i) e^Q   =>   j_i E_j = b_i E_{j-e_i} + 2 sum_l A_il E_{j-e_i-e_l},
/// and returns k! E_k times the prefactor.
Complex derivative_at_zero(const QuadraticExponent& form, const MultiIndex& k, int order_cap = kDefaultOrderCap);

/// Repeated derivative extraction for a fixed quadratic block and a varying
/// linear/constant part. Variables are fixed at construction.
class DerivativeKernel {
 public:
  DerivativeKernel(Eigen::MatrixXcd quadratic, std::vector<int> orders, int order_cap = kDefaultOrderCap);

  /// d^k/dx^k exp(constant + linear^T x + x^T A x) at 0 (no prefactor applied).
  [[nodiscard]] Complex evaluate(const Eigen::VectorXcd& linear, Complex constant) const;
  [[nodiscard]] std::size_t table_size() const { return table_size_; }

 private:
  Eigen::MatrixXcd a_;
  std::vector<int> orders_;
  std::vector<std::size_t> strides_;
  std::size_t table_size_ = 1;
  double factorial_product_ = 1.0;
};

}  // namespace ngtele
