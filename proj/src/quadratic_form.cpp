#include "ngtele/quadratic_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

#include "ngtele/errors.hpp"

namespace ngtele {

namespace {

constexpr double kPruneBelow = 1e-300;

std::vector<std::size_t> indices_of(const QuadraticExponent& form, std::span<const std::string> names) {
  std::vector<std::size_t> out;
  out.reserve(names.size());
  for (const auto& name : names) {
    auto idx = form.find(name);
    if (!idx) throw DimensionError("unknown variable '" + name + "'");
    if (std::find(out.begin(), out.end(), *idx) != out.end())
      throw DimensionError("variable '" + name + "' listed twice");
    out.push_back(*idx);
  }
  return out;
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& removed) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(removed.begin(), removed.end(), i) == removed.end()) keep.push_back(i);
  return keep;
}

}  // namespace

QuadraticExponent::QuadraticExponent(std::vector<std::string> vars) : vars_(std::move(vars)) {
  std::unordered_set<std::string> seen;
  for (const auto& v : vars_)
    if (!seen.insert(v).second) throw DimensionError("duplicate variable '" + v + "'");
  const auto n = static_cast<Eigen::Index>(vars_.size());
  a_ = Eigen::MatrixXcd::Zero(n, n);
  b_ = Eigen::VectorXcd::Zero(n);
}

QuadraticExponent QuadraticExponent::from_coefficients(std::vector<std::string> vars, const Eigen::MatrixXcd& a,
                                                        const Eigen::VectorXcd& b, Complex c, Complex log_prefactor) {
  QuadraticExponent out(std::move(vars));
  const auto n = static_cast<Eigen::Index>(out.vars_.size());
  if (a.rows() != n || a.cols() != n || b.size() != n)
    throw DimensionError("from_coefficients: coefficient sizes do not match " + std::to_string(n) + " variables");
  out.a_ = 0.5 * (a + a.transpose());
  out.b_ = b;
  out.c_ = c;
  out.log_prefactor_ = log_prefactor;
  return out;
}

std::optional<std::size_t> QuadraticExponent::find(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

std::size_t QuadraticExponent::index_of(std::string_view name) const {
  auto idx = find(name);
  if (!idx) throw std::out_of_range("unknown variable '" + std::string(name) + "'");
  return *idx;
}

void QuadraticExponent::add_product(std::string_view xi, std::string_view xj, Complex coef) {
  const auto i = static_cast<Eigen::Index>(index_of(xi));
  const auto j = static_cast<Eigen::Index>(index_of(xj));
  if (i == j) {
    a_(i, i) += coef;
  } else {
    a_(i, j) += 0.5 * coef;
    a_(j, i) += 0.5 * coef;
  }
}

void QuadraticExponent::add_linear(std::string_view x, Complex coef) {
  b_(static_cast<Eigen::Index>(index_of(x))) += coef;
}

void QuadraticExponent::extend(std::span<const std::string> names) {
  std::vector<std::string> fresh;
  for (const auto& name : names)
    if (!contains(name) && std::find(fresh.begin(), fresh.end(), name) == fresh.end()) fresh.push_back(name);
  if (fresh.empty()) return;
  const auto old_n = static_cast<Eigen::Index>(vars_.size());
  const auto n = old_n + static_cast<Eigen::Index>(fresh.size());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
  a.topLeftCorner(old_n, old_n) = a_;
  b.head(old_n) = b_;
  a_ = std::move(a);
  b_ = std::move(b);
  vars_.insert(vars_.end(), fresh.begin(), fresh.end());
}

Complex QuadraticExponent::value_at_zero() const { return std::exp(log_prefactor_ + c_); }

Complex QuadraticExponent::evaluate(const Eigen::VectorXcd& x) const {
  if (x.size() != static_cast<Eigen::Index>(vars_.size()))
    throw DimensionError("evaluate: point has " + std::to_string(x.size()) + " entries, form has " +
                         std::to_string(vars_.size()) + " variables");
  const Complex q = (x.transpose() * a_ * x)(0, 0) + (b_.transpose() * x)(0, 0);
  return std::exp(log_prefactor_ + c_ + q);
}

bool QuadraticExponent::approx_equal(const QuadraticExponent& other, double tol) const {
  if (vars_ != other.vars_) return false;
  if (vars_.empty()) return std::abs(value_at_zero() - other.value_at_zero()) <= tol;
  return (a_ - other.a_).cwiseAbs().maxCoeff() <= tol && (b_ - other.b_).cwiseAbs().maxCoeff() <= tol &&
         std::abs(value_at_zero() - other.value_at_zero()) <= tol;
}

QuadraticExponent operator*(const QuadraticExponent& lhs, const QuadraticExponent& rhs) {
  QuadraticExponent out = lhs;
  out.extend(rhs.vars_);
  std::vector<Eigen::Index> map(rhs.vars_.size());
  for (std::size_t i = 0; i < rhs.vars_.size(); ++i) map[i] = static_cast<Eigen::Index>(out.index_of(rhs.vars_[i]));
  for (std::size_t i = 0; i < map.size(); ++i) {
    out.b_(map[i]) += rhs.b_(static_cast<Eigen::Index>(i));
    for (std::size_t j = 0; j < map.size(); ++j)
      out.a_(map[i], map[j]) += rhs.a_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  out.c_ += rhs.c_;
  out.log_prefactor_ += rhs.log_prefactor_;
  return out;
}

int MultiIndex::total() const {
  int sum = 0;
  for (const auto& [name, k] : orders) sum += k;
  return sum;
}

int MultiIndex::order(std::string_view name) const {
  auto it = orders.find(name);
  return it == orders.end() ? 0 : it->second;
}

QuadraticExponent gaussian_integrate(const QuadraticExponent& form, std::span<const std::string> vars_out) {
  (void)indices_of(form, vars_out);
  QuadraticExponent cur = form;
  for (const auto& name : vars_out) {
    const auto x = static_cast<Eigen::Index>(cur.index_of(name));
    const Complex a = cur.a_(x, x);
    if (!(std::real(-a) > 0.0))
      throw DivergenceError("Gaussian integral over '" + name + "' diverges: Re(-A[" + name + "," + name +
                            "]) = " + std::to_string(std::real(-a)));
    const auto n = static_cast<Eigen::Index>(cur.vars_.size());
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < n; ++i)
      if (i != x) keep.push_back(i);
    QuadraticExponent next;
    next.vars_.reserve(keep.size());
    for (auto i : keep) next.vars_.push_back(cur.vars_[static_cast<std::size_t>(i)]);
    const auto m = static_cast<Eigen::Index>(keep.size());
    next.a_.resize(m, m);
    next.b_.resize(m);
    const Complex bx = cur.b_(x);
    for (Eigen::Index p = 0; p < m; ++p) {
      const Complex ap = cur.a_(keep[p], x);
      next.b_(p) = cur.b_(keep[p]) - bx * ap / a;
      for (Eigen::Index q = 0; q < m; ++q) next.a_(p, q) = cur.a_(keep[p], keep[q]) - ap * cur.a_(x, keep[q]) / a;
    }
    next.c_ = cur.c_ - bx * bx / (4.0 * a);
    next.log_prefactor_ = cur.log_prefactor_ + 0.5 * std::log(Complex(std::numbers::pi, 0.0) / (-a));
    cur = std::move(next);
  }
  return cur;
}

QuadraticExponent substitute_linear(const QuadraticExponent& form, std::span<const std::string> targets,
                                    std::span<const std::string> sources, const Eigen::MatrixXd& map) {
  if (map.rows() != static_cast<Eigen::Index>(targets.size()) ||
      map.cols() != static_cast<Eigen::Index>(sources.size()))
    throw DimensionError("substitute_linear: map is " + std::to_string(map.rows()) + "x" +
                         std::to_string(map.cols()) + ", expected " + std::to_string(targets.size()) + "x" +
                         std::to_string(sources.size()));
  const auto target_idx = indices_of(form, targets);
  const auto keep = complement(form.vars_.size(), target_idx);

  std::vector<std::string> new_vars;
  for (auto i : keep) new_vars.push_back(form.vars_[i]);
  std::vector<Eigen::Index> source_col(sources.size());
  for (std::size_t s = 0; s < sources.size(); ++s) {
    auto it = std::find(new_vars.begin(), new_vars.end(), sources[s]);
    if (it == new_vars.end()) {
      new_vars.push_back(sources[s]);
      it = new_vars.end() - 1;
    }
    source_col[s] = static_cast<Eigen::Index>(it - new_vars.begin());
  }

  const auto old_n = static_cast<Eigen::Index>(form.vars_.size());
  const auto new_n = static_cast<Eigen::Index>(new_vars.size());
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(old_n, new_n);
  for (std::size_t k = 0; k < keep.size(); ++k)
    p(static_cast<Eigen::Index>(keep[k]), static_cast<Eigen::Index>(k)) = 1.0;
  for (std::size_t t = 0; t < target_idx.size(); ++t)
    for (std::size_t s = 0; s < sources.size(); ++s)
      p(static_cast<Eigen::Index>(target_idx[t]), source_col[s]) += map(static_cast<Eigen::Index>(t),
                                                                         static_cast<Eigen::Index>(s));

  QuadraticExponent out;
  out.vars_ = std::move(new_vars);
  out.a_ = p.transpose() * form.a_ * p;
  out.a_ = 0.5 * (out.a_ + out.a_.transpose()).eval();
  out.b_ = p.transpose() * form.b_;
  out.c_ = form.c_;
  out.log_prefactor_ = form.log_prefactor_;
  return out;
}

QuadraticExponent fix_variables(const QuadraticExponent& form, std::span<const std::string> names,
                                std::span<const Complex> values) {
  if (names.size() != values.size())
    throw DimensionError("fix_variables: " + std::to_string(names.size()) + " names but " +
                         std::to_string(values.size()) + " values");
  const auto fixed = indices_of(form, names);
  const auto keep = complement(form.vars_.size(), fixed);
  const auto n = static_cast<Eigen::Index>(form.vars_.size());
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
  for (std::size_t i = 0; i < fixed.size(); ++i) v(static_cast<Eigen::Index>(fixed[i])) = values[i];

  QuadraticExponent out;
  const auto m = static_cast<Eigen::Index>(keep.size());
  out.a_.resize(m, m);
  out.b_.resize(m);
  const Eigen::VectorXcd av = form.a_ * v;
  for (Eigen::Index p = 0; p < m; ++p) {
    const auto kp = static_cast<Eigen::Index>(keep[static_cast<std::size_t>(p)]);
    out.vars_.push_back(form.vars_[static_cast<std::size_t>(kp)]);
    out.b_(p) = form.b_(kp) + 2.0 * av(kp);
    for (Eigen::Index q = 0; q < m; ++q)
      out.a_(p, q) = form.a_(kp, static_cast<Eigen::Index>(keep[static_cast<std::size_t>(q)]));
  }
  out.c_ = form.c_ + (form.b_.transpose() * v)(0, 0) + (v.transpose() * av)(0, 0);
  out.log_prefactor_ = form.log_prefactor_;
  return out;
}

QuadraticExponent restrict_to(const QuadraticExponent& form, std::span<const std::string> names) {
  const auto kept = indices_of(form, names);
  QuadraticExponent out;
  const auto m = static_cast<Eigen::Index>(kept.size());
  out.a_.resize(m, m);
  out.b_.resize(m);
  for (Eigen::Index p = 0; p < m; ++p) {
    const auto kp = static_cast<Eigen::Index>(kept[static_cast<std::size_t>(p)]);
    out.vars_.push_back(form.vars_[static_cast<std::size_t>(kp)]);
    out.b_(p) = form.b_(kp);
    for (Eigen::Index q = 0; q < m; ++q)
      out.a_(p, q) = form.a_(kp, static_cast<Eigen::Index>(kept[static_cast<std::size_t>(q)]));
  }
  out.c_ = form.c_;
  out.log_prefactor_ = form.log_prefactor_;
  return out;
}

DerivativeKernel::DerivativeKernel(Eigen::MatrixXcd quadratic, std::vector<int> orders, int order_cap)
    : a_(std::move(quadratic)), orders_(std::move(orders)) {
  if (a_.rows() != a_.cols() || a_.rows() != static_cast<Eigen::Index>(orders_.size()))
    throw DimensionError("DerivativeKernel: quadratic block and order list disagree in size");
  int total = 0;
  strides_.resize(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (orders_[i] < 0) throw DomainError("negative derivative order");
    total += orders_[i];
    strides_[i] = table_size_;
    table_size_ *= static_cast<std::size_t>(orders_[i] + 1);
    factorial_product_ *= std::tgamma(orders_[i] + 1.0);
  }
  if (total > order_cap)
    throw DomainError("total derivative order " + std::to_string(total) + " exceeds cap " +
                      std::to_string(order_cap));
}

Complex DerivativeKernel::evaluate(const Eigen::VectorXcd& linear, Complex constant) const {
  const std::size_t n = orders_.size();
  if (linear.size() != static_cast<Eigen::Index>(n))
    throw DimensionError("DerivativeKernel: linear part has wrong size");
  std::vector<Complex> table(table_size_, Complex{0.0, 0.0});
  std::vector<int> digit(n, 0);
  table[0] = 1.0;
  for (std::size_t idx = 1; idx < table_size_; ++idx) {
    for (std::size_t d = 0; d < n; ++d) {
      if (++digit[d] <= orders_[d]) break;
      digit[d] = 0;
    }
    std::size_t i = 0;
    while (digit[i] == 0) ++i;
    const std::size_t base = idx - strides_[i];
    Complex acc = linear(static_cast<Eigen::Index>(i)) * table[base];
    --digit[i];
    for (std::size_t l = 0; l < n; ++l)
      if (digit[l] > 0) acc += 2.0 * a_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) *
                               table[base - strides_[l]];
    ++digit[i];
    acc /= static_cast<double>(digit[i]);
    if (std::abs(acc) < kPruneBelow) acc = 0.0;
    table[idx] = acc;
  }
  return table[table_size_ - 1] * factorial_product_ * std::exp(constant);
}

Complex derivative_at_zero(const QuadraticExponent& form, const MultiIndex& k, int order_cap) {
  std::vector<std::string> names;
  std::vector<int> orders;
  for (const auto& [name, order] : k.orders) {
    if (order < 0) throw DomainError("negative derivative order for '" + name + "'");
    if (!form.contains(name)) throw DimensionError("unknown variable '" + name + "'");
    if (order == 0) continue;
    names.push_back(name);
    orders.push_back(order);
  }
  if (k.total() > order_cap)
    throw DomainError("total derivative order " + std::to_string(k.total()) + " exceeds cap " +
                      std::to_string(order_cap));
  const QuadraticExponent sub = restrict_to(form, names);
  const DerivativeKernel kernel(sub.quadratic(), std::move(orders), order_cap);
  return kernel.evaluate(sub.linear(), sub.log_prefactor() + sub.constant());
}

}  // namespace ngtele
