#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ngtele/errors.hpp"
#include "ngtele/quadratic_form.hpp"
#include "oracles.hpp"

using namespace ngtele;
using ngtele::testing::hafnian_derivative;
using ngtele::testing::series_derivative;

namespace {

QuadraticExponent random_form(std::mt19937& rng, int n, std::vector<std::string>& names) {
  std::normal_distribution<double> g(0.0, 0.5);
  names.clear();
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  Eigen::MatrixXcd a(n, n);
  Eigen::VectorXcd b(n);
  for (int i = 0; i < n; ++i) {
    b(i) = {g(rng), g(rng)};
    for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
  }
  return QuadraticExponent::from_coefficients(names, a, b, {g(rng), g(rng)});
}

}  // namespace

TEST(QuadraticExponent, RejectsDuplicateNames) {
  EXPECT_THROW(QuadraticExponent({"x", "x"}), DimensionError);
}

TEST(QuadraticExponent, AddProductSplitsCrossTerm) {
  QuadraticExponent f({"x", "y"});
  f.add_product("x", "y", 3.0);
  EXPECT_DOUBLE_EQ(f.quadratic()(0, 1).real(), 1.5);
  EXPECT_DOUBLE_EQ(f.quadratic()(1, 0).real(), 1.5);
  Eigen::VectorXcd x(2);
  x << 2.0, 5.0;
  EXPECT_NEAR(std::log(f.evaluate(x)).real(), 30.0, 1e-12);
}

TEST(QuadraticExponent, IndexOfUnknownThrows) {
  QuadraticExponent f({"x"});
  EXPECT_THROW((void)f.index_of("y"), std::out_of_range);
}

TEST(DerivativeAtZero, MatchesSeriesAndHafnianOracles) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> nvar(1, 4);
  std::uniform_int_distribution<int> ord(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> names;
    const int n = nvar(rng);
    const QuadraticExponent f = random_form(rng, n, names);
    MultiIndex k;
    std::vector<int> orders;
    for (int i = 0; i < n; ++i) {
      orders.push_back(ord(rng));
      k.orders[names[static_cast<std::size_t>(i)]] = orders.back();
    }
    const Complex got = derivative_at_zero(f, k);
    const Complex series = series_derivative(f.quadratic(), f.linear(), f.constant(), orders);
    const Complex haf = hafnian_derivative(f.quadratic(), f.linear(), f.constant(), orders);
    const double scale = std::max(1.0, std::abs(series));
    EXPECT_LT(std::abs(got - series), 1e-10 * scale) << "trial " << trial;
    EXPECT_LT(std::abs(haf - series), 1e-10 * scale) << "trial " << trial;
  }
}

TEST(DerivativeAtZero, SingleVariableHermiteValues) {
  // d^4/dx^4 exp(-x^2) at 0 = 12.
  QuadraticExponent f({"x"});
  f.add_product("x", "x", -1.0);
  EXPECT_NEAR(derivative_at_zero(f, {{"x", 4}}).real(), 12.0, 1e-12);
  EXPECT_NEAR(std::abs(derivative_at_zero(f, {{"x", 3}})), 0.0, 1e-15);
}

TEST(DerivativeAtZero, WickParityZeros) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::string> names;
    QuadraticExponent f = random_form(rng, 3, names);
    f = QuadraticExponent::from_coefficients(names, f.quadratic(), Eigen::VectorXcd::Zero(3));
    EXPECT_EQ(derivative_at_zero(f, {{"x0", 2}, {"x1", 1}}), Complex(0.0, 0.0));
    EXPECT_EQ(derivative_at_zero(f, {{"x0", 1}, {"x1", 1}, {"x2", 1}}), Complex(0.0, 0.0));
  }
}

TEST(DerivativeAtZero, ErrorPaths) {
  QuadraticExponent f({"x"});
  EXPECT_THROW((void)derivative_at_zero(f, {{"y", 1}}), DimensionError);
  EXPECT_THROW((void)derivative_at_zero(f, {{"x", -1}}), DomainError);
  EXPECT_THROW((void)derivative_at_zero(f, {{"x", 17}}), DomainError);
}

TEST(DerivativeKernel, AgreesWithDirectExtraction) {
  std::mt19937 rng(3);
  std::vector<std::string> names;
  const QuadraticExponent f = random_form(rng, 3, names);
  const DerivativeKernel kernel(f.quadratic(), {1, 2, 1});
  const Complex direct = derivative_at_zero(f, {{"x0", 1}, {"x1", 2}, {"x2", 1}});
  EXPECT_LT(std::abs(kernel.evaluate(f.linear(), f.constant()) - direct), 1e-12 * std::abs(direct));
  EXPECT_EQ(kernel.table_size(), 2u * 3u * 2u);
}

TEST(GaussianIntegrate, OneDimensionalClosedForm) {
  QuadraticExponent f({"x"});
  f.add_product("x", "x", -0.5);
  const QuadraticExponent g = gaussian_integrate(f, std::vector<std::string>{"x"});
  EXPECT_NEAR(g.value_at_zero().real(), std::sqrt(2.0 * std::numbers::pi), 1e-14);
}

TEST(GaussianIntegrate, OrderIndependence) {
  std::mt19937 rng(5);
  std::normal_distribution<double> g(0.0, 0.3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<std::string> names = {"a", "b", "c", "u"};
    Eigen::MatrixXd m(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = g(rng);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(4, 4);
    a.topLeftCorner(3, 3) = -(m * m.transpose() + Eigen::MatrixXd::Identity(3, 3)).cast<Complex>();
    for (int i = 0; i < 3; ++i) a(i, 3) = a(3, i) = Complex(g(rng), g(rng));
    a(3, 3) = Complex(g(rng), g(rng));
    Eigen::VectorXcd b(4);
    for (int i = 0; i < 4; ++i) b(i) = {g(rng), g(rng)};
    const auto f = QuadraticExponent::from_coefficients(names, a, b);
    const auto g1 = gaussian_integrate(f, std::vector<std::string>{"a", "b", "c"});
    const auto g2 = gaussian_integrate(f, std::vector<std::string>{"c", "a", "b"});
    const auto g3 = gaussian_integrate(gaussian_integrate(f, std::vector<std::string>{"b"}),
                                       std::vector<std::string>{"c", "a"});
    EXPECT_TRUE(g1.approx_equal(g2, 1e-12));
    EXPECT_TRUE(g1.approx_equal(g3, 1e-12));
  }
}

TEST(GaussianIntegrate, DivergentThrows) {
  QuadraticExponent f({"x"});
  f.add_product("x", "x", 0.5);
  EXPECT_THROW(gaussian_integrate(f, std::vector<std::string>{"x"}), DivergenceError);
}

TEST(SubstituteLinear, RotationPreservesValue) {
  QuadraticExponent f({"x", "y"});
  f.add_product("x", "x", -1.0);
  f.add_product("x", "y", 0.3);
  f.add_linear("y", 0.7);
  Eigen::MatrixXd rot(2, 2);
  const double c = std::cos(0.4);
  const double s = std::sin(0.4);
  rot << c, s, -s, c;
  const std::vector<std::string> xy = {"x", "y"};
  const auto g = substitute_linear(f, xy, xy, rot);
  Eigen::VectorXcd y(2);
  y << 0.2, -1.1;
  const Eigen::VectorXcd x = rot.cast<Complex>() * y;
  EXPECT_LT(std::abs(g.evaluate(y) - f.evaluate(x)), 1e-14);
}

TEST(FixAndRestrict, SetVariables) {
  QuadraticExponent f({"x", "y"});
  f.add_product("x", "y", 1.0);
  f.add_linear("x", 2.0);
  const std::vector<std::string> x = {"x"};
  const std::vector<Complex> v = {Complex(3.0, 0.0)};
  const auto g = fix_variables(f, x, v);
  EXPECT_EQ(g.vars(), std::vector<std::string>{"y"});
  EXPECT_NEAR(g.constant().real(), 6.0, 1e-15);
  EXPECT_NEAR(g.linear()(0).real(), 3.0, 1e-15);
  const std::vector<std::string> y = {"y"};
  const auto h = restrict_to(f, y);
  EXPECT_EQ(h.linear()(0), Complex(0.0, 0.0));
}
