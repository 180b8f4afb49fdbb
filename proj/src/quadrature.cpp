#include "ngtele/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/legendre.hpp>

#include "ngtele/errors.hpp"
#include "ngtele/phase_space.hpp"

namespace ngtele {

namespace {

// |chi_in(L) chi_in(-L)| drops below e^{-41} beyond these half-widths.
constexpr double kEnvelopeRadius = 9.1;
constexpr int kMaxWidthDoublings = 8;

struct Box {
  double tau = 0.0;
  double sigma = 0.0;
};

Box envelope_limits(const InputState& input) {
  if (const auto* sq = std::get_if<SqueezedVacuum>(&input))
    return {kEnvelopeRadius * std::exp(-sq->epsilon), kEnvelopeRadius * std::exp(sq->epsilon)};
  return {kEnvelopeRadius, kEnvelopeRadius};
}

}  // namespace

std::complex<double> input_char(const InputState& input, double tau, double sigma) {
  if (const auto* coh = std::get_if<Coherent>(&input)) return coherent_char(coh->d_x, coh->d_p, tau, sigma);
  return squeezed_vacuum_char(std::get<SqueezedVacuum>(input).epsilon, tau, sigma);
}

std::string describe(const InputState& input) {
  std::ostringstream out;
  if (const auto* coh = std::get_if<Coherent>(&input)) {
    out << "coherent";
    if (coh->d_x != 0.0 || coh->d_p != 0.0) out << "(d_x=" << coh->d_x << ",d_p=" << coh->d_p << ")";
  } else {
    out << "sqv(eps=" << std::get<SqueezedVacuum>(input).epsilon << ")";
  }
  return out.str();
}

std::complex<double> teleported_char(const CharFunction& chi_in, const ResourceChar& chi_res, double tau,
                                     double sigma) {
  return chi_in(tau, sigma) * chi_res(tau, -sigma, tau, sigma);
}

const GaussLegendreRule& gauss_legendre(int points) {
  if (points < 1) throw DomainError("Gauss-Legendre order must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  const std::lock_guard lock(mutex);
  auto& slot = cache[points];
  if (slot) return *slot;
  auto rule = std::make_unique<GaussLegendreRule>();
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(points);
  auto weight = [points](double x) {
    const double dp = boost::math::legendre_p_prime<double>(points, x);
    return 2.0 / ((1.0 - x * x) * dp * dp);
  };
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
    if (*it == 0.0) continue;
    rule->nodes.push_back(-*it);
    rule->weights.push_back(weight(*it));
  }
  if (points % 2 == 1) {
    rule->nodes.push_back(0.0);
    rule->weights.push_back(weight(0.0));
  }
  for (double x : zeros) {
    if (x == 0.0) continue;
    rule->nodes.push_back(x);
    rule->weights.push_back(weight(x));
  }
  slot = std::move(rule);
  return *slot;
}

QuadratureReport teleportation_overlap(const InputState& input, const ResourceChar& chi_res,
                                       const QuadratureOptions& options) {
  auto integrand = [&](double tau, double sigma) {
    return input_char(input, tau, sigma) * input_char(input, -tau, -sigma) * chi_res(-tau, sigma, -tau, -sigma);
  };

  const Box limit = envelope_limits(input);
  Box box{std::min(options.initial_half_width, limit.tau), std::min(options.initial_half_width, limit.sigma)};
  const GaussLegendreRule& probe = gauss_legendre(options.initial_points);
  for (int step = 0; step < kMaxWidthDoublings; ++step) {
    double edge_tau = 0.0;
    double edge_sigma = 0.0;
    for (double x : probe.nodes) {
      edge_tau = std::max({edge_tau, std::abs(integrand(box.tau, x * box.sigma)),
                           std::abs(integrand(-box.tau, x * box.sigma))});
      edge_sigma = std::max({edge_sigma, std::abs(integrand(x * box.tau, box.sigma)),
                             std::abs(integrand(x * box.tau, -box.sigma))});
    }
    const bool grow_tau = edge_tau > options.edge_threshold && box.tau < limit.tau;
    const bool grow_sigma = edge_sigma > options.edge_threshold && box.sigma < limit.sigma;
    if (!grow_tau && !grow_sigma) break;
    if (grow_tau) box.tau = std::min(2.0 * box.tau, limit.tau);
    if (grow_sigma) box.sigma = std::min(2.0 * box.sigma, limit.sigma);
  }

  auto estimate = [&](int n) {
    const GaussLegendreRule& rule = gauss_legendre(n);
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      std::complex<double> row{0.0, 0.0};
      for (std::size_t j = 0; j < rule.nodes.size(); ++j)
        row += rule.weights[j] * integrand(box.tau * rule.nodes[i], box.sigma * rule.nodes[j]);
      sum += rule.weights[i] * row;
    }
    return std::real(sum) * box.tau * box.sigma / (2.0 * std::numbers::pi);
  };

  int n = options.initial_points;
  double previous = estimate(n);
  while (2 * n <= options.max_points) {
    n *= 2;
    const double current = estimate(n);
    if (std::abs(current - previous) < options.tolerance) return {current, n, box.tau, box.sigma};
    previous = current;
  }
  std::ostringstream msg;
  msg << "teleportation overlap did not converge to " << options.tolerance << " with " << options.max_points
      << " points per axis";
  throw ConvergenceError(msg.str());
}

}  // namespace ngtele
