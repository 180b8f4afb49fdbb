#pragma once

#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace ngtele {

struct Coherent {
  double d_x = 0.0;
  double d_p = 0.0;
};

struct SqueezedVacuum {
  double epsilon = 0.0;
};

/// Pure single-mode input to the teleporter.
using InputState = std::variant<Coherent, SqueezedVacuum>;

std::complex<double> input_char(const InputState& input, double tau, double sigma);
/// "coherent" or "sqv(eps=...)".
std::string describe(const InputState& input);

using CharFunction = std::function<std::complex<double>(double tau, double sigma)>;
using ResourceChar = std::function<std::complex<double>(double tau1, double sigma1, double tau2, double sigma2)>;

/// chi_out(tau, sigma) = chi_in(tau, sigma) chi_res(tau, -sigma, tau, sigma).
std::complex<double> teleported_char(const CharFunction& chi_in, const ResourceChar& chi_res, double tau,
                                     double sigma);

struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights on [-1, 1]; cached per order, thread-safe.
const GaussLegendreRule& gauss_legendre(int points);

struct QuadratureOptions {
  double tolerance = 1e-8;
  int initial_points = 32;
  int max_points = 1024;
  double initial_half_width = 8.0;
  /// Box edges are pushed out while the integrand there exceeds this magnitude.
  double edge_threshold = 1e-14;
};

struct QuadratureReport {
  double value = 0.0;
  int points = 0;
  double half_width_tau = 0.0;
  double half_width_sigma = 0.0;
};

/// F = (1/2pi) \int chi_in(L) chi_out(-L) d^2L by tensor Gauss-Legendre on a
/// rectangle, doubling the node count until successive estimates agree.
/// Throws ConvergenceError when max_points is reached first.
QuadratureReport teleportation_overlap(const InputState& input, const ResourceChar& chi_res,
                                       const QuadratureOptions& options = {});

}  // namespace ngtele
