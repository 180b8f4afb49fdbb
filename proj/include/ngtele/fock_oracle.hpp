#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ngtele/herald_config.hpp"
#include "ngtele/quadrature.hpp"

namespace ngtele {

/// Truncated pure state of `modes` bosonic modes, each holding 0..cutoff photons.
/// Amplitudes are stored row-major with the last mode varying fastest.
class FockState {
 public:
  FockState(int modes, int cutoff);
  static FockState vacuum(int modes, int cutoff);
  /// Single-mode number state |n>.
  static FockState number(int n, int cutoff);

  [[nodiscard]] int modes() const { return modes_; }
  [[nodiscard]] int cutoff() const { return cutoff_; }
  [[nodiscard]] int dim() const { return cutoff_ + 1; }
  [[nodiscard]] std::size_t size() const { return amps_.size(); }

  [[nodiscard]] std::complex<double>& at(const std::vector<int>& photons);
  [[nodiscard]] std::complex<double> at(const std::vector<int>& photons) const;
  [[nodiscard]] std::vector<std::complex<double>>& amplitudes() { return amps_; }
  [[nodiscard]] const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

  [[nodiscard]] double norm_squared() const;
  void scale(double factor);
  /// Probability weight with more than `above` photons in `mode`.
  [[nodiscard]] double tail_mass(int mode, int above) const;
  /// Tensor product with a number state appended as the last mode.
  [[nodiscard]] FockState attach(int photons) const;

 private:
  int modes_;
  int cutoff_;
  std::vector<std::complex<double>> amps_;
};

/// rho = sum_b |psi_b><psi_b| over unnormalized pure branches.
struct FockMixture {
  std::vector<FockState> branches;

  [[nodiscard]] double trace() const;
  void scale(double factor);
};

/// Tail above cutoff - 5 photons must stay below this weight.
inline constexpr double kTailTolerance = 1e-8;
inline constexpr int kDefaultCutoff = 40;
inline constexpr int kMaxCutoff = 120;

/// Two-mode squeezed vacuum: c_nn = tanh^n r / cosh r. Throws TruncationError when the tail is too heavy.
FockState tmsv_fock(double r, int cutoff);

/// Beam splitter on modes (i, j) with U a_i^dag U^dag = t a_i^dag - r a_j^dag.
FockState beam_splitter_fock(const FockState& state, int mode_i, int mode_j, double transmissivity);

/// <k, a+b-k| U(T) |a, b>.
double beam_splitter_element(double transmissivity, int a, int b, int k);

/// Projects `mode` on |n> and removes it; returns the unnormalized remainder and its weight.
std::pair<FockState, double> herald_project(const FockState& state, int mode, int n);

/// Detector of efficiency eta: loss beam splitter against vacuum, projection on n, loss port traced.
std::pair<FockMixture, double> lossy_detect(const FockState& state, int mode, double eta, int n);

/// <m| D(alpha) |n> for m, n <= cutoff.
Eigen::MatrixXcd displacement_matrix(std::complex<double> alpha, int cutoff);

/// Tr[rho D(alpha)] with alpha = (tau + i sigma)/sqrt(2) per mode.
std::complex<double> char_from_fock(const FockState& state, const std::vector<double>& lambda);
std::complex<double> char_from_fock(const FockMixture& rho, const std::vector<double>& lambda);

/// Evaluates a two-mode mixture's characteristic function using only its nonzero amplitudes.
class FockCharEvaluator {
 public:
  explicit FockCharEvaluator(const FockMixture& rho);
  [[nodiscard]] std::complex<double> operator()(double tau1, double sigma1, double tau2, double sigma2) const;

 private:
  struct Entry {
    int m;
    int n;
    std::complex<double> amp;
  };
  std::vector<std::vector<Entry>> branches_;
  int max_index_ = 0;
};

struct HeraldedFock {
  FockMixture state;  // normalized
  double probability = 0.0;
  int cutoff = 0;
};

/// Runs the heralding circuit in the truncated number basis at a fixed cutoff.
HeraldedFock heralded_resource_fock(const HeraldConfig& cfg, int cutoff);

struct OracleResult {
  double fidelity = 0.0;
  double probability = 0.0;
  int cutoff = 0;
};

/// Heralding probability only, doubling the cutoff on truncation failure up to max_cutoff.
OracleResult oracle_probability(const HeraldConfig& cfg, int cutoff = kDefaultCutoff, int max_cutoff = kMaxCutoff);
/// Full number-basis computation of fidelity and probability.
OracleResult oracle_fidelity(const HeraldConfig& cfg, const InputState& input, int cutoff = kDefaultCutoff,
                             const QuadratureOptions& options = {}, int max_cutoff = kMaxCutoff);

}  // namespace ngtele
