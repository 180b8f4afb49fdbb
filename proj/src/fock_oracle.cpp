#include "ngtele/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ngtele/errors.hpp"

namespace ngtele {

namespace {

using cplx = std::complex<double>;

constexpr double kNegligibleAmplitude = 1e-17;

std::size_t ipow(std::size_t base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

std::size_t stride(const FockState& s, int mode) {
  return ipow(static_cast<std::size_t>(s.dim()), s.modes() - 1 - mode);
}

void check_mode(const FockState& s, int mode) {
  if (mode < 0 || mode >= s.modes())
    throw DimensionError("mode " + std::to_string(mode) + " out of range for a " + std::to_string(s.modes()) +
                         "-mode state");
}

/// Applies (p a_i^dag + q a_j^dag)/sqrt(step) to a vector over |k, M-k>, k = photons in mode i.
std::vector<double> raise(const std::vector<double>& v, double p, double q, int step) {
  const int total = static_cast<int>(v.size()) - 1;
  std::vector<double> out(v.size() + 1, 0.0);
  const double norm = 1.0 / std::sqrt(static_cast<double>(step));
  for (int k = 0; k <= total; ++k) {
    out[k + 1] += p * std::sqrt(k + 1.0) * v[k] * norm;
    out[k] += q * std::sqrt(total - k + 1.0) * v[k] * norm;
  }
  return out;
}

/// Column U|a, b> expressed over |k, a+b-k>.
std::vector<double> bs_column(double t, double r, int a, int b) {
  std::vector<double> v{1.0};
  for (int s = 1; s <= b; ++s) v = raise(v, r, t, s);
  for (int s = 1; s <= a; ++s) v = raise(v, t, -r, s);
  return v;
}

/// Indices of all basis vectors with zero photons in the listed modes.
std::vector<std::size_t> base_offsets(const FockState& s, const std::vector<int>& skip) {
  std::vector<std::size_t> out;
  std::vector<int> digits(static_cast<std::size_t>(s.modes()), 0);
  for (std::size_t idx = 0; idx < s.size(); ++idx) {
    bool keep = true;
    for (int m : skip) keep = keep && digits[static_cast<std::size_t>(m)] == 0;
    if (keep) out.push_back(idx);
    for (int d = s.modes() - 1; d >= 0; --d) {
      if (++digits[static_cast<std::size_t>(d)] <= s.cutoff()) break;
      digits[static_cast<std::size_t>(d)] = 0;
    }
  }
  return out;
}

FockState remove_mode_slice(const FockState& state, int mode, int n) {
  FockState out(state.modes() - 1, state.cutoff());
  const std::size_t st = stride(state, mode);
  const std::size_t dim = static_cast<std::size_t>(state.dim());
  auto& dst = out.amplitudes();
  const auto& src = state.amplitudes();
  for (std::size_t j = 0; j < dst.size(); ++j) {
    const std::size_t high = j / st;
    const std::size_t low = j % st;
    dst[j] = src[(high * dim + static_cast<std::size_t>(n)) * st + low];
  }
  return out;
}

cplx alpha_of(double tau, double sigma) { return cplx(tau, sigma) / std::sqrt(2.0); }

}  // namespace

FockState::FockState(int modes, int cutoff) : modes_(modes), cutoff_(cutoff) {
  if (modes < 1) throw DimensionError("Fock state needs at least one mode");
  if (cutoff < 0) throw DomainError("cutoff must be non-negative");
  amps_.assign(ipow(static_cast<std::size_t>(cutoff + 1), modes), cplx{0.0, 0.0});
}

FockState FockState::vacuum(int modes, int cutoff) {
  FockState s(modes, cutoff);
  s.amps_[0] = 1.0;
  return s;
}

FockState FockState::number(int n, int cutoff) {
  if (n < 0 || n > cutoff) throw DomainError("photon number " + std::to_string(n) + " outside 0.." + std::to_string(cutoff));
  FockState s(1, cutoff);
  s.amps_[static_cast<std::size_t>(n)] = 1.0;
  return s;
}

cplx& FockState::at(const std::vector<int>& photons) {
  if (static_cast<int>(photons.size()) != modes_) throw DimensionError("wrong number of photon indices");
  std::size_t idx = 0;
  for (int n : photons) {
    if (n < 0 || n > cutoff_) throw DomainError("photon index outside the truncated space");
    idx = idx * static_cast<std::size_t>(dim()) + static_cast<std::size_t>(n);
  }
  return amps_[idx];
}

cplx FockState::at(const std::vector<int>& photons) const { return const_cast<FockState&>(*this).at(photons); }

double FockState::norm_squared() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return sum;
}

void FockState::scale(double factor) {
  for (auto& a : amps_) a *= factor;
}

double FockState::tail_mass(int mode, int above) const {
  check_mode(*this, mode);
  const std::size_t st = stride(*this, mode);
  const std::size_t d = static_cast<std::size_t>(dim());
  double sum = 0.0;
  for (std::size_t idx = 0; idx < amps_.size(); ++idx)
    if (static_cast<int>((idx / st) % d) > above) sum += std::norm(amps_[idx]);
  return sum;
}

FockState FockState::attach(int photons) const {
  if (photons < 0 || photons > cutoff_)
    throw DomainError("cannot attach |" + std::to_string(photons) + "> at cutoff " + std::to_string(cutoff_));
  FockState out(modes_ + 1, cutoff_);
  const std::size_t d = static_cast<std::size_t>(dim());
  for (std::size_t idx = 0; idx < amps_.size(); ++idx) out.amps_[idx * d + static_cast<std::size_t>(photons)] = amps_[idx];
  return out;
}

double FockMixture::trace() const {
  double sum = 0.0;
  for (const auto& b : branches) sum += b.norm_squared();
  return sum;
}

void FockMixture::scale(double factor) {
  for (auto& b : branches) b.scale(factor);
}

FockState tmsv_fock(double r, int cutoff) {
  if (cutoff < 1) throw DomainError("cutoff must be at least 1");
  if (!(std::isfinite(r) && r >= 0.0)) throw DomainError("squeezing must be finite and non-negative");
  const double lam = std::tanh(r);
  const int above = cutoff - 5;
  const double tail = above < 0 ? 1.0 : std::pow(lam, 2.0 * (above + 1));
  if (lam > 0.0 && tail >= kTailTolerance)
    throw TruncationError("cutoff " + std::to_string(cutoff) + " too small for squeezing " + std::to_string(r) +
                          ": tail mass " + std::to_string(tail));
  FockState s(2, cutoff);
  double amp = 1.0 / std::cosh(r);
  for (int n = 0; n <= cutoff; ++n) {
    s.at({n, n}) = amp;
    amp *= lam;
  }
  return s;
}

double beam_splitter_element(double transmissivity, int a, int b, int k) {
  if (!(transmissivity > 0.0 && transmissivity <= 1.0)) throw DomainError("transmissivity must lie in (0, 1]");
  if (a < 0 || b < 0 || k < 0 || k > a + b) return 0.0;
  const auto col = bs_column(std::sqrt(transmissivity), std::sqrt(1.0 - transmissivity), a, b);
  return col[static_cast<std::size_t>(k)];
}

FockState beam_splitter_fock(const FockState& state, int mode_i, int mode_j, double transmissivity) {
  check_mode(state, mode_i);
  check_mode(state, mode_j);
  if (mode_i == mode_j) throw DimensionError("beam splitter needs two distinct modes");
  if (!(transmissivity > 0.0 && transmissivity <= 1.0)) throw DomainError("transmissivity must lie in (0, 1]");
  const int n = state.cutoff();
  const double t = std::sqrt(transmissivity);
  const double r = std::sqrt(1.0 - transmissivity);

  // columns[a][b] = U|a, b> over k = photons in mode i.
  std::vector<std::vector<std::vector<double>>> columns(static_cast<std::size_t>(n + 1));
  for (int a = 0; a <= n; ++a) {
    columns[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(n + 1));
    for (int b = 0; b <= n; ++b) columns[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = bs_column(t, r, a, b);
  }

  FockState out(state.modes(), n);
  const std::size_t si = stride(state, mode_i);
  const std::size_t sj = stride(state, mode_j);
  const auto& src = state.amplitudes();
  auto& dst = out.amplitudes();
  for (std::size_t base : base_offsets(state, {mode_i, mode_j})) {
    for (int a = 0; a <= n; ++a) {
      for (int b = 0; b <= n; ++b) {
        const cplx in = src[base + static_cast<std::size_t>(a) * si + static_cast<std::size_t>(b) * sj];
        if (in == 0.0) continue;
        const auto& col = columns[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        const int total = a + b;
        for (int k = std::max(0, total - n); k <= std::min(n, total); ++k)
          dst[base + static_cast<std::size_t>(k) * si + static_cast<std::size_t>(total - k) * sj] +=
              col[static_cast<std::size_t>(k)] * in;
      }
    }
  }
  const double before = state.norm_squared();
  const double lost = before - out.norm_squared();
  if (lost > kTailTolerance * before)
    throw TruncationError("beam splitter pushed weight " + std::to_string(lost) + " above cutoff " +
                          std::to_string(n));
  return out;
}

std::pair<FockState, double> herald_project(const FockState& state, int mode, int n) {
  check_mode(state, mode);
  if (state.modes() < 2) throw DimensionError("cannot herald the only mode of a state");
  if (n < 0 || n > state.cutoff()) throw DomainError("herald photon number outside the truncated space");
  FockState out = remove_mode_slice(state, mode, n);
  const double p = out.norm_squared();
  return {std::move(out), p};
}

std::pair<FockMixture, double> lossy_detect(const FockState& state, int mode, double eta, int n) {
  check_mode(state, mode);
  if (state.modes() < 2) throw DimensionError("cannot herald the only mode of a state");
  if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("detector efficiency must lie in (0, 1]");
  if (n < 0 || n > state.cutoff()) throw DomainError("herald photon number outside the truncated space");
  FockMixture out;
  double total = 0.0;
  // Signal |n+l> and vacuum loss port map onto detector n, loss l with amplitude <n, l|U(eta)|n+l, 0>.
  for (int l = 0; n + l <= state.cutoff(); ++l) {
    const double c = beam_splitter_element(eta, n + l, 0, n);
    if (c == 0.0) continue;
    FockState branch = remove_mode_slice(state, mode, n + l);
    branch.scale(c);
    const double w = branch.norm_squared();
    if (w == 0.0) continue;
    total += w;
    out.branches.push_back(std::move(branch));
  }
  return {std::move(out), total};
}

Eigen::MatrixXcd displacement_matrix(cplx alpha, int cutoff) {
  const Eigen::Index d = cutoff + 1;
  const double x = std::norm(alpha);
  Eigen::MatrixXcd m(d, d);
  // Column n = 0 is exp(-x/2) alpha^k / sqrt(k!).
  m(0, 0) = std::exp(-0.5 * x);
  for (Eigen::Index i = 1; i < d; ++i) m(i, 0) = m(i - 1, 0) * alpha / std::sqrt(static_cast<double>(i));
  // Along each diagonal m - n = k the normalized Laguerre recurrence keeps every term bounded by one.
  for (Eigen::Index k = 0; k < d; ++k) {
    const double kk = static_cast<double>(k);
    if (k + 1 < d) m(k + 1, 1) = m(k, 0) * (1.0 + kk - x) / std::sqrt(kk + 1.0);
    for (Eigen::Index n = 1; n + k + 1 < d; ++n) {
      const double nn = static_cast<double>(n);
      m(n + k + 1, n + 1) = ((2.0 * nn + 1.0 + kk - x) * m(n + k, n) - std::sqrt(nn * (nn + kk)) * m(n + k - 1, n - 1)) /
                            std::sqrt((nn + 1.0) * (nn + 1.0 + kk));
    }
  }
  for (Eigen::Index k = 1; k < d; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    for (Eigen::Index n = 0; n + k < d; ++n) m(n, n + k) = sign * std::conj(m(n + k, n));
  }
  return m;
}

cplx char_from_fock(const FockState& state, const std::vector<double>& lambda) {
  if (static_cast<int>(lambda.size()) != 2 * state.modes())
    throw DimensionError("phase point must have two components per mode");
  if (state.modes() == 1) {
    const Eigen::MatrixXcd d = displacement_matrix(alpha_of(lambda[0], lambda[1]), state.cutoff());
    const Eigen::Map<const Eigen::VectorXcd> psi(state.amplitudes().data(), state.dim());
    return psi.dot(d * psi);
  }
  if (state.modes() == 2) {
    FockMixture rho;
    rho.branches.push_back(state);
    return FockCharEvaluator(rho)(lambda[0], lambda[1], lambda[2], lambda[3]);
  }
  throw DimensionError("characteristic functions are provided for one- and two-mode states");
}

cplx char_from_fock(const FockMixture& rho, const std::vector<double>& lambda) {
  if (rho.branches.empty()) return 0.0;
  if (rho.branches.front().modes() == 2) {
    if (lambda.size() != 4) throw DimensionError("phase point must have four components");
    return FockCharEvaluator(rho)(lambda[0], lambda[1], lambda[2], lambda[3]);
  }
  cplx sum{0.0, 0.0};
  for (const auto& b : rho.branches) sum += char_from_fock(b, lambda);
  return sum;
}

FockCharEvaluator::FockCharEvaluator(const FockMixture& rho) {
  double largest = 0.0;
  for (const auto& b : rho.branches) {
    if (b.modes() != 2) throw DimensionError("FockCharEvaluator expects two-mode branches");
    for (const auto& a : b.amplitudes()) largest = std::max(largest, std::abs(a));
  }
  for (const auto& b : rho.branches) {
    std::vector<Entry> entries;
    for (int m = 0; m <= b.cutoff(); ++m)
      for (int n = 0; n <= b.cutoff(); ++n) {
        const cplx a = b.at({m, n});
        if (std::abs(a) <= kNegligibleAmplitude * largest) continue;
        entries.push_back({m, n, a});
        max_index_ = std::max({max_index_, m, n});
      }
    if (!entries.empty()) branches_.push_back(std::move(entries));
  }
}

cplx FockCharEvaluator::operator()(double tau1, double sigma1, double tau2, double sigma2) const {
  const Eigen::MatrixXcd d1 = displacement_matrix(alpha_of(tau1, sigma1), max_index_);
  const Eigen::MatrixXcd d2 = displacement_matrix(alpha_of(tau2, sigma2), max_index_);
  cplx sum{0.0, 0.0};
  for (const auto& entries : branches_)
    for (const auto& bra : entries) {
      cplx row{0.0, 0.0};
      for (const auto& ket : entries) row += d1(bra.m, ket.m) * d2(bra.n, ket.n) * ket.amp;
      sum += std::conj(bra.amp) * row;
    }
  return sum;
}

HeraldedFock heralded_resource_fock(const HeraldConfig& cfg, int cutoff) {
  cfg.validate();
  const int largest = std::max({cfg.m1, cfg.m2, cfg.n1, cfg.n2});
  if (largest > cutoff) throw TruncationError("cutoff " + std::to_string(cutoff) + " below ancilla photon numbers");

  // Modes: A1, A2, F1.
  FockState first = beam_splitter_fock(tmsv_fock(cfg.r, cutoff).attach(cfg.m1), 0, 2, cfg.T1);
  FockMixture after_first = lossy_detect(first, 2, cfg.eta1, cfg.n1).first;

  HeraldedFock out;
  out.cutoff = cutoff;
  for (const auto& branch : after_first.branches) {
    // Modes: A1, A2, F2.
    const FockState second = beam_splitter_fock(branch.attach(cfg.m2), 1, 2, cfg.T2);
    auto [mix, p] = lossy_detect(second, 2, cfg.eta2, cfg.n2);
    (void)p;
    for (auto& b : mix.branches) out.state.branches.push_back(std::move(b));
  }
  out.probability = out.state.trace();
  if (out.probability == 0.0) return out;
  out.state.scale(1.0 / std::sqrt(out.probability));
  for (int mode = 0; mode < 2; ++mode) {
    double tail = 0.0;
    for (const auto& b : out.state.branches) tail += b.tail_mass(mode, cutoff - 5);
    if (tail >= kTailTolerance)
      throw TruncationError("heralded state has tail mass " + std::to_string(tail) + " above " +
                            std::to_string(cutoff - 5) + " photons in mode " + std::to_string(mode + 1));
  }
  return out;
}

namespace {

template <class F>
auto with_cutoff_doubling(int cutoff, int max_cutoff, F&& run) {
  if (cutoff < 1) throw DomainError("cutoff must be positive");
  int n = cutoff;
  while (true) {
    try {
      return run(n);
    } catch (const TruncationError&) {
      if (n >= max_cutoff) throw;
      n = std::min(2 * n, max_cutoff);
    }
  }
}

}  // namespace

OracleResult oracle_probability(const HeraldConfig& cfg, int cutoff, int max_cutoff) {
  return with_cutoff_doubling(cutoff, max_cutoff, [&](int n) {
    const HeraldedFock h = heralded_resource_fock(cfg, n);
    return OracleResult{0.0, h.probability, n};
  });
}

OracleResult oracle_fidelity(const HeraldConfig& cfg, const InputState& input, int cutoff,
                             const QuadratureOptions& options, int max_cutoff) {
  return with_cutoff_doubling(cutoff, max_cutoff, [&](int n) {
    const HeraldedFock h = heralded_resource_fock(cfg, n);
    if (h.probability == 0.0)
      throw ZeroProbabilityError("herald pattern has zero probability in the number basis");
    const FockCharEvaluator chi(h.state);
    const ResourceChar resource = [&chi](double t1, double s1, double t2, double s2) { return chi(t1, s1, t2, s2); };
    const double f = teleportation_overlap(input, resource, options).value;
    return OracleResult{f, h.probability, n};
  });
}

}  // namespace ngtele
