#pragma once

#include <string_view>

namespace ngtele {

/// Squeezing r, ancilla inputs (m1, m2), detections (n1, n2), beam splitters
/// (T1, T2) and detector efficiencies (eta1, eta2).
struct HeraldConfig {
  double r = 0.0;
  int m1 = 0;
  int m2 = 0;
  int n1 = 0;
  int n2 = 0;
  double T1 = 1.0;
  double T2 = 1.0;
  double eta1 = 1.0;
  double eta2 = 1.0;

  /// Throws DomainError naming the first offending field.
  void validate() const;
  [[nodiscard]] bool lossless() const { return eta1 == 1.0 && eta2 == 1.0; }
  [[nodiscard]] int total_photons() const { return m1 + m2 + n1 + n2; }
  /// Same experiment with the two arms exchanged.
  [[nodiscard]] HeraldConfig swapped() const;
};

/// AsymPC12 is catalysis with one photon on the first arm and two on the second.
enum class OperationKind { Tmsv, AsymPS, AsymPA, AsymPC, SymPS, SymPA, SymPC, AsymPC12 };

[[nodiscard]] bool is_symmetric(OperationKind kind);
/// Both beam splitters carry an operation, so T1 and T2 are free parameters.
[[nodiscard]] bool uses_both_arms(OperationKind kind);
[[nodiscard]] std::string_view to_string(OperationKind kind);
/// Accepts "sym-ps", "asym-pc", "tmsv", ... Throws DomainError otherwise.
[[nodiscard]] OperationKind parse_kind(std::string_view text);

/// Photon numbers per kind; asymmetric operations act on the second arm and keep T1 = 1.
/// AsymPC12 has fixed photon numbers and requires n = 1.
HeraldConfig config_from_kind(OperationKind kind, int n, double r, double T1, double T2);

}  // namespace ngtele
