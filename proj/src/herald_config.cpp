#include "ngtele/herald_config.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ngtele/errors.hpp"

namespace ngtele {

namespace {

void check_unit_interval(double value, const char* name) {
  if (!(value > 0.0 && value <= 1.0))
    throw DomainError(std::string(name) + " must lie in (0, 1], got " + std::to_string(value));
}

}  // namespace

void HeraldConfig::validate() const {
  if (!(std::isfinite(r) && r >= 0.0)) throw DomainError("r must be finite and non-negative, got " + std::to_string(r));
  const std::pair<const char*, int> photons[] = {{"m1", m1}, {"m2", m2}, {"n1", n1}, {"n2", n2}};
  for (const auto& [name, value] : photons)
    if (value < 0) throw DomainError(std::string(name) + " must be a non-negative photon number");
  check_unit_interval(T1, "T1");
  check_unit_interval(T2, "T2");
  check_unit_interval(eta1, "eta1");
  check_unit_interval(eta2, "eta2");
}

HeraldConfig HeraldConfig::swapped() const {
  HeraldConfig out = *this;
  std::swap(out.m1, out.m2);
  std::swap(out.n1, out.n2);
  std::swap(out.T1, out.T2);
  std::swap(out.eta1, out.eta2);
  return out;
}

bool is_symmetric(OperationKind kind) {
  return kind == OperationKind::SymPS || kind == OperationKind::SymPA || kind == OperationKind::SymPC;
}

bool uses_both_arms(OperationKind kind) { return is_symmetric(kind) || kind == OperationKind::AsymPC12; }

std::string_view to_string(OperationKind kind) {
  switch (kind) {
    case OperationKind::Tmsv: return "tmsv";
    case OperationKind::AsymPS: return "asym-ps";
    case OperationKind::AsymPA: return "asym-pa";
    case OperationKind::AsymPC: return "asym-pc";
    case OperationKind::SymPS: return "sym-ps";
    case OperationKind::SymPA: return "sym-pa";
    case OperationKind::SymPC: return "sym-pc";
    case OperationKind::AsymPC12: return "asym-pc12";
  }
  return "unknown";
}

OperationKind parse_kind(std::string_view text) {
  for (auto kind : {OperationKind::Tmsv, OperationKind::AsymPS, OperationKind::AsymPA, OperationKind::AsymPC,
                    OperationKind::SymPS, OperationKind::SymPA, OperationKind::SymPC, OperationKind::AsymPC12})
    if (to_string(kind) == text) return kind;
  throw DomainError("unknown operation kind '" + std::string(text) + "'");
}

HeraldConfig config_from_kind(OperationKind kind, int n, double r, double T1, double T2) {
  if (kind != OperationKind::Tmsv && n < 1) throw DomainError("photon count n must be at least 1");
  HeraldConfig cfg;
  cfg.r = r;
  cfg.T1 = T1;
  cfg.T2 = T2;
  switch (kind) {
    case OperationKind::Tmsv:
      cfg.T1 = cfg.T2 = 1.0;
      break;
    case OperationKind::AsymPS:
      cfg.n2 = n;
      cfg.T1 = 1.0;
      break;
    case OperationKind::AsymPA:
      cfg.m2 = n;
      cfg.T1 = 1.0;
      break;
    case OperationKind::AsymPC:
      cfg.m2 = cfg.n2 = n;
      cfg.T1 = 1.0;
      break;
    case OperationKind::SymPS:
      cfg.n1 = cfg.n2 = n;
      break;
    case OperationKind::SymPA:
      cfg.m1 = cfg.m2 = n;
      break;
    case OperationKind::SymPC:
      cfg.m1 = cfg.m2 = cfg.n1 = cfg.n2 = n;
      break;
    case OperationKind::AsymPC12:
      if (n != 1) throw DomainError("asym-pc12 has fixed photon numbers; n must be 1");
      cfg.m1 = cfg.n1 = 1;
      cfg.m2 = cfg.n2 = 2;
      break;
  }
  return cfg;
}

}  // namespace ngtele
