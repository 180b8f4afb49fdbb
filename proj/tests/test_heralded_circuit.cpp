#include <cmath>

#include <gtest/gtest.h>

#include "ngtele/errors.hpp"
#include "ngtele/heralded_circuit.hpp"

using namespace ngtele;

namespace {

const OperationKind kKinds[] = {OperationKind::AsymPS, OperationKind::AsymPA, OperationKind::AsymPC,
                                OperationKind::SymPS,  OperationKind::SymPA,  OperationKind::SymPC};

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

HeraldConfig make(double r, int m1, int m2, int n1, int n2, double T1, double T2) {
  HeraldConfig c;
  c.r = r;
  c.m1 = m1;
  c.m2 = m2;
  c.n1 = n1;
  c.n2 = n2;
  c.T1 = T1;
  c.T2 = T2;
  return c;
}

}  // namespace

TEST(HeraldConfig, ValidationNamesField) {
  HeraldConfig c = make(0.5, 0, 0, 1, 1, 1.3, 0.5);
  try {
    c.validate();
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("T1"), std::string::npos);
  }
  EXPECT_THROW(make(-0.1, 0, 0, 1, 1, 0.5, 0.5).validate(), DomainError);
  HeraldConfig lossy = make(0.5, 0, 0, 1, 1, 0.5, 0.5);
  lossy.eta2 = 0.0;
  EXPECT_THROW(lossy.validate(), DomainError);
}

TEST(HeraldConfig, KindsAndParsing) {
  EXPECT_EQ(parse_kind("sym-pc"), OperationKind::SymPC);
  EXPECT_THROW((void)parse_kind("sym-xx"), DomainError);
  const HeraldConfig pa = config_from_kind(OperationKind::AsymPA, 2, 0.4, 0.3, 0.7);
  EXPECT_EQ(pa.m2, 2);
  EXPECT_EQ(pa.n2, 0);
  EXPECT_EQ(pa.T1, 1.0);
  EXPECT_EQ(pa.T2, 0.7);
  const HeraldConfig ps = config_from_kind(OperationKind::SymPS, 1, 0.4, 0.3, 0.7);
  EXPECT_EQ(ps.n1, 1);
  EXPECT_EQ(ps.n2, 1);
  const HeraldConfig pc12 = config_from_kind(parse_kind("asym-pc12"), 1, 0.4, 0.3, 0.7);
  EXPECT_EQ(pc12.m1, 1);
  EXPECT_EQ(pc12.n2, 2);
  EXPECT_EQ(pc12.T1, 0.3);
  EXPECT_THROW(config_from_kind(OperationKind::AsymPC12, 2, 0.4, 0.3, 0.7), DomainError);
}

TEST(Pipeline, MatchesClosedFormMatrices) {
  for (auto kind : kKinds)
    for (int n : {1, 2})
      for (double r : {0.1, 0.5, 1.0})
        for (double T : {0.5, 0.8, 0.95}) {
          const HeraldConfig cfg = config_from_kind(kind, n, r, T, T);
          const ResourceExponent a = resource_exponent(general_pipeline(cfg), cfg);
          const ResourceExponent b = closed_form_matrices(cfg);
          EXPECT_LT(max_abs(a.M1 - b.M1), 1e-12);
          EXPECT_LT(max_abs(a.M2 - b.M2), 1e-12);
          EXPECT_LT(max_abs(a.M3 - b.M3), 1e-12);
          EXPECT_LT(std::abs(a.prefactor_log - b.prefactor_log), 1e-12);
        }
}

TEST(Probability, FrozenNumberBasisValues) {
  // Reference values from an independent dense number-basis simulation (cutoff 24, 40 for r >= 0.7).
  struct Case {
    HeraldConfig cfg;
    double p;
  };
  const Case cases[] = {
      {make(0.5, 0, 0, 1, 1, 0.8, 0.8), 0.011867096364863},
      {make(0.5, 1, 1, 1, 1, 0.8, 0.6), 0.380051836631287},
      {make(0.3, 1, 1, 0, 0, 0.7, 0.7), 0.097444821862991},
      {make(0.5, 0, 1, 0, 1, 1.0, 0.6), 0.480905141052131},
      {make(0.8, 0, 0, 2, 2, 0.9, 0.9), 0.000253119912185697},
      {make(0.7, 0, 2, 0, 0, 1.0, 0.75), 0.103649591424551},
  };
  for (const auto& c : cases) {
    EXPECT_NEAR(success_probability(c.cfg), c.p, 1e-13);
    EXPECT_NEAR(closed_form_probability(c.cfg), c.p, 1e-13);
  }
}

TEST(Probability, StructuralZeros) {
  EXPECT_EQ(success_probability(make(0.0, 0, 0, 1, 1, 0.5, 0.5)), 0.0);
  EXPECT_EQ(success_probability(make(0.5, 0, 0, 1, 1, 1.0, 0.5)), 0.0);
  EXPECT_TRUE(structurally_zero(make(0.5, 1, 0, 0, 0, 0.5, 1.0)) == false);
  EXPECT_TRUE(structurally_zero(make(0.5, 0, 1, 0, 0, 0.5, 1.0)));
  HeraldConfig lossy = make(0.5, 1, 0, 0, 0, 1.0, 0.5);
  lossy.eta1 = 0.9;
  EXPECT_FALSE(structurally_zero(lossy));
  EXPECT_GT(success_probability(lossy), 0.0);
}

TEST(Probability, TmsvIsCertain) {
  EXPECT_NEAR(success_probability(config_from_kind(OperationKind::Tmsv, 1, 0.7, 1.0, 1.0)), 1.0, 1e-14);
}

TEST(Probability, SumsToOneOverPatterns) {
  // Vacuum ancillas: sum over detected (n1, n2) of P equals one. Missing weight is below tanh(0.1)^10.
  double total = 0.0;
  for (int n1 = 0; n1 <= 8; ++n1)
    for (int n2 = 0; n2 <= 8 - n1; ++n2) total += success_probability(make(0.1, 0, 0, n1, n2, 0.6, 0.7));
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(Probability, ArmSwapSymmetry) {
  const HeraldConfig c = make(0.6, 1, 0, 2, 1, 0.4, 0.7);
  EXPECT_NEAR(success_probability(c), success_probability(c.swapped()), 1e-14);
}

TEST(Probability, LossyDetectionIsMixtureOverLostPhotons) {
  // One detected photon at efficiency eta: sum_l C(1+l, l) eta (1-eta)^l P(n = 1 + l) at eta = 1.
  const double eta = 0.98;
  HeraldConfig lossy = make(0.5, 0, 0, 0, 1, 1.0, 0.6);
  lossy.eta2 = eta;
  double expected = 0.0;
  for (int l = 0; l < 8; ++l)
    expected += (1.0 + l) * eta * std::pow(1.0 - eta, l) * success_probability(make(0.5, 0, 0, 0, 1 + l, 1.0, 0.6));
  EXPECT_NEAR(success_probability(lossy), expected, 1e-12);
}

TEST(HeraldedState, NormalizedAtOrigin) {
  const HeraldedState s(make(0.5, 1, 1, 1, 1, 0.8, 0.6));
  EXPECT_NEAR(std::abs(s.char_value(0, 0, 0, 0) - Complex(1.0, 0.0)), 0.0, 1e-13);
  const HeraldedState z(make(0.0, 0, 0, 1, 1, 0.5, 0.5));
  EXPECT_TRUE(z.zero_probability());
  EXPECT_THROW((void)z.char_value(0, 0, 0, 0), ZeroProbabilityError);
}

TEST(EffectiveProbability, VacuumAncillasNeedNoSource) {
  const HeraldConfig ps = make(0.5, 0, 0, 1, 1, 0.8, 0.8);
  EXPECT_DOUBLE_EQ(effective_probability(ps, 0.5), success_probability(ps));
  const HeraldConfig pc = make(0.5, 1, 1, 1, 1, 0.8, 0.6);
  const double lam = std::tanh(0.5);
  const double prep = (1 - lam * lam) * lam * lam;
  EXPECT_NEAR(effective_probability(pc, 0.5), prep * prep * success_probability(pc), 1e-15);
}
