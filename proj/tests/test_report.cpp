#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ngtele/errors.hpp"
#include "ngtele/report.hpp"
#include "ngtele/reproduce.hpp"
#include "ngtele/run_config.hpp"

using namespace ngtele;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Format, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(0.1234567890123456), "0.123456789012");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(std::stod(format_number(2.0 / 3.0)), std::stod("0.666666666667"));
}

TEST(Csv, RoundTrip) {
  const auto recs = sweep_squeezing(OperationKind::SymPC, 1, {0.2, 0.4}, {ObjectiveKind::DeltaF, Coherent{}});
  const CsvTable t = sweep_table(recs, {"kind: sym-pc"});
  const std::string text = t.str();
  EXPECT_EQ(text.find('\r'), std::string::npos);
  const CsvTable back = parse_csv(text);
  EXPECT_EQ(back.comments, t.comments);
  EXPECT_EQ(back.header, t.header);
  EXPECT_EQ(back.rows, t.rows);
  EXPECT_NEAR(std::stod(back.rows[1][4]), recs[1].delta_f, 1e-12 * std::abs(recs[1].delta_f));
}

TEST(Csv, RowWidthChecked) {
  CsvTable t;
  t.header = {"a", "b"};
  EXPECT_THROW(t.add_row({"1"}), DimensionError);
}

TEST(AtomicWrite, ReplacesFile) {
  const auto dir = std::filesystem::temp_directory_path() / "ngtele_report_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.csv";
  write_atomic(path, "first\n");
  write_atomic(path, "second\n");
  EXPECT_EQ(slurp(path), "second\n");
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove_all(dir);
}

TEST(RunConfig, ParsesKnownKeys) {
  const auto doc = nlohmann::json::parse(
      R"({"kind":"sym-pa","n":2,"r":0.4,"T1":0.8,"T2":0.7,"eta1":0.9,"input":"sqv","epsilon":1.7,"rGrid":"0.1:0.5:0.1"})");
  const RunConfig cfg = run_config_from_json(doc);
  const HeraldConfig h = resolve_herald(cfg);
  EXPECT_EQ(h.m1, 2);
  EXPECT_EQ(h.T2, 0.7);
  EXPECT_EQ(h.eta1, 0.9);
  EXPECT_EQ(h.eta2, 1.0);
  EXPECT_EQ(resolve_r_grid(cfg).size(), 5u);
  EXPECT_NEAR(std::get<SqueezedVacuum>(resolve_input(cfg)).epsilon, 1.7, 0);
}

TEST(RunConfig, RejectsUnknownKeyAndBadTypes) {
  EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"kind":"sym-ps","foo":1})")), DomainError);
  EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"r":"big"})")), DomainError);
  EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"n":1.5})")), DomainError);
}

TEST(RunConfig, ValidationErrorsNameTheField) {
  RunConfig cfg;
  cfg.kind = "sym-ps";
  cfg.r = 0.5;
  cfg.T1 = 0.5;
  try {
    (void)resolve_herald(cfg);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("T2", 0), 0u);
  }
  cfg.T2 = 1.5;
  EXPECT_THROW((void)resolve_herald(cfg), DomainError);
  cfg.input = "sqv";
  EXPECT_THROW((void)resolve_input(cfg), DomainError);
}

TEST(RunConfig, OverlayPrefersTop) {
  RunConfig base;
  base.r = 0.1;
  base.kind = "sym-ps";
  RunConfig top;
  top.r = 0.9;
  const RunConfig m = overlay(base, top);
  EXPECT_EQ(*m.r, 0.9);
  EXPECT_EQ(*m.kind, "sym-ps");
}

TEST(Reproduce, UnknownTarget) { EXPECT_THROW(reproduce("fig99"), DomainError); }

TEST(Reproduce, TableIsDeterministic) {
  const auto a = reproduce("table2");
  const auto b = reproduce("table2");
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].content, b[0].content);
  const CsvTable t = parse_csv(a[0].content);
  EXPECT_EQ(t.rows.size(), 3u);
}

TEST(Reproduce, TransmissivityProfileShape) {
  const auto files = reproduce("fig5");
  const CsvTable t = parse_csv(files.at(0).content);
  ASSERT_EQ(t.rows.size(), 100u);
  EXPECT_LT(std::stod(t.rows[98][2]), std::stod(t.rows[49][2]) / 10.0);
  EXPECT_GT(std::stod(t.rows[98][1]), std::stod(t.rows[49][1]));
}
