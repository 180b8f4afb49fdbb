#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ngtele/optimizer.hpp"
#include "ngtele/teleportation.hpp"

namespace ngtele {

inline constexpr int kPrintedDigits = 12;

/// %.12g, with "nan" for undefined values.
std::string format_number(double value);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Comma-separated table with '#' comment lines and LF endings.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells);
  [[nodiscard]] std::string str() const;
};

/// Inverse of CsvTable::str for the same dialect.
CsvTable parse_csv(const std::string& text);

CsvTable sweep_table(const std::vector<SweepRecord>& records, std::vector<std::string> comments = {});

nlohmann::ordered_json record_json(const SweepRecord& rec);
nlohmann::ordered_json fidelity_json(const FidelityResult& res, OperationKind kind, int n, const InputState& input,
                                     double probability_eff, double tmsv_fidelity);

}  // namespace ngtele
