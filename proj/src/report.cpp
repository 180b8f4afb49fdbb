#include "ngtele/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "ngtele/errors.hpp"

namespace ngtele {

namespace {

std::string bool_cell(bool v) { return v ? "1" : "0"; }

std::string csv_safe(std::string text) {
  for (char& c : text)
    if (c == ',' || c == '\n' || c == '\r') c = ' ';
  return text;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return std::stod(format_number(v));
  return nullptr;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", kPrintedDigits, value);
  return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header.size()) throw DimensionError("CSV row width does not match the header");
  rows.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  auto join = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  for (const auto& c : comments) out += "# " + c + "\n";
  join(header);
  for (const auto& r : rows) join(r);
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      table.comments.push_back(line.size() > 2 ? line.substr(2) : "");
    } else if (!have_header) {
      table.header = split(line);
      have_header = true;
    } else {
      table.add_row(split(line));
    }
  }
  return table;
}

CsvTable sweep_table(const std::vector<SweepRecord>& records, std::vector<std::string> comments) {
  CsvTable t;
  t.comments = std::move(comments);
  t.header = {"r", "T1", "T2", "F", "deltaF", "P", "P_eff", "objective", "boundary", "degenerate", "error"};
  for (const auto& rec : records) {
    t.add_row({format_number(rec.r), format_number(rec.T1), format_number(rec.T2), format_number(rec.fidelity),
               format_number(rec.delta_f), format_number(rec.probability), format_number(rec.probability_eff),
               format_number(rec.objective_value), bool_cell(rec.boundary), bool_cell(rec.degenerate),
               csv_safe(rec.error)});
  }
  return t;
}

nlohmann::ordered_json record_json(const SweepRecord& rec) {
  nlohmann::ordered_json j;
  j["kind"] = std::string(to_string(rec.kind));
  j["n"] = rec.n;
  j["input"] = rec.input;
  j["objective"] = std::string(to_string(rec.objective));
  j["r"] = number(rec.r);
  j["T1"] = number(rec.T1);
  j["T2"] = number(rec.T2);
  j["fidelity"] = number(rec.fidelity);
  j["deltaF"] = number(rec.delta_f);
  j["probability"] = number(rec.probability);
  j["probabilityEff"] = number(rec.probability_eff);
  j["objectiveValue"] = number(rec.objective_value);
  j["boundary"] = rec.boundary;
  j["degenerate"] = rec.degenerate;
  if (!rec.error.empty()) j["error"] = rec.error;
  return j;
}

nlohmann::ordered_json fidelity_json(const FidelityResult& res, OperationKind kind, int n, const InputState& input,
                                     double probability_eff, double tmsv_fidelity) {
  nlohmann::ordered_json j;
  j["kind"] = std::string(to_string(kind));
  j["n"] = n;
  j["input"] = describe(input);
  j["r"] = number(res.config.r);
  j["T1"] = number(res.config.T1);
  j["T2"] = number(res.config.T2);
  j["eta1"] = number(res.config.eta1);
  j["eta2"] = number(res.config.eta2);
  j["fidelity"] = number(res.fidelity);
  j["probability"] = number(res.probability);
  j["probabilityEff"] = number(probability_eff);
  j["deltaF"] = number(res.delta_f);
  j["fidelityTmsv"] = number(tmsv_fidelity);
  j["classification"] = std::string(to_string(classify_fidelity(res.fidelity)));
  j["method"] = std::string(to_string(res.method));
  return j;
}

}  // namespace ngtele
