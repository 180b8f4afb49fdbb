#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ngtele {

struct OutputFile {
  std::string name;
  std::string content;
};

/// fig2 ... fig13, table2, table3.
const std::vector<std::string>& reproduce_targets();

/// Runs the fixed preset for `target` and returns one CSV per curve. Throws DomainError for unknown ids.
std::vector<OutputFile> reproduce(std::string_view target);

}  // namespace ngtele
