#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace gaussdil {

// Tabular report: the one shape every subcommand emits. Cells keep their
// native type so JSON stays typed and CSV formatting is uniform.
struct Table {
  using Cell = std::variant<double, std::int64_t, std::uint64_t, bool,
                            std::string>;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

// Doubles with 17 significant digits ("%.17g", C locale): enough to
// round-trip any double bit-exactly.
std::string format_double(double v);

std::string to_csv(const Table& table);
nlohmann::json table_to_json(const Table& table);

// Writes via a temporary file in the same directory plus rename, so readers
// never observe a partial report.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace gaussdil
