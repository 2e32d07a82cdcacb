#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace toprot {

inline constexpr const char* kVersion = "0.1.0";

// Plot-ready rectangular table.  Doubles are printed with 15 significant
// digits so identical inputs give byte-identical files.
struct Table {
  using Cell = std::variant<double, std::int64_t, std::string>;

  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);

  // RFC-4180-style CSV: comma separated, '.' decimal point, header row,
  // LF line endings.
  void write_csv(std::ostream& os) const;

  // Single top-level object {"meta": ..., "rows": [...]}.
  void write_json(std::ostream& os, const nlohmann::json& meta) const;
};

std::string format_double(double v);

}  // namespace toprot
