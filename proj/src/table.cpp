#include "toprot/table.hpp"

#include <cstdio>

#include "toprot/errors.hpp"

namespace toprot {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != header.size()) {
    throw Error("table: row width does not match header");
  }
  rows.push_back(std::move(row));
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct CsvPrinter {
  std::ostream& os;
  void operator()(double v) const { os << format_double(v); }
  void operator()(std::int64_t v) const { os << v; }
  void operator()(const std::string& v) const { os << csv_escape(v); }
};

}  // namespace

void Table::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) os << ',';
    os << csv_escape(header[i]);
  }
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      std::visit(CsvPrinter{os}, row[i]);
    }
    os << '\n';
  }
}

void Table::write_json(std::ostream& os, const nlohmann::json& meta) const {
  nlohmann::json doc;
  doc["meta"] = meta;
  auto& out_rows = doc["rows"] = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit([&](const auto& v) { obj[header[i]] = v; }, row[i]);
    }
    out_rows.push_back(std::move(obj));
  }
  os << doc.dump(2) << '\n';
}

}  // namespace toprot
