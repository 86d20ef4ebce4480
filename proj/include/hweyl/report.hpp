#pragma once

// Tabular output shared by the CLI: CSV (comma, header row, LF), JSON
// ({"config": ..., "rows": [...]}) and a standalone SVG convergence chart.

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hweyl/rational.hpp"
#include "hweyl/spectrum.hpp"

namespace hweyl {

// Integers are written as JSON numbers, big integers and rationals as strings.
using Cell = std::variant<std::string, std::int64_t, double, BigInt>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

std::string cell_text(const Cell& cell);

void write_csv(std::ostream& out, const Table& table);
void write_json(std::ostream& out, const Table& table, const nlohmann::json& config);

// "a:n:j" / "b:num/den" joined with ';'.
std::string format_sources(const EigenvalueRecord& rec);
std::string kind_name(EigenKind kind);

Table spectrum_table(const std::vector<EigenvalueRecord>& records);
nlohmann::json spectrum_json(const std::vector<EigenvalueRecord>& records);

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Log-x line chart: one polyline per series plus a horizontal asymptote.
void write_convergence_svg(std::ostream& out, const std::string& title, const std::vector<SvgSeries>& series,
                           double asymptote, const std::string& asymptote_label);

}  // namespace hweyl
