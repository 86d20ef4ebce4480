#include "hweyl/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hweyl/errors.hpp"

namespace hweyl {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

nlohmann::json cell_json(const Cell& cell) {
  return std::visit(overloaded{[](const std::string& s) { return nlohmann::json(s); },
                               [](std::int64_t v) { return nlohmann::json(v); },
                               [](double v) { return nlohmann::json(v); },
                               [](const BigInt& z) { return nlohmann::json(z.get_str()); }},
                    cell);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match table header");
  rows.push_back(std::move(row));
}

std::string cell_text(const Cell& cell) {
  return std::visit(overloaded{[](const std::string& s) { return s; },
                               [](std::int64_t v) { return std::to_string(v); },
                               [](double v) { return format_double(v); },
                               [](const BigInt& z) { return z.get_str(); }},
                    cell);
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table, const nlohmann::json& config) {
  nlohmann::json doc;
  doc["config"] = config;
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
    doc["rows"].push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

std::string kind_name(EigenKind kind) {
  switch (kind) {
    case EigenKind::TypeA: return "a";
    case EigenKind::TypeB: return "b";
    case EigenKind::Mixed: return "a+b";
  }
  return "?";
}

std::string format_sources(const EigenvalueRecord& rec) {
  std::string out;
  for (const auto& src : rec.sources) {
    if (!out.empty()) out += ';';
    std::visit(overloaded{[&](const TypeASource& a) {
                            out += "a:" + std::to_string(a.n) + ":" + std::to_string(a.j);
                          },
                          [&](const TypeBSource& b) { out += "b:" + to_string(b.norm_sq); }},
               src);
  }
  return out;
}

Table spectrum_table(const std::vector<EigenvalueRecord>& records) {
  Table t{{"kind", "exact_value", "float_value", "multiplicity", "sources"}, {}};
  for (const auto& rec : records) {
    t.add_row({kind_name(rec.kind), to_string(rec.exact_value), rec.float_value, rec.multiplicity,
               format_sources(rec)});
  }
  return t;
}

nlohmann::json spectrum_json(const std::vector<EigenvalueRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& rec : records) {
    nlohmann::json sources = nlohmann::json::array();
    for (const auto& src : rec.sources) {
      std::visit(overloaded{[&](const TypeASource& a) {
                              sources.push_back({{"type", "a"},
                                                 {"n", a.n},
                                                 {"j", a.j},
                                                 {"multiplicity", a.multiplicity.get_str()}});
                            },
                            [&](const TypeBSource& b) {
                              sources.push_back({{"type", "b"},
                                                 {"norm_sq", to_string(b.norm_sq)},
                                                 {"multiplicity", b.multiplicity.get_str()}});
                            }},
                 src);
    }
    arr.push_back({{"kind", kind_name(rec.kind)},
                   {"exact_value", to_string(rec.exact_value)},
                   {"float_value", rec.float_value},
                   {"multiplicity", rec.multiplicity.get_str()},
                   {"sources", std::move(sources)}});
  }
  return arr;
}

void write_convergence_svg(std::ostream& out, const std::string& title, const std::vector<SvgSeries>& series,
                           double asymptote, const std::string& asymptote_label) {
  constexpr double W = 720, H = 440, left = 70, right = 170, top = 40, bottom = 50;
  static const char* colors[] = {"#1f77b4", "#2ca02c", "#9467bd", "#8c564b"};

  double xmin = INFINITY, xmax = -INFINITY, ymin = asymptote, ymax = asymptote;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0)) continue;
      xmin = std::min(xmin, std::log10(s.x[i]));
      xmax = std::max(xmax, std::log10(s.x[i]));
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!std::isfinite(xmin)) xmin = 0.0, xmax = 1.0;
  if (xmax - xmin < 1e-12) xmin -= 0.5, xmax += 0.5;
  if (ymax - ymin < 1e-12 * std::max(1.0, std::abs(ymax))) ymin -= 0.5, ymax += 0.5;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  auto px = [&](double lx) { return left + (lx - xmin) / (xmax - xmin) * (W - left - right); };
  auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * (H - top - bottom); };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << ' ' << H << "\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  out << "  <text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
      << xml_escape(title) << "</text>\n";
  out << "  <g stroke=\"black\" stroke-width=\"1\">\n";
  out << "    <line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\"" << H - bottom
      << "\"/>\n";
  out << "    <line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << H - bottom << "\"/>\n";
  out << "  </g>\n";
  out << "  <g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int k = static_cast<int>(std::ceil(xmin - 1e-9)); k <= static_cast<int>(std::floor(xmax + 1e-9)); ++k) {
    out << "    <text x=\"" << format_double(px(k)) << "\" y=\"" << H - bottom + 16
        << "\" text-anchor=\"middle\">1e" << k << "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double y = ymin + (ymax - ymin) * k / 4.0;
    std::ostringstream label;
    label.precision(4);
    label << y;
    out << "    <text x=\"" << left - 6 << "\" y=\"" << format_double(py(y) + 4) << "\" text-anchor=\"end\">"
        << label.str() << "</text>\n";
  }
  out << "    <text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\">lambda (log scale)</text>\n";
  out << "  </g>\n";

  out << "  <line class=\"asymptote\" x1=\"" << left << "\" y1=\"" << format_double(py(asymptote)) << "\" x2=\""
      << W - right << "\" y2=\"" << format_double(py(asymptote)) << "\" stroke=\"#d62728\" stroke-dasharray=\"6,4\"/>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    out << "  <polyline fill=\"none\" stroke=\"" << colors[s % 4] << "\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      if (!(series[s].x[i] > 0.0)) continue;
      out << (first ? "" : " ") << format_double(px(std::log10(series[s].x[i]))) << ','
          << format_double(py(series[s].y[i]));
      first = false;
    }
    out << "\"/>\n";
  }
  out << "  <g font-family=\"sans-serif\" font-size=\"12\">\n";
  double ly = top + 10;
  for (std::size_t s = 0; s < series.size(); ++s, ly += 18) {
    out << "    <text x=\"" << W - right + 12 << "\" y=\"" << ly << "\" fill=\"" << colors[s % 4] << "\">"
        << xml_escape(series[s].label) << "</text>\n";
  }
  out << "    <text x=\"" << W - right + 12 << "\" y=\"" << ly << "\" fill=\"#d62728\">" << xml_escape(asymptote_label)
      << "</text>\n";
  out << "  </g>\n";
  out << "</svg>\n";
}

}  // namespace hweyl
