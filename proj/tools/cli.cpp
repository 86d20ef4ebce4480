#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hweyl/errors.hpp"
#include "hweyl/forms.hpp"
#include "hweyl/heat.hpp"
#include "hweyl/quotient.hpp"
#include "hweyl/report.hpp"
#include "hweyl/spectrum.hpp"
#include "hweyl/weyl.hpp"

namespace hweyl::cli {

namespace {

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "csv";
  std::string out_path;
  std::uint64_t budget = kDefaultBudget;
  std::string budget_text;
  double tol = 1e-10;

  int d = 1;
  std::string ell;
  std::string c = "1";
  std::string quotient_file;

  std::string alpha = "0";
  std::string forms;
  std::vector<std::string> lambdas;
  std::vector<std::string> lambda_units;
  std::string lambda_max;
  std::string lambda_max_units;
  std::vector<std::string> times;
  std::string decades;
  std::string svg_path;
  std::vector<std::string> heat_times;
  double pass_threshold = 0.05;
};

// Accepts 1e9 as well as 1000000000.
std::uint64_t parse_budget(const std::string& text) {
  Rational v = parse_rational(text);
  if (v.get_den() != 1 || v < 1 || !v.get_num().fits_ulong_p()) {
    throw ValidationError("--budget must be a positive integer, got '" + text + "'");
  }
  return v.get_num().get_ui();
}

std::vector<std::int64_t> parse_ell(const std::string& text, int d) {
  if (text.empty()) return std::vector<std::int64_t>(static_cast<std::size_t>(std::max(d, 0)), 1);
  std::vector<std::int64_t> ell;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Rational v = parse_rational(item);
    if (v.get_den() != 1 || !v.get_num().fits_slong_p()) throw ValidationError("ell entries must be integers");
    ell.push_back(v.get_num().get_si());
  }
  return ell;
}

QuotientGeometry load_quotient(const Options& o) {
  if (!o.quotient_file.empty()) {
    std::ifstream in(o.quotient_file);
    if (!in) throw ValidationError("cannot open quotient file '" + o.quotient_file + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("cannot parse quotient file: ") + e.what());
    }
    return quotient_from_json(j);
  }
  return make_quotient(o.d, parse_ell(o.ell, o.d), parse_rational(o.c));
}

double parse_real(const std::string& text) { return to_double(parse_rational(text)); }

// Positive and strictly ascending; time grids may instead run strictly
// downwards since t -> 0+ is the interesting direction.
std::vector<double> parse_grid(const std::vector<std::string>& items, const char* what,
                               bool allow_descending = false) {
  std::vector<double> grid;
  for (const auto& s : items) grid.push_back(parse_real(s));
  const bool descending = allow_descending && grid.size() > 1 && grid[1] < grid[0];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw ValidationError(std::string(what) + " values must be positive");
    if (i > 0 && !(descending ? grid[i] < grid[i - 1] : grid[i] > grid[i - 1])) {
      throw ValidationError(std::string(what) + " values must be strictly monotone");
    }
  }
  return grid;
}

std::string join_ell(const std::vector<std::int64_t>& ell) {
  std::string s;
  for (std::size_t i = 0; i < ell.size(); ++i) s += (i ? ";" : "") + std::to_string(ell[i]);
  return s;
}

std::string join_diag(const DiagonalLattice& lat) {
  std::string s;
  for (std::size_t i = 0; i < lat.dim(); ++i) s += (i ? ";" : "") + to_string(lat.diag[i]);
  return s;
}

nlohmann::json config_json(const Options& o, const QuotientGeometry* q, const std::string& command) {
  nlohmann::json cfg;
  cfg["command"] = command;
  if (q) cfg["quotient"] = to_json(*q);
  cfg["budget"] = o.budget;
  cfg["tol"] = o.tol;
  return cfg;
}

class Output {
 public:
  Output(const Options& o, std::ostream& fallback) : fallback_(fallback) {
    if (!o.out_path.empty()) {
      file_.open(o.out_path);
      if (!file_) throw ValidationError("cannot write '" + o.out_path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void emit(const Options& o, const Table& table, const nlohmann::json& config, std::ostream& out,
          std::ostream& err) {
  Output sink(o, out);
  if (o.format == "json") {
    write_json(sink.stream(), table, config);
  } else {
    err << "# " << config.dump() << '\n';
    write_csv(sink.stream(), table);
  }
}

void cmd_quotient(const Options& o, std::ostream& out, std::ostream& err) {
  const QuotientGeometry q = load_quotient(o);
  const DiagonalLattice lat = projected_lattice(q);
  Table t{{"d", "ell", "c", "L", "volume", "lattice", "dual_lattice"}, {}};
  t.add_row({std::int64_t{q.d()}, join_ell(q.ell()), to_string(q.c()), q.L(), to_string(q.volume()),
             join_diag(lat), join_diag(dual_lattice(lat))});
  emit(o, t, config_json(o, &q, "quotient"), out, err);
}

void cmd_enumerate(const Options& o, std::ostream& out, std::ostream& err) {
  const QuotientGeometry q = load_quotient(o);
  const Rational alpha = parse_rational(o.alpha);
  if (o.lambda_max.empty() == o.lambda_max_units.empty()) {
    throw ValidationError("give exactly one of --lambda-max / --lambda-max-units");
  }
  const Threshold thr = o.lambda_max.empty() ? Threshold::in_units(parse_rational(o.lambda_max_units), q)
                                             : Threshold::absolute(parse_real(o.lambda_max), q);
  const auto records = enumerate_spectrum(q, alpha, thr, CountOptions{o.budget});
  auto cfg = config_json(o, &q, "enumerate");
  cfg["alpha"] = to_string(alpha);
  cfg["lambda_max"] = thr.absolute_value();
  if (o.format == "json") {
    Output sink(o, out);
    nlohmann::json doc{{"config", cfg}, {"rows", spectrum_json(records)}};
    sink.stream() << doc.dump(2) << '\n';
  } else {
    emit(o, spectrum_table(records), cfg, out, err);
  }
}

void cmd_count(const Options& o, std::ostream& out, std::ostream& err) {
  const QuotientGeometry q = load_quotient(o);
  if (o.lambdas.empty() == o.lambda_units.empty()) {
    throw ValidationError("give exactly one of --lambda / --lambda-units");
  }
  std::vector<Threshold> thresholds;
  if (!o.lambdas.empty()) {
    for (double l : parse_grid(o.lambdas, "lambda")) thresholds.push_back(Threshold::absolute(l, q));
  } else {
    Rational prev = 0;
    for (const auto& s : o.lambda_units) {
      Rational x = parse_rational(s);
      if (x <= prev) throw ValidationError("lambda values must be positive and ascending");
      prev = x;
      thresholds.push_back(Threshold::in_units(x, q));
    }
  }

  std::optional<FormDegree> deg;
  Rational alpha = parse_rational(o.alpha);
  if (!o.forms.empty()) {
    auto comma = o.forms.find(',');
    if (comma == std::string::npos) throw ValidationError("--forms expects p,q");
    deg.emplace(q.d(), std::stoi(o.forms.substr(0, comma)), std::stoi(o.forms.substr(comma + 1)));
  }

  Table t{{"lambda", "n_a", "n_b", "n_total", "ratio"}, {}};
  if (deg) t.columns.insert(t.columns.begin(), {"p", "q"});
  const CountOptions opts{o.budget};
  for (const auto& thr : thresholds) {
    SpectralCount c = deg ? box_b_count(q, *deg, thr, opts) : count_total(q, alpha, thr, opts);
    std::vector<Cell> row{c.lambda, c.n_a, c.n_b, c.n_total, c.normalized_ratio};
    if (deg) row.insert(row.begin(), {std::int64_t{deg->p()}, std::int64_t{deg->q()}});
    t.add_row(std::move(row));
  }
  auto cfg = config_json(o, &q, "count");
  if (deg) {
    cfg["forms"] = {deg->p(), deg->q()};
  } else {
    cfg["alpha"] = to_string(alpha);
  }
  emit(o, t, cfg, out, err);
}

void cmd_heat(const Options& o, std::ostream& out, std::ostream& err) {
  const QuotientGeometry q = load_quotient(o);
  const double alpha = parse_real(o.alpha);
  const auto times = parse_grid(o.times, "t", true);
  if (times.empty()) throw ValidationError("--t needs at least one value");
  const double tol = std::max(o.tol, 1e-15);
  Table t{{"t", "g", "scaled", "truncation_bound"}, {}};
  for (const auto& p : scaled_trace_sequence(q, alpha, times, tol)) t.add_row({p.t, p.g, p.scaled, p.truncation_bound});
  auto cfg = config_json(o, &q, "heat");
  cfg["alpha"] = alpha;
  emit(o, t, cfg, out, err);
}

void cmd_constant(const Options& o, std::ostream& out, std::ostream& err) {
  const double alpha = parse_real(o.alpha);
  const WeylConstant w = weyl_constant(o.d, alpha, o.tol);
  Table t{{"d", "alpha", "value", "quadrature_error"}, {}};
  t.add_row({std::int64_t{w.d}, w.alpha, w.value, w.quadrature_error});
  auto cfg = config_json(o, nullptr, "constant");
  cfg["d"] = o.d;
  cfg["alpha"] = alpha;
  emit(o, t, cfg, out, err);
}

void cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const QuotientGeometry q = load_quotient(o);
  const Rational alpha = parse_rational(o.alpha);
  auto colon = o.decades.find(':');
  if (colon == std::string::npos) throw ValidationError("--lambda-decades expects a:b");
  const int lo = std::stoi(o.decades.substr(0, colon));
  const int hi = std::stoi(o.decades.substr(colon + 1));
  if (lo >= hi) throw ValidationError("--lambda-decades needs a < b");
  if (lo < -300 || hi > 300) throw ValidationError("--lambda-decades out of range");
  std::vector<double> lambdas;
  for (int k = lo; k <= hi; ++k) lambdas.push_back(std::pow(10.0, k));
  const auto heat_times = parse_grid(o.heat_times, "t", true);

  const auto rows = convergence_report(q, alpha, lambdas, o.tol, CountOptions{o.budget});
  Table t{{"route", "lambda", "N_a", "N_b", "N", "ratio", "target", "rel_error"}, {}};
  for (const auto& r : rows) {
    t.add_row({std::string("count"), r.lambda, r.n_a, r.n_b, r.n_total, r.ratio, r.target, r.rel_error});
  }
  if (!heat_times.empty()) {
    // Karamata: t^(d+1) G(t) -> Gamma(d+2) C vol(M); the lambda column holds t.
    double gamma = 1.0;
    for (int k = 2; k <= q.d() + 1; ++k) gamma *= k;
    const double target = gamma * rows.front().target;
    for (const auto& p : scaled_trace_sequence(q, to_double(alpha), heat_times, 1e-14)) {
      t.add_row({std::string("heat"), p.t, std::string(), std::string(), std::string(), p.scaled, target,
                 p.scaled / target - 1.0});
    }
  }

  auto cfg = config_json(o, &q, "verify");
  cfg["alpha"] = to_string(alpha);
  cfg["lambda_decades"] = o.decades;
  cfg["pass_threshold"] = o.pass_threshold;

  auto write_svg = [&](std::ostream& s) {
    SvgSeries total{"N(lambda)/lambda^(d+1)", {}, {}};
    SvgSeries type_a{"N_a(lambda)/lambda^(d+1)", {}, {}};
    for (const auto& r : rows) {
      total.x.push_back(r.lambda);
      total.y.push_back(r.ratio);
      type_a.x.push_back(r.lambda);
      type_a.y.push_back(r.n_a.get_d() / std::pow(r.lambda, q.d() + 1));
    }
    std::ostringstream title;
    title << "Weyl convergence, d=" << q.d() << ", alpha=" << to_string(alpha);
    write_convergence_svg(s, title.str(), {total, type_a}, rows.front().target, "C vol(M)");
  };
  if (!o.svg_path.empty()) {
    std::ofstream svg(o.svg_path);
    if (!svg) throw ValidationError("cannot write '" + o.svg_path + "'");
    write_svg(svg);
  }
  if (o.format == "svg") {
    Output sink(o, out);
    write_svg(sink.stream());
  } else {
    emit(o, t, cfg, out, err);
  }

  const double final_error = std::abs(rows.back().rel_error);
  if (!(final_error < o.pass_threshold)) {
    throw VerificationFailure("final |rel_error| = " + format_double(final_error) + " not below threshold " +
                              format_double(o.pass_threshold));
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Spectra and Weyl asymptotics of L_alpha on compact Heisenberg quotients", "hweyl"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--out", o.out_path, "Write the report to PATH instead of stdout");
  app.add_option("--budget", o.budget_text, "Enumeration cap (lattice points, n-shells, sources)");
  app.add_option("--tol", o.tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--d", o.d, "Complex dimension d");
  app.add_option("--ell", o.ell, "Divisor chain ell_1,...,ell_d (default all ones)");
  app.add_option("--c", o.c, "Center generator c as num/den");
  app.add_option("--quotient", o.quotient_file, "Quotient JSON file {\"d\",\"ell\",\"c\"}");

  auto* quotient = app.add_subcommand("quotient", "Summarize a quotient: L, volume, lattice and dual");

  auto* enumerate = app.add_subcommand("enumerate", "List merged eigenvalues up to a threshold");
  enumerate->add_option("--alpha", o.alpha, "Rational alpha in [-d, d]");
  enumerate->add_option("--lambda-max", o.lambda_max, "Absolute threshold");
  enumerate->add_option("--lambda-max-units", o.lambda_max_units, "Threshold in units of pi/(2c)");

  auto* count = app.add_subcommand("count", "Counting function N_a, N_b, N at thresholds");
  auto* count_alpha = count->add_option("--alpha", o.alpha, "Rational alpha in [-d, d]");
  count->add_option("--forms", o.forms, "Kohn Laplacian on (p,q)-forms, given as p,q")->excludes(count_alpha);
  count->add_option("--lambda", o.lambdas, "Absolute thresholds")->delimiter(',');
  count->add_option("--lambda-units", o.lambda_units, "Thresholds in units of pi/(2c)")->delimiter(',');

  auto* heat = app.add_subcommand("heat", "Type (a) heat trace G(t) and t^(d+1) G(t)");
  heat->add_option("--alpha", o.alpha, "alpha in [-d, d]");
  heat->add_option("--t", o.times, "Times t")->delimiter(',')->required();

  auto* constant = app.add_subcommand("constant", "Weyl constant C_{d,alpha}");
  constant->add_option("--alpha", o.alpha, "alpha in [-d, d]");

  auto* verify = app.add_subcommand("verify", "Compare N(lambda)/lambda^(d+1) with C_{d,alpha} vol(M)");
  verify->add_option("--alpha", o.alpha, "Rational alpha in [-d, d]");
  verify->add_option("--lambda-decades", o.decades, "Decade range a:b, lambda = 10^a ... 10^b")->required();
  verify->add_option("--svg", o.svg_path, "Also write the convergence chart to PATH");
  verify->add_option("--heat", o.heat_times, "Append the heat-trace cross-check at these t")->delimiter(',');
  verify->add_option("--pass-threshold", o.pass_threshold, "Required final |rel_error|");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  try {
    if (!o.budget_text.empty()) o.budget = parse_budget(o.budget_text);
    if (o.format == "svg" && !verify->parsed()) throw ValidationError("--format svg is only supported by verify");
    if (quotient->parsed()) cmd_quotient(o, out, err);
    if (enumerate->parsed()) cmd_enumerate(o, out, err);
    if (count->parsed()) cmd_count(o, out, err);
    if (heat->parsed()) cmd_heat(o, out, err);
    if (constant->parsed()) cmd_constant(o, out, err);
    if (verify->parsed()) cmd_verify(o, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  } catch (const QuadratureError& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kSuccess;
}

}  // namespace hweyl::cli
