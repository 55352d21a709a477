#include "sphint/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "sphint/error.hpp"

namespace sphint {
namespace {

bool needs_quotes(const std::string& s) {
  return s.find_first_of(",\"\n") != std::string::npos;
}

std::string quote(const std::string& s) {
  if (!needs_quotes(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw Error("expected true/false, got '" + s + "'");
}

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

void require_columns(const CsvDocument& doc, std::initializer_list<const char*> names) {
  for (const char* name : names) doc.column_index(name);
}

}  // namespace

void CsvDocument::set_meta(const std::string& key, std::string value) {
  for (auto& [k, v] : meta) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  meta.emplace_back(key, std::move(value));
}

const std::string& CsvDocument::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta) {
    if (k == key) return v;
  }
  throw Error("CSV metadata has no key '" + key + "'");
}

bool CsvDocument::has_meta(const std::string& key) const {
  return std::any_of(meta.begin(), meta.end(), [&](const auto& kv) { return kv.first == key; });
}

std::size_t CsvDocument::column_index(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw Error("CSV has no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw Error("cannot parse number '" + s + "'");
  return v;
}

std::int64_t parse_int(const std::string& s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw Error("cannot parse integer '" + s + "'");
  return v;
}

void write_csv(std::ostream& out, const CsvDocument& doc) {
  out << "# schema-version: " << kCsvSchemaVersion << "\n";
  for (const auto& [k, v] : doc.meta) out << "# " << k << ": " << v << "\n";
  for (std::size_t i = 0; i < doc.columns.size(); ++i) out << (i ? "," : "") << quote(doc.columns[i]);
  out << "\n";
  for (const auto& row : doc.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << quote(row[i]);
    out << "\n";
  }
}

CsvDocument parse_csv(std::istream& in) {
  CsvDocument doc;
  std::string line;
  bool schema_seen = false;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto colon = line.find(": ", 2);
      if (colon == std::string::npos) continue;
      const std::string key = line.substr(2, colon - 2);
      const std::string value = line.substr(colon + 2);
      if (key == "schema-version") {
        if (parse_int(value) != kCsvSchemaVersion) throw Error("unsupported CSV schema version " + value);
        schema_seen = true;
      } else {
        doc.meta.emplace_back(key, value);
      }
      continue;
    }
    if (!header_seen) {
      doc.columns = split_row(line);
      header_seen = true;
      continue;
    }
    auto row = split_row(line);
    if (row.size() != doc.columns.size()) throw Error("CSV row has the wrong number of fields: " + line);
    doc.rows.push_back(std::move(row));
  }
  if (!schema_seen) throw Error("CSV lacks a schema-version line");
  if (!header_seen) throw Error("CSV lacks a header row");
  return doc;
}

// Convergence ----------------------------------------------------------------

CsvDocument to_csv(const ConvergenceReport& report) {
  CsvDocument doc;
  doc.set_meta("report", "poincare");
  doc.set_meta("function", report.function_name);
  doc.set_meta("k", std::to_string(report.k));
  doc.set_meta("gaussian_provenance", report.gaussian_provenance);
  doc.set_meta("tolerance", format_double(report.tolerance));
  doc.set_meta("verdict", to_string(report.verdict));
  doc.columns = {"n", "spherical", "gaussian", "abs_error"};
  for (std::size_t i = 0; i < report.n_grid.size(); ++i) {
    doc.rows.push_back({std::to_string(report.n_grid[i]), format_double(report.spherical_values[i]),
                        format_double(report.gaussian_value), format_double(report.abs_errors[i])});
  }
  return doc;
}

ConvergenceReport convergence_report_from_csv(const CsvDocument& doc) {
  require_columns(doc, {"n", "spherical", "gaussian", "abs_error"});
  ConvergenceReport report;
  report.function_name = doc.meta_value("function");
  report.k = static_cast<int>(parse_int(doc.meta_value("k")));
  report.gaussian_provenance = doc.meta_value("gaussian_provenance");
  report.tolerance = parse_double(doc.meta_value("tolerance"));
  report.verdict = verdict_from_string(doc.meta_value("verdict"));
  const auto n = doc.column_index("n");
  const auto s = doc.column_index("spherical");
  const auto g = doc.column_index("gaussian");
  const auto e = doc.column_index("abs_error");
  for (const auto& row : doc.rows) {
    report.n_grid.push_back(parse_int(row[n]));
    report.spherical_values.push_back(parse_double(row[s]));
    report.gaussian_value = parse_double(row[g]);
    report.abs_errors.push_back(parse_double(row[e]));
  }
  return report;
}

nlohmann::json to_json(const ConvergenceReport& report) {
  nlohmann::json j;
  j["report"] = "poincare";
  j["function"] = report.function_name;
  j["k"] = report.k;
  j["n_grid"] = report.n_grid;
  j["spherical_values"] = nlohmann::json::array();
  j["abs_errors"] = nlohmann::json::array();
  for (double v : report.spherical_values) j["spherical_values"].push_back(number(v));
  for (double v : report.abs_errors) j["abs_errors"].push_back(number(v));
  j["gaussian"] = {{"value", number(report.gaussian_value)}, {"provenance", report.gaussian_provenance}};
  j["tolerance"] = report.tolerance;
  j["verdict"] = to_string(report.verdict);
  return j;
}

// Tail matrix ----------------------------------------------------------------

CsvDocument to_csv(const TailMatrix& matrix, const TailVerdict* verdict) {
  CsvDocument doc;
  doc.set_meta("report", "tail");
  doc.set_meta("function", matrix.function_name);
  doc.set_meta("method", matrix.method);
  if (verdict) {
    doc.set_meta("double_limit_zero", bool_text(verdict->double_limit_zero));
    doc.set_meta("diagnosis", verdict->diagnosis);
  }
  doc.columns = {"m", "n", "value"};
  for (std::size_t mi = 0; mi < matrix.m_grid.size(); ++mi) {
    for (std::size_t ni = 0; ni < matrix.n_grid.size(); ++ni) {
      doc.rows.push_back({format_double(matrix.m_grid[mi]), std::to_string(matrix.n_grid[ni]),
                          format_double(matrix.at(mi, ni))});
    }
  }
  return doc;
}

TailMatrix tail_matrix_from_csv(const CsvDocument& doc) {
  require_columns(doc, {"m", "n", "value"});
  TailMatrix matrix;
  matrix.function_name = doc.meta_value("function");
  matrix.method = doc.meta_value("method");
  const auto m = doc.column_index("m");
  const auto n = doc.column_index("n");
  const auto v = doc.column_index("value");
  for (const auto& row : doc.rows) {
    const double mv = parse_double(row[m]);
    const std::int64_t nv = parse_int(row[n]);
    if (std::find(matrix.m_grid.begin(), matrix.m_grid.end(), mv) == matrix.m_grid.end()) matrix.m_grid.push_back(mv);
    if (std::find(matrix.n_grid.begin(), matrix.n_grid.end(), nv) == matrix.n_grid.end()) matrix.n_grid.push_back(nv);
    matrix.values.push_back(parse_double(row[v]));
  }
  if (matrix.values.size() != matrix.m_grid.size() * matrix.n_grid.size()) {
    throw Error("tail CSV does not hold a full m x n grid");
  }
  return matrix;
}

nlohmann::json to_json(const TailMatrix& matrix, const TailVerdict* verdict) {
  nlohmann::json j;
  j["report"] = "tail";
  j["function"] = matrix.function_name;
  j["method"] = matrix.method;
  j["m_grid"] = matrix.m_grid;
  j["n_grid"] = matrix.n_grid;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t mi = 0; mi < matrix.m_grid.size(); ++mi) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t ni = 0; ni < matrix.n_grid.size(); ++ni) row.push_back(number(matrix.at(mi, ni)));
    rows.push_back(row);
  }
  j["values"] = rows;
  if (verdict) {
    j["verdict"] = {{"double_limit_zero", verdict->double_limit_zero},
                    {"diagnosis", verdict->diagnosis},
                    {"column_limits", verdict->column_limits},
                    {"witness", {{"m", verdict->witness_m}, {"n", verdict->witness_n}, {"value", verdict->witness_value}}}};
  }
  return j;
}

// Bound reports ----------------------------------------------------------------

CsvDocument to_csv(const std::vector<BoundReport>& reports) {
  CsvDocument doc;
  doc.set_meta("report", "inequality");
  doc.columns = {"function", "n", "k", "p", "q", "t_star", "a_coeff", "theta",
                 "coefficient", "lp_norm", "lhs", "rhs", "holds"};
  for (const auto& r : reports) {
    doc.rows.push_back({r.function_name, std::to_string(r.n), std::to_string(r.k), format_double(r.p),
                        format_double(r.q), format_double(r.t_star), format_double(r.a_coeff),
                        format_double(r.theta), format_double(r.coefficient), format_double(r.lp_norm),
                        format_double(r.lhs), format_double(r.rhs), bool_text(r.holds)});
  }
  return doc;
}

std::vector<BoundReport> bound_reports_from_csv(const CsvDocument& doc) {
  std::vector<BoundReport> out;
  auto col = [&](const char* name) { return doc.column_index(name); };
  const auto fn = col("function"), n = col("n"), k = col("k"), p = col("p"), q = col("q"), t = col("t_star"),
             a = col("a_coeff"), th = col("theta"), c = col("coefficient"), lp = col("lp_norm"),
             lhs = col("lhs"), rhs = col("rhs"), holds = col("holds");
  for (const auto& row : doc.rows) {
    BoundReport r;
    r.function_name = row[fn];
    r.n = parse_int(row[n]);
    r.k = parse_int(row[k]);
    r.p = parse_double(row[p]);
    r.q = parse_double(row[q]);
    r.t_star = parse_double(row[t]);
    r.a_coeff = parse_double(row[a]);
    r.theta = parse_double(row[th]);
    r.coefficient = parse_double(row[c]);
    r.lp_norm = parse_double(row[lp]);
    r.lhs = parse_double(row[lhs]);
    r.rhs = parse_double(row[rhs]);
    r.holds = parse_bool(row[holds]);
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json to_json(const std::vector<BoundReport>& reports) {
  nlohmann::json j;
  j["report"] = "inequality";
  j["checks"] = nlohmann::json::array();
  for (const auto& r : reports) {
    j["checks"].push_back({{"function", r.function_name},
                           {"n", r.n},
                           {"k", r.k},
                           {"p", r.p},
                           {"q", r.q},
                           {"certificate", {{"t_star", r.t_star}, {"a_coeff", r.a_coeff}, {"theta", number(r.theta)}}},
                           {"coefficient", r.coefficient},
                           {"lp_norm", r.lp_norm},
                           {"lhs", r.lhs},
                           {"rhs", r.rhs},
                           {"holds", r.holds}});
  }
  return j;
}

// Epsilon certificate ------------------------------------------------------------

CsvDocument to_csv(const EpsilonCertificate& cert) {
  CsvDocument doc;
  doc.set_meta("report", "epsilon-dim");
  doc.set_meta("p", format_double(cert.p));
  doc.set_meta("k", std::to_string(cert.k));
  doc.set_meta("epsilon", format_double(cert.epsilon));
  doc.set_meta("n", std::to_string(cert.n));
  doc.set_meta("t", format_double(cert.t));
  doc.set_meta("a_coeff", format_double(cert.a_coeff));
  doc.set_meta("theta", format_double(cert.theta));
  doc.set_meta("coefficient", format_double(cert.coefficient));
  doc.columns = {"n", "coefficient"};
  for (const auto& [n, c] : cert.trace) doc.rows.push_back({std::to_string(n), format_double(c)});
  return doc;
}

EpsilonCertificate epsilon_certificate_from_csv(const CsvDocument& doc) {
  EpsilonCertificate cert;
  cert.p = parse_double(doc.meta_value("p"));
  cert.k = parse_int(doc.meta_value("k"));
  cert.epsilon = parse_double(doc.meta_value("epsilon"));
  cert.n = parse_int(doc.meta_value("n"));
  cert.t = parse_double(doc.meta_value("t"));
  cert.a_coeff = parse_double(doc.meta_value("a_coeff"));
  cert.theta = parse_double(doc.meta_value("theta"));
  cert.coefficient = parse_double(doc.meta_value("coefficient"));
  const auto n = doc.column_index("n");
  const auto c = doc.column_index("coefficient");
  for (const auto& row : doc.rows) cert.trace.emplace_back(parse_int(row[n]), parse_double(row[c]));
  return cert;
}

nlohmann::json to_json(const EpsilonCertificate& cert) {
  nlohmann::json j;
  j["report"] = "epsilon-dim";
  j["p"] = cert.p;
  j["k"] = cert.k;
  j["epsilon"] = number(cert.epsilon);
  j["n"] = cert.n;
  j["certificate"] = {{"t", cert.t}, {"a_coeff", cert.a_coeff}, {"theta", number(cert.theta)},
                      {"coefficient", cert.coefficient}};
  j["trace"] = nlohmann::json::array();
  for (const auto& [n, c] : cert.trace) j["trace"].push_back({{"n", n}, {"coefficient", c}});
  return j;
}

// Decay --------------------------------------------------------------------------

CsvDocument to_csv(const riemann_lebesgue::DecayReport& report) {
  CsvDocument doc;
  doc.set_meta("report", "rl");
  doc.set_meta("function", report.function_name);
  doc.set_meta("kind", riemann_lebesgue::to_string(report.kind));
  doc.set_meta("slope", format_double(report.slope));
  doc.set_meta("decaying", bool_text(report.decaying));
  doc.columns = {"n", "value", "abs_value"};
  for (std::size_t i = 0; i < report.n_grid.size(); ++i) {
    doc.rows.push_back({std::to_string(report.n_grid[i]), format_double(report.values[i]),
                        format_double(report.abs_values[i])});
  }
  return doc;
}

riemann_lebesgue::DecayReport decay_report_from_csv(const CsvDocument& doc) {
  riemann_lebesgue::DecayReport report;
  report.function_name = doc.meta_value("function");
  report.kind = riemann_lebesgue::kind_from_string(doc.meta_value("kind"));
  report.slope = parse_double(doc.meta_value("slope"));
  report.decaying = parse_bool(doc.meta_value("decaying"));
  const auto n = doc.column_index("n");
  const auto v = doc.column_index("value");
  const auto a = doc.column_index("abs_value");
  for (const auto& row : doc.rows) {
    report.n_grid.push_back(parse_int(row[n]));
    report.values.push_back(parse_double(row[v]));
    report.abs_values.push_back(parse_double(row[a]));
  }
  return report;
}

nlohmann::json to_json(const riemann_lebesgue::DecayReport& report) {
  nlohmann::json j;
  j["report"] = "rl";
  j["function"] = report.function_name;
  j["kind"] = riemann_lebesgue::to_string(report.kind);
  j["n_grid"] = report.n_grid;
  j["values"] = report.values;
  j["abs_values"] = report.abs_values;
  j["slope"] = number(report.slope);
  j["decaying"] = report.decaying;
  return j;
}

// Gas ------------------------------------------------------------------------------

CsvDocument to_csv(const GasSamples& gas, const KsReport& ks, const SpeedStatistics& speeds) {
  CsvDocument doc;
  doc.set_meta("report", "gas");
  doc.set_meta("particles", std::to_string(gas.config.particles));
  doc.set_meta("samples", std::to_string(gas.config.samples));
  doc.set_meta("seed", std::to_string(gas.config.seed));
  doc.set_meta("energy_check", bool_text(gas.energy_check));
  doc.set_meta("ks_statistic", format_double(ks.statistic));
  doc.set_meta("ks_critical", format_double(ks.critical));
  doc.set_meta("ks_pass", ks.defined ? bool_text(ks.pass) : "undefined");
  doc.set_meta("mean_speed", format_double(speeds.mean_speed));
  doc.set_meta("mean_speed_se", format_double(speeds.mean_speed_se));
  doc.set_meta("mean_square_speed", format_double(speeds.mean_square_speed));
  doc.set_meta("mean_square_speed_se", format_double(speeds.mean_square_speed_se));
  doc.columns = {"vx", "vy", "vz", "speed"};
  for (const auto& v : gas.velocities) {
    const double s = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    doc.rows.push_back({format_double(v[0]), format_double(v[1]), format_double(v[2]), format_double(s)});
  }
  return doc;
}

GasSamples gas_samples_from_csv(const CsvDocument& doc) {
  GasSamples gas;
  gas.config.particles = parse_int(doc.meta_value("particles"));
  gas.config.samples = parse_int(doc.meta_value("samples"));
  gas.config.seed = static_cast<std::uint64_t>(std::stoull(doc.meta_value("seed")));
  gas.energy_check = parse_bool(doc.meta_value("energy_check"));
  const auto x = doc.column_index("vx");
  const auto y = doc.column_index("vy");
  const auto z = doc.column_index("vz");
  for (const auto& row : doc.rows) {
    gas.velocities.push_back({parse_double(row[x]), parse_double(row[y]), parse_double(row[z])});
  }
  return gas;
}

nlohmann::json to_json(const GasSamples& gas, const KsReport& ks, const SpeedStatistics& speeds) {
  nlohmann::json j;
  j["report"] = "gas";
  j["particles"] = gas.config.particles;
  j["samples"] = gas.config.samples;
  j["seed"] = gas.config.seed;
  j["energy_check"] = gas.energy_check;
  j["ks"] = {{"statistic", ks.statistic}, {"critical", ks.critical}, {"defined", ks.defined}, {"pass", ks.pass}};
  j["speed"] = {{"mean", speeds.mean_speed},
                {"mean_se", speeds.mean_speed_se},
                {"reference_mean", speeds.reference_mean_speed},
                {"mean_square", speeds.mean_square_speed},
                {"mean_square_se", speeds.mean_square_speed_se},
                {"reference_mean_square", speeds.reference_mean_square_speed}};
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& v : gas.velocities) rows.push_back({v[0], v[1], v[2]});
  j["velocities"] = rows;
  return j;
}

// Sample batch ----------------------------------------------------------------------

CsvDocument to_csv(const SampleBatch& batch) {
  CsvDocument doc;
  doc.set_meta("report", "sample");
  doc.set_meta("n", std::to_string(batch.spec().n()));
  doc.set_meta("k", std::to_string(batch.k()));
  doc.set_meta("count", std::to_string(batch.count()));
  doc.set_meta("seed", std::to_string(batch.seed()));
  doc.set_meta("block_size", std::to_string(batch.block_size()));
  doc.set_meta("full_norm_check", bool_text(batch.full_norm_check()));
  for (std::int64_t j = 0; j < batch.k(); ++j) doc.columns.push_back("x" + std::to_string(j + 1));
  for (std::int64_t i = 0; i < batch.count(); ++i) {
    std::vector<std::string> row;
    for (double v : batch.point(i)) row.push_back(format_double(v));
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

SampleBatch sample_batch_from_csv(const CsvDocument& doc) {
  const ProjectionSpec spec(parse_int(doc.meta_value("n")), parse_int(doc.meta_value("k")));
  if (static_cast<std::int64_t>(doc.columns.size()) != spec.k()) throw Error("sample CSV has the wrong column count");
  std::vector<double> points;
  for (const auto& row : doc.rows) {
    for (const auto& v : row) points.push_back(parse_double(v));
  }
  return SampleBatch(spec, static_cast<std::uint64_t>(std::stoull(doc.meta_value("seed"))), std::move(points),
                     parse_bool(doc.meta_value("full_norm_check")), parse_int(doc.meta_value("block_size")));
}

nlohmann::json to_json(const SampleBatch& batch) {
  nlohmann::json j;
  j["report"] = "sample";
  j["n"] = batch.spec().n();
  j["k"] = batch.k();
  j["count"] = batch.count();
  j["seed"] = batch.seed();
  j["block_size"] = batch.block_size();
  j["full_norm_check"] = batch.full_norm_check();
  nlohmann::json rows = nlohmann::json::array();
  for (std::int64_t i = 0; i < batch.count(); ++i) {
    const auto p = batch.point(i);
    rows.push_back(std::vector<double>(p.begin(), p.end()));
  }
  j["points"] = rows;
  return j;
}

// Weak law ---------------------------------------------------------------------------

CsvDocument to_csv(const std::vector<WllnRow>& rows) {
  CsvDocument doc;
  doc.set_meta("report", "wlln");
  doc.columns = {"n", "epsilon", "trials", "hits", "probability", "standard_error"};
  for (const auto& r : rows) {
    doc.rows.push_back({std::to_string(r.n), format_double(r.epsilon), std::to_string(r.estimate.trials),
                        std::to_string(r.estimate.hits), format_double(r.estimate.probability),
                        format_double(r.estimate.standard_error)});
  }
  return doc;
}

std::vector<WllnRow> wlln_rows_from_csv(const CsvDocument& doc) {
  std::vector<WllnRow> out;
  const auto n = doc.column_index("n"), e = doc.column_index("epsilon"), t = doc.column_index("trials"),
             h = doc.column_index("hits"), p = doc.column_index("probability"),
             se = doc.column_index("standard_error");
  for (const auto& row : doc.rows) {
    WllnRow r;
    r.n = parse_int(row[n]);
    r.epsilon = parse_double(row[e]);
    r.estimate.trials = parse_int(row[t]);
    r.estimate.hits = parse_int(row[h]);
    r.estimate.probability = parse_double(row[p]);
    r.estimate.standard_error = parse_double(row[se]);
    out.push_back(r);
  }
  return out;
}

nlohmann::json to_json(const std::vector<WllnRow>& rows) {
  nlohmann::json j;
  j["report"] = "wlln";
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    j["rows"].push_back({{"n", r.n},
                         {"epsilon", number(r.epsilon)},
                         {"trials", r.estimate.trials},
                         {"hits", r.estimate.hits},
                         {"probability", r.estimate.probability},
                         {"standard_error", r.estimate.standard_error}});
  }
  return j;
}

}  // namespace sphint
