#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sphint/inequality.hpp"
#include "sphint/kinetic_gas.hpp"
#include "sphint/limits_lab.hpp"
#include "sphint/riemann_lebesgue.hpp"
#include "sphint/sampler.hpp"

namespace sphint {

inline constexpr int kCsvSchemaVersion = 1;

/// A CSV artifact: `# key: value` metadata lines, one header row, data rows.
struct CsvDocument {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void set_meta(const std::string& key, std::string value);
  /// Throws Error when the key is absent.
  const std::string& meta_value(const std::string& key) const;
  bool has_meta(const std::string& key) const;
  std::size_t column_index(const std::string& name) const;
};

/// 17 significant digits; round-trips every double.
std::string format_double(double v);
double parse_double(const std::string& s);
std::int64_t parse_int(const std::string& s);

/// Writes `# schema-version: 1` first, then metadata, header and rows.
void write_csv(std::ostream& out, const CsvDocument& doc);
/// Throws Error on a missing or unsupported schema version or ragged rows.
CsvDocument parse_csv(std::istream& in);

CsvDocument to_csv(const ConvergenceReport& report);
ConvergenceReport convergence_report_from_csv(const CsvDocument& doc);
nlohmann::json to_json(const ConvergenceReport& report);

CsvDocument to_csv(const TailMatrix& matrix, const TailVerdict* verdict = nullptr);
TailMatrix tail_matrix_from_csv(const CsvDocument& doc);
nlohmann::json to_json(const TailMatrix& matrix, const TailVerdict* verdict = nullptr);

CsvDocument to_csv(const std::vector<BoundReport>& reports);
std::vector<BoundReport> bound_reports_from_csv(const CsvDocument& doc);
nlohmann::json to_json(const std::vector<BoundReport>& reports);

CsvDocument to_csv(const EpsilonCertificate& cert);
EpsilonCertificate epsilon_certificate_from_csv(const CsvDocument& doc);
nlohmann::json to_json(const EpsilonCertificate& cert);

CsvDocument to_csv(const riemann_lebesgue::DecayReport& report);
riemann_lebesgue::DecayReport decay_report_from_csv(const CsvDocument& doc);
nlohmann::json to_json(const riemann_lebesgue::DecayReport& report);

/// One row per sample: vx, vy, vz, speed. Test results go in metadata.
CsvDocument to_csv(const GasSamples& gas, const KsReport& ks, const SpeedStatistics& speeds);
GasSamples gas_samples_from_csv(const CsvDocument& doc);
nlohmann::json to_json(const GasSamples& gas, const KsReport& ks, const SpeedStatistics& speeds);

CsvDocument to_csv(const SampleBatch& batch);
SampleBatch sample_batch_from_csv(const CsvDocument& doc);
nlohmann::json to_json(const SampleBatch& batch);

struct WllnRow {
  std::int64_t n = 0;
  double epsilon = 0.0;
  WllnEstimate estimate;
};

CsvDocument to_csv(const std::vector<WllnRow>& rows);
std::vector<WllnRow> wlln_rows_from_csv(const CsvDocument& doc);
nlohmann::json to_json(const std::vector<WllnRow>& rows);

}  // namespace sphint
