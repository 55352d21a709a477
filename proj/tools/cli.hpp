#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sphint::cli {

enum class Subcommand { poincare, tail, inequality, epsilon_dim, rl, gas, sample, wlln };
enum class Format { csv, json };

std::string to_string(Subcommand s);
std::string to_string(Format f);

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNonConvergence = 3;

struct ExperimentConfig {
  Subcommand subcommand = Subcommand::poincare;
  std::string function = "x4";
  std::vector<std::int64_t> n_grid;
  std::vector<double> m_grid;
  std::vector<double> t_grid;
  double p = 2.0;
  std::int64_t k = 1;
  double epsilon = 0.1;
  double tolerance = 0.0;  // 0 selects the subcommand default
  std::uint64_t seed = 1;
  std::string output;  // empty writes to stdout
  Format format = Format::csv;
  unsigned threads = 0;
  std::int64_t count = 1000;
  std::int64_t samples = 100000;
  std::int64_t particles = 1000;
  std::int64_t trials = 100000;
  std::string kind = "cosine";
  std::string dump;  // binary point dump for `sample`

  /// The resolved config, recorded in every artifact header.
  nlohmann::json to_json() const;
};

/// Parses argv into a config. Returns nullopt after printing help, or when
/// parsing failed; `exit_code` then holds the status to return.
std::optional<ExperimentConfig> parse_args(int argc, const char* const* argv, int& exit_code);

/// Runs one experiment and writes its artifact. Diagnostics go to `err`.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

int main(int argc, const char* const* argv);

}  // namespace sphint::cli
