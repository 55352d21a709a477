#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include <CLI11.hpp>

#include "sphint/constants.hpp"
#include "sphint/error.hpp"
#include "sphint/inequality.hpp"
#include "sphint/kinetic_gas.hpp"
#include "sphint/limits_lab.hpp"
#include "sphint/report_io.hpp"
#include "sphint/riemann_lebesgue.hpp"
#include "sphint/sampler.hpp"
#include "sphint/test_function.hpp"
#include "sphint/version.hpp"

namespace sphint::cli {
namespace {

constexpr const char* kSchemaHelp = R"(CSV artifacts (all start with `# schema-version: 1`, then `# key: value` lines
holding version, config, generated timestamp and report metadata):
  poincare     n,spherical,gaussian,abs_error        meta: function,k,verdict,...
  tail         m,n,value                              meta: method,double_limit_zero,diagnosis
  inequality   function,n,k,p,q,t_star,a_coeff,theta,coefficient,lp_norm,lhs,rhs,holds
  epsilon-dim  n,coefficient (search trace)           meta: certificate n,t,a_coeff,theta
  rl           n,value,abs_value                      meta: kind,slope,decaying
  gas          vx,vy,vz,speed                         meta: KS and speed statistics
  sample       x1..xk                                 meta: n,k,count,seed
  wlln         n,epsilon,trials,hits,probability,standard_error
The `generated` line is the only field that differs between identical runs.)";

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

SamplerOptions sampler_options(const ExperimentConfig& c) {
  SamplerOptions opts;
  opts.threads = c.threads;
  return opts;
}

double tolerance_or(const ExperimentConfig& c, double fallback) { return c.tolerance > 0.0 ? c.tolerance : fallback; }

template <class T>
std::vector<T> grid_or(const std::vector<T>& grid, std::vector<T> fallback) {
  return grid.empty() ? fallback : grid;
}

struct Artifact {
  CsvDocument csv;
  nlohmann::json json;
};

// Verdict for grids too short to certify a double limit: the column limits
// are still reported, and the double limit is not certified.
TailVerdict short_grid_verdict(const TailMatrix& matrix, const std::string& reason) {
  TailVerdict v;
  const std::size_t last = matrix.n_grid.size() - 1;
  for (std::size_t mi = 0; mi < matrix.m_grid.size(); ++mi) v.column_limits.push_back(matrix.at(mi, last));
  v.witness_m = matrix.m_grid.back();
  v.witness_n = matrix.n_grid.back();
  v.witness_value = v.column_limits.back();
  const auto [lo, hi] = std::minmax_element(v.column_limits.begin(), v.column_limits.end());
  std::ostringstream diag;
  if (*hi - *lo <= 1e-12 * std::max(1.0, std::abs(*hi))) {
    diag << "column limit = " << format_double(*hi) << " for every m";
  } else {
    diag << "column limits";
    for (std::size_t i = 0; i < v.column_limits.size(); ++i) diag << (i ? ", " : " ") << format_double(v.column_limits[i]);
  }
  diag << " (" << reason << ")";
  v.diagnosis = diag.str();
  return v;
}

Artifact run_poincare(const ExperimentConfig& c) {
  SweepOptions opts;
  opts.tolerance = tolerance_or(c, opts.tolerance);
  opts.sampler = sampler_options(c);
  opts.fallback_seed = c.seed;
  const auto f = make_function(c.function, static_cast<int>(c.k));
  const auto report = poincare_sweep(f, grid_or(c.n_grid, {10, 100, 1000, 10000}), opts);
  return {to_csv(report), to_json(report)};
}

Artifact run_tail(const ExperimentConfig& c) {
  const auto m_grid = grid_or(c.m_grid, {1.0, 16.0, 81.0, 256.0});
  const auto n_grid = grid_or(c.n_grid, {100, 1000, 10000});
  TailMatrix matrix;
  if (c.function == "counterexample") {
    matrix = counterexample_tail_matrix(m_grid, n_grid);
  } else {
    SweepOptions opts;
    opts.sampler = sampler_options(c);
    opts.fallback_seed = c.seed;
    matrix = tail_matrix(make_function(c.function, static_cast<int>(c.k)), m_grid, n_grid, opts);
  }
  TailVerdict verdict;
  try {
    verdict = tail_verdict(matrix, tolerance_or(c, 0.05));
  } catch (const InsufficientGrid& e) {
    verdict = short_grid_verdict(matrix, e.what());
  }
  return {to_csv(matrix, &verdict), to_json(matrix, &verdict)};
}

Artifact run_inequality(const ExperimentConfig& c) {
  const auto g = make_function(c.function, static_cast<int>(c.k));
  const auto t_grid = grid_or(c.t_grid, default_t_grid());
  std::vector<std::int64_t> n_grid = c.n_grid;
  if (n_grid.empty()) {
    const auto base = dimension_threshold(c.p, c.k);
    for (std::int64_t step : {1, 10, 100, 1000, 10000}) n_grid.push_back(base + step);
  }
  std::vector<BoundReport> reports;
  for (const auto n : n_grid) reports.push_back(verify_inequality(g, c.p, n, t_grid));
  return {to_csv(reports), to_json(reports)};
}

Artifact run_epsilon_dim(const ExperimentConfig& c) {
  const auto cert = epsilon_dimension(c.p, c.k, c.epsilon, {}, grid_or(c.t_grid, default_t_grid()));
  return {to_csv(cert), to_json(cert)};
}

Artifact run_rl(const ExperimentConfig& c) {
  const auto f = make_function(c.function, 1);
  const auto report = riemann_lebesgue::rl_sweep(f, grid_or(c.n_grid, {8, 16, 32, 64, 128, 256, 512}),
                                                 riemann_lebesgue::kind_from_string(c.kind));
  return {to_csv(report), to_json(report)};
}

Artifact run_gas(const ExperimentConfig& c) {
  GasConfig gas_cfg;
  gas_cfg.particles = c.particles;
  gas_cfg.samples = c.samples;
  gas_cfg.seed = c.seed;
  const auto gas = sample_configuration(gas_cfg, sampler_options(c));
  const auto ks = component_marginal_test(gas);
  const auto speeds = speed_statistics(gas);
  return {to_csv(gas, ks, speeds), to_json(gas, ks, speeds)};
}

Artifact run_sample(const ExperimentConfig& c) {
  const std::int64_t n = c.n_grid.empty() ? 100 : c.n_grid.front();
  if (c.n_grid.size() > 1) throw DomainError("sample takes a single dimension in --n-grid");
  const auto batch = sample_sphere(ProjectionSpec(n, c.k), c.count, c.seed, sampler_options(c));
  if (!c.dump.empty()) {
    const std::filesystem::path target(c.dump);
    const auto tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
      std::ofstream bin(tmp, std::ios::binary | std::ios::trunc);
      if (!bin) throw Error("cannot open " + tmp + " for writing");
      write_batch(bin, batch);
      if (!bin) throw Error("write to " + tmp + " failed");
    }
    std::filesystem::rename(tmp, target);
  }
  return {to_csv(batch), to_json(batch)};
}

Artifact run_wlln(const ExperimentConfig& c) {
  std::vector<WllnRow> rows;
  for (const auto n : grid_or(c.n_grid, {100, 1000, 10000})) {
    rows.push_back({n, c.epsilon, wlln_probability(n, c.epsilon, c.trials, c.seed, sampler_options(c))});
  }
  return {to_csv(rows), to_json(rows)};
}

Artifact dispatch(const ExperimentConfig& c) {
  switch (c.subcommand) {
    case Subcommand::poincare: return run_poincare(c);
    case Subcommand::tail: return run_tail(c);
    case Subcommand::inequality: return run_inequality(c);
    case Subcommand::epsilon_dim: return run_epsilon_dim(c);
    case Subcommand::rl: return run_rl(c);
    case Subcommand::gas: return run_gas(c);
    case Subcommand::sample: return run_sample(c);
    case Subcommand::wlln: return run_wlln(c);
  }
  throw Error("unhandled subcommand");
}

std::string render(const ExperimentConfig& c, Artifact artifact) {
  const std::string generated = timestamp();
  std::ostringstream os;
  if (c.format == Format::csv) {
    auto& meta = artifact.csv.meta;
    meta.insert(meta.begin(), {{"version", kVersion}, {"config", c.to_json().dump()}, {"generated", generated}});
    write_csv(os, artifact.csv);
  } else {
    nlohmann::json doc;
    doc["schema_version"] = kCsvSchemaVersion;
    doc["version"] = kVersion;
    doc["config"] = c.to_json();
    doc["generated"] = generated;
    doc["result"] = artifact.json;
    os << doc.dump(2) << "\n";
  }
  return os.str();
}

void write_atomically(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  const auto tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot open " + tmp + " for writing");
    file << content;
    file.flush();
    if (!file) {
      std::filesystem::remove(tmp);
      throw Error("write to " + tmp + " failed");
    }
  }
  std::filesystem::rename(tmp, target);
}

template <class T>
CLI::Option* list_option(CLI::App& app, const char* name, std::vector<T>& target, const char* help) {
  return app.add_option(name, target, help)->delimiter(',')->expected(0, -1);
}

}  // namespace

std::string to_string(Subcommand s) {
  switch (s) {
    case Subcommand::poincare: return "poincare";
    case Subcommand::tail: return "tail";
    case Subcommand::inequality: return "inequality";
    case Subcommand::epsilon_dim: return "epsilon-dim";
    case Subcommand::rl: return "rl";
    case Subcommand::gas: return "gas";
    case Subcommand::sample: return "sample";
    case Subcommand::wlln: return "wlln";
  }
  return "?";
}

std::string to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["subcommand"] = cli::to_string(subcommand);
  j["function"] = function;
  j["k"] = k;
  j["n_grid"] = n_grid;
  j["m_grid"] = m_grid;
  j["t_grid"] = t_grid;
  j["p"] = p;
  j["epsilon"] = epsilon;
  j["tolerance"] = tolerance;
  j["seed"] = seed;
  j["format"] = cli::to_string(format);
  j["threads"] = threads;
  j["count"] = count;
  j["samples"] = samples;
  j["particles"] = particles;
  j["trials"] = trials;
  j["kind"] = kind;
  j["output"] = output;
  j["dump"] = dump;
  return j;
}

std::optional<ExperimentConfig> parse_args(int argc, const char* const* argv, int& exit_code) {
  ExperimentConfig c;
  CLI::App app{"Spherical integrals, Gaussian limits and their diagnostics", "sphint"};
  app.footer(kSchemaHelp);
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  const std::vector<std::pair<Subcommand, const char*>> commands = {
      {Subcommand::poincare, "Spherical integrals against the Gaussian limit over an n grid"},
      {Subcommand::tail, "Tail matrix T(m, n) and the double-limit verdict"},
      {Subcommand::inequality, "Check the C_p bound for a function at several dimensions"},
      {Subcommand::epsilon_dim, "Smallest dimension with bound coefficient <= 1 + epsilon"},
      {Subcommand::rl, "Fourier coefficients on [-pi, pi] and their decay rate"},
      {Subcommand::gas, "Maxwell-Boltzmann velocities from the energy sphere"},
      {Subcommand::sample, "Uniform points on the sphere, first k coordinates"},
      {Subcommand::wlln, "Monte Carlo P(|mean of squares - 1| >= epsilon)"},
  };
  std::map<CLI::App*, Subcommand> lookup;
  std::string format = "csv";
  for (const auto& [sub, help] : commands) {
    auto* s = app.add_subcommand(to_string(sub), help);
    lookup[s] = sub;
    s->add_option("--function", c.function, "Registry name (or `counterexample` for tail)");
    s->add_option("--k", c.k, "Number of projected coordinates");
    list_option(*s, "--n-grid", c.n_grid, "Comma-separated dimensions");
    list_option(*s, "--m-grid", c.m_grid, "Comma-separated tail levels");
    list_option(*s, "--t-grid", c.t_grid, "Comma-separated t values, each > 1");
    s->add_option("--p", c.p, "Lebesgue exponent p > 1");
    s->add_option("--epsilon", c.epsilon, "Epsilon");
    s->add_option("--tolerance", c.tolerance, "Verdict tolerance");
    s->add_option("--seed", c.seed, "RNG seed");
    s->add_option("--output,-o", c.output, "Artifact path (stdout when omitted)");
    s->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--threads", c.threads, "Worker threads (default SPHINT_THREADS or all cores)");
    s->add_option("--count", c.count, "Points to draw (sample)");
    s->add_option("--samples", c.samples, "Independent configurations (gas)");
    s->add_option("--particles", c.particles, "Particles N (gas)");
    s->add_option("--trials", c.trials, "Monte Carlo trials (wlln)");
    s->add_option("--kind", c.kind, "cosine or sine (rl)");
    s->add_option("--dump", c.dump, "Binary point dump path (sample)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    exit_code = app.exit(e);
    if (exit_code != 0) exit_code = kExitValidation;
    return std::nullopt;
  }
  for (auto* s : app.get_subcommands()) c.subcommand = lookup.at(s);
  c.format = format == "json" ? Format::json : Format::csv;
  exit_code = kExitOk;
  return c;
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto content = render(config, dispatch(config));
    if (config.output.empty()) {
      out << content;
    } else {
      write_atomically(config.output, content);
    }
    return kExitOk;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << " (estimate " << e.estimate() << ", error estimate " << e.error_estimate()
        << ")\n";
    return kExitNonConvergence;
  } catch (const SearchExhausted& e) {
    err << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int main(int argc, const char* const* argv) {
  int code = kExitOk;
  const auto config = parse_args(argc, argv, code);
  if (!config) return code;
  return run(*config, std::cout, std::cerr);
}

}  // namespace sphint::cli
