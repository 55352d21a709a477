#include "sphint/limits_lab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sphint/error.hpp"

namespace sphint {
namespace {

template <class T>
void require_ascending(const std::vector<T>& grid, const char* what) {
  if (grid.empty()) throw DomainError(std::string(what) + " is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1] < grid[i])) throw DomainError(std::string(what) + " must be strictly ascending");
  }
}

bool needs_sampler(const TestFunction& f) { return f.k > 3 && !f.radial(); }

double monte_carlo_mean(const TestFunction& f, const ProjectionSpec& spec, const SweepOptions& options) {
  SamplerOptions sampler = options.sampler;
  sampler.streaming = true;
  const auto batch = sample_sphere(spec, options.fallback_samples, options.fallback_seed, sampler);
  double sum = 0.0;
  for (std::int64_t i = 0; i < batch.count(); ++i) sum += f(batch.point(i));
  return sum / static_cast<double>(batch.count());
}

double spherical_mean(const TestFunction& f, const ProjectionSpec& spec, const SweepOptions& options) {
  if (needs_sampler(f)) return monte_carlo_mean(f, spec, options);
  return integrate_sphere(f, spec, options.quadrature);
}

std::string format_number(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::converging:
      return "converging";
    case Verdict::stalled:
      return "stalled";
    case Verdict::diverging:
      return "diverging";
  }
  return "stalled";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "converging") return Verdict::converging;
  if (s == "stalled") return Verdict::stalled;
  if (s == "diverging") return Verdict::diverging;
  throw DomainError("unknown verdict '" + s + "'");
}

Verdict classify_errors(const std::vector<double>& errors, double tolerance) {
  if (errors.empty()) return Verdict::stalled;
  const std::size_t last = errors.size() - 1;
  bool tail_nonincreasing = true;
  for (std::size_t i = errors.size() >= 3 ? errors.size() - 3 : 0; i < last; ++i) {
    if (errors[i + 1] > errors[i]) tail_nonincreasing = false;
  }
  if (errors[last] < tolerance && tail_nonincreasing) return Verdict::converging;
  if (errors[last] > errors.front()) return Verdict::diverging;
  return Verdict::stalled;
}

ConvergenceReport poincare_sweep(const TestFunction& f, const std::vector<std::int64_t>& n_grid,
                                 const SweepOptions& options) {
  require_ascending(n_grid, "n_grid");
  if (f.growth.kind == Growth::Kind::gaussian_lp && !(f.growth.parameter > 1.0)) {
    throw DomainError("poincare_sweep: " + f.name + " has growth " + f.growth.describe() +
                      ", outside the classes with a Gaussian limit");
  }
  ConvergenceReport report;
  report.function_name = f.name;
  report.k = f.k;
  report.n_grid = n_grid;
  report.tolerance = options.tolerance;
  if (f.exact_gaussian_mean) {
    report.gaussian_value = f.exact_gaussian_mean->value;
    report.gaussian_provenance = f.exact_gaussian_mean->provenance;
  } else {
    report.gaussian_value = integrate_gaussian(f, options.quadrature);
    report.gaussian_provenance = "quadrature";
  }
  for (const auto n : n_grid) {
    const ProjectionSpec spec(n, f.k);
    const double s = spherical_mean(f, spec, options);
    report.spherical_values.push_back(s);
    report.abs_errors.push_back(std::abs(s - report.gaussian_value));
  }
  report.verdict = classify_errors(report.abs_errors, options.tolerance);
  return report;
}

TailMatrix tail_matrix(const TestFunction& f, const std::vector<double>& m_grid,
                       const std::vector<std::int64_t>& n_grid, const SweepOptions& options) {
  require_ascending(m_grid, "m_grid");
  require_ascending(n_grid, "n_grid");
  if (m_grid.front() < 0.0) throw DomainError("tail_matrix: m_grid must be nonnegative");

  TailMatrix matrix;
  matrix.function_name = f.name;
  matrix.m_grid = m_grid;
  matrix.n_grid = n_grid;
  matrix.values.resize(m_grid.size() * n_grid.size());
  const bool deterministic = static_cast<bool>(f.superlevel) && !needs_sampler(f);
  matrix.method = deterministic ? "quadrature" : "monte_carlo";

  for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
    const ProjectionSpec spec(n_grid[ni], f.k);
    if (deterministic) {
      for (std::size_t mi = 0; mi < m_grid.size(); ++mi) {
        matrix.values[mi * n_grid.size() + ni] =
            integrate_sphere(tail_part(f, m_grid[mi]), spec, options.quadrature);
      }
      continue;
    }
    // One batch per n serves every m, which keeps rows comparable.
    SamplerOptions sampler = options.sampler;
    sampler.streaming = true;
    const auto batch = sample_sphere(spec, options.fallback_samples, options.fallback_seed, sampler);
    for (std::size_t mi = 0; mi < m_grid.size(); ++mi) {
      double sum = 0.0;
      for (std::int64_t i = 0; i < batch.count(); ++i) {
        const double v = std::abs(f(batch.point(i)));
        if (v >= m_grid[mi]) sum += v;
      }
      matrix.values[mi * n_grid.size() + ni] = sum / static_cast<double>(batch.count());
    }
  }
  return matrix;
}

TailVerdict tail_verdict(const TailMatrix& matrix, double tol) {
  if (matrix.m_grid.size() < 3 || matrix.n_grid.size() < 3) {
    throw InsufficientGrid("tail_verdict: need at least 3 values per axis, got " +
                           std::to_string(matrix.m_grid.size()) + " m and " +
                           std::to_string(matrix.n_grid.size()) + " n");
  }
  if (matrix.values.size() != matrix.m_grid.size() * matrix.n_grid.size()) {
    throw DimensionMismatch("tail_verdict: matrix is incomplete");
  }
  TailVerdict verdict;
  const std::size_t last_n = matrix.n_grid.size() - 1;
  for (std::size_t mi = 0; mi < matrix.m_grid.size(); ++mi) {
    verdict.column_limits.push_back(matrix.at(mi, last_n));
  }
  verdict.witness_m = matrix.m_grid.back();
  verdict.witness_n = matrix.n_grid.back();
  verdict.witness_value = verdict.column_limits.back();

  std::size_t first_increase = 0;
  bool monotone = true;
  for (std::size_t i = 1; i < verdict.column_limits.size(); ++i) {
    if (verdict.column_limits[i] > verdict.column_limits[i - 1]) {
      monotone = false;
      first_increase = i;
      break;
    }
  }
  const bool small = verdict.witness_value < tol;
  verdict.double_limit_zero = small && monotone;

  std::ostringstream diag;
  const auto [lo, hi] = std::minmax_element(verdict.column_limits.begin(), verdict.column_limits.end());
  if (verdict.double_limit_zero) {
    diag << "double limit 0: T(m=" << format_number(verdict.witness_m) << ", n=" << verdict.witness_n
         << ") = " << format_number(verdict.witness_value) << " < " << format_number(tol)
         << " and column limits nonincreasing in m";
  } else if (*hi - *lo <= 1e-12 * std::max(1.0, std::abs(*hi))) {
    diag << "column limit = " << format_number(*hi) << " for every m";
  } else if (!monotone) {
    diag << "column limits increase in m at m=" << format_number(matrix.m_grid[first_increase]);
  } else {
    diag << "T(m=" << format_number(verdict.witness_m) << ", n=" << verdict.witness_n
         << ") = " << format_number(verdict.witness_value) << " >= " << format_number(tol);
  }
  verdict.diagnosis = diag.str();
  return verdict;
}

double CounterexampleSpace::tail(double m) const {
  return space.integrate([m](double w) {
    const double v = std::abs(w);
    return v >= m ? v : 0.0;
  });
}

CounterexampleSpace counterexample_space(std::int64_t n) {
  if (n < 1) throw DomainError("counterexample_space: need n >= 1");
  CounterexampleSpace c;
  c.n = n;
  const double nd = static_cast<double>(n);
  c.space.points = {0.0, nd};
  c.space.masses = {1.0 - 1.0 / nd, 1.0 / nd};
  c.alpha = c.space.integrate([](double w) { return w; });
  c.bounded_mean = c.space.integrate([](double w) { return w == 0.0 ? 1.0 : 0.0; });
  // Limit law: point mass at 0.
  const DiscreteSpace limit{{0.0}, {1.0}};
  c.limit_alpha = limit.integrate([](double w) { return w; });
  c.limit_bounded_mean = limit.integrate([](double w) { return w == 0.0 ? 1.0 : 0.0; });
  return c;
}

TailMatrix counterexample_tail_matrix(const std::vector<double>& m_grid,
                                      const std::vector<std::int64_t>& n_grid) {
  require_ascending(m_grid, "m_grid");
  require_ascending(n_grid, "n_grid");
  TailMatrix matrix;
  matrix.function_name = "counterexample";
  matrix.m_grid = m_grid;
  matrix.n_grid = n_grid;
  matrix.method = "exact";
  for (const double m : m_grid) {
    for (const auto n : n_grid) matrix.values.push_back(counterexample_space(n).tail(m));
  }
  return matrix;
}

}  // namespace sphint
