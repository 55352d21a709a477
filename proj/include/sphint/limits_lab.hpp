#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sphint/quadrature.hpp"
#include "sphint/sampler.hpp"
#include "sphint/test_function.hpp"

namespace sphint {

enum class Verdict { converging, stalled, diverging };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// Spherical means S_n of f against the Gaussian mean G along an n grid.
struct ConvergenceReport {
  std::string function_name;
  int k = 1;
  std::vector<std::int64_t> n_grid;
  std::vector<double> spherical_values;
  double gaussian_value = 0.0;
  std::string gaussian_provenance;
  std::vector<double> abs_errors;
  double tolerance = 0.0;
  Verdict verdict = Verdict::stalled;
};

struct SweepOptions {
  QuadratureConfig quadrature;
  /// The last error must fall below this for a converging verdict.
  double tolerance = 1e-2;
  /// Monte Carlo fallback for non-radial integrands with k > 3, or tail
  /// sets without an analytic description.
  std::int64_t fallback_samples = 200000;
  std::uint64_t fallback_seed = 20240601;
  SamplerOptions sampler;
};

/// converging: last error below tolerance and errors nonincreasing over the
/// final three grid points. diverging: last error exceeds the first.
/// stalled otherwise.
Verdict classify_errors(const std::vector<double>& errors, double tolerance);

ConvergenceReport poincare_sweep(const TestFunction& f, const std::vector<std::int64_t>& n_grid,
                                 const SweepOptions& options = {});

/// T(m, n) = integral of |f| 1_{|f| >= m} against the uniform law on S^{n-1}(sqrt n).
struct TailMatrix {
  std::string function_name;
  std::vector<double> m_grid;
  std::vector<std::int64_t> n_grid;
  /// Row-major |m_grid| x |n_grid|.
  std::vector<double> values;
  /// "quadrature", "monte_carlo" or "exact".
  std::string method;

  double at(std::size_t mi, std::size_t ni) const { return values[mi * n_grid.size() + ni]; }
};

TailMatrix tail_matrix(const TestFunction& f, const std::vector<double>& m_grid,
                       const std::vector<std::int64_t>& n_grid, const SweepOptions& options = {});

struct TailVerdict {
  bool double_limit_zero = false;
  std::string diagnosis;
  /// T(m, n_last) for each m.
  std::vector<double> column_limits;
  double witness_m = 0.0;
  std::int64_t witness_n = 0;
  double witness_value = 0.0;
};

/// Declares lim_m lim_n T(m, n) = 0 when T(m_last, n_last) < tol and the
/// column limits T(., n_last) are nonincreasing in m. Needs at least three
/// grid values per axis (InsufficientGrid).
TailVerdict tail_verdict(const TailMatrix& matrix, double tol);

/// Finite measure space given by weighted atoms.
struct DiscreteSpace {
  std::vector<double> points;
  std::vector<double> masses;

  template <class F>
  double integrate(F&& g) const {
    double s = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) s += g(points[i]) * masses[i];
    return s;
  }
};

/// Omega_n = {0, n}, nu_n({0}) = 1 - 1/n, nu_n({n}) = 1/n, f(w) = w. The
/// means of f stay at 1 while the limit law (point mass at 0) gives 0.
struct CounterexampleSpace {
  std::int64_t n = 1;
  DiscreteSpace space;
  /// Integral of f(w) = w.
  double alpha = 0.0;
  /// Integral of the bounded g(w) = 1_{w = 0}.
  double bounded_mean = 0.0;
  /// Integrals of f and g under the limit law.
  double limit_alpha = 0.0;
  double limit_bounded_mean = 1.0;

  double tail(double m) const;
};

CounterexampleSpace counterexample_space(std::int64_t n);

TailMatrix counterexample_tail_matrix(const std::vector<double>& m_grid,
                                      const std::vector<std::int64_t>& n_grid);

}  // namespace sphint
