#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sphint/quadrature.hpp"
#include "sphint/test_function.hpp"

namespace sphint {

/// One check of  int |g| d(sigma_n) <= coefficient * ||g||_{L^p(mu)}.
struct BoundReport {
  std::string function_name;
  std::int64_t n = 0;
  std::int64_t k = 0;
  double p = 0.0;
  double q = 0.0;
  /// Grid point minimizing the coefficient.
  double t_star = 0.0;
  double a_coeff = 0.0;
  double theta = 0.0;
  double coefficient = 0.0;
  double lp_norm = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// {1.1, 1.5, 2, 4, 8, 16, 64}
std::vector<double> default_t_grid();

/// (E_mu |g|^p)^{1/p}
double lp_norm(const TestFunction& g, double p, const QuadratureConfig& cfg = {});

/// a_{n,k} [ (t/(t-1))^{(k+2)/2} + theta_{n,t} ] with q = p/(p-1). Throws
/// DomainError unless n > dimension_threshold(p, k) and t > 1.
double bound_coefficient(std::int64_t n, std::int64_t k, double p, double t,
                         const QuadratureConfig& cfg = {});

BoundReport verify_inequality(const TestFunction& g, double p, std::int64_t n,
                              const std::vector<double>& t_grid = default_t_grid(),
                              const QuadratureConfig& cfg = {});

struct EpsilonCertificate {
  double p = 0.0;
  std::int64_t k = 0;
  double epsilon = 0.0;
  std::int64_t n = 0;
  double t = 0.0;
  double a_coeff = 0.0;
  double theta = 0.0;
  double coefficient = 0.0;
  /// (n, min_t coefficient) for every dimension the search visited.
  std::vector<std::pair<std::int64_t, double>> trace;
};

/// First dimension, along a doubling search from dimension_threshold + 1
/// refined by bisection, where min_t bound_coefficient <= 1 + epsilon.
/// Throws SearchExhausted past n_max.
EpsilonCertificate epsilon_dimension(double p, std::int64_t k, double epsilon,
                                     const QuadratureConfig& cfg = {},
                                     const std::vector<double>& t_grid = default_t_grid(),
                                     std::int64_t n_max = 10'000'000);

}  // namespace sphint
