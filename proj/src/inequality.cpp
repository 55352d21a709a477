#include "sphint/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sphint/constants.hpp"
#include "sphint/density.hpp"
#include "sphint/error.hpp"

namespace sphint {
namespace {

struct Minimum {
  double t = 0.0;
  double theta = 0.0;
  double coefficient = std::numeric_limits<double>::infinity();
};

void require_above_threshold(std::int64_t n, std::int64_t k, double p) {
  const auto threshold = dimension_threshold(p, k);
  if (n <= threshold) {
    std::ostringstream msg;
    msg << "n=" << n << " is not above the dimension threshold 4(k+2)q = " << threshold
        << " for p=" << p << ", k=" << k;
    throw DomainError(msg.str());
  }
}

Minimum minimize_over_grid(std::int64_t n, std::int64_t k, double p, const std::vector<double>& t_grid,
                           const QuadratureConfig& cfg) {
  if (t_grid.empty()) throw DomainError("t grid is empty");
  require_above_threshold(n, k, p);
  const double q = conjugate_exponent(p);
  const double a = a_coeff(n, k);
  Minimum best;
  for (const double t : t_grid) {
    if (!(t > 1.0)) throw DomainError("t grid values must exceed 1");
    const double th = theta(n, t, k, q, cfg);
    const double c = a * (std::pow(t / (t - 1.0), 0.5 * static_cast<double>(k + 2)) + th);
    if (c < best.coefficient) best = {t, th, c};
  }
  return best;
}

}  // namespace

std::vector<double> default_t_grid() { return {1.1, 1.5, 2.0, 4.0, 8.0, 16.0, 64.0}; }

double lp_norm(const TestFunction& g, double p, const QuadratureConfig& cfg) {
  if (!(p > 1.0)) throw DomainError("lp_norm: need p > 1");
  if (!g.growth.admits_moment(p)) {
    std::ostringstream msg;
    msg << "lp_norm: " << g.name << " with growth " << g.growth.describe()
        << " has no finite Gaussian moment of order " << p;
    throw DomainError(msg.str());
  }
  return std::pow(integrate_gaussian(abs_power(g, p), cfg), 1.0 / p);
}

double bound_coefficient(std::int64_t n, std::int64_t k, double p, double t, const QuadratureConfig& cfg) {
  require_above_threshold(n, k, p);
  if (!(t > 1.0)) throw DomainError("bound_coefficient: need t > 1");
  const double q = conjugate_exponent(p);
  return a_coeff(n, k) *
         (std::pow(t / (t - 1.0), 0.5 * static_cast<double>(k + 2)) + theta(n, t, k, q, cfg));
}

BoundReport verify_inequality(const TestFunction& g, double p, std::int64_t n,
                              const std::vector<double>& t_grid, const QuadratureConfig& cfg) {
  const std::int64_t k = g.k;
  const Minimum best = minimize_over_grid(n, k, p, t_grid, cfg);
  BoundReport report;
  report.function_name = g.name;
  report.n = n;
  report.k = k;
  report.p = p;
  report.q = conjugate_exponent(p);
  report.t_star = best.t;
  report.a_coeff = a_coeff(n, k);
  report.theta = best.theta;
  report.coefficient = best.coefficient;
  report.lp_norm = lp_norm(g, p, cfg);
  report.lhs = integrate_sphere(absolute_value(g), ProjectionSpec(n, k), cfg);
  report.rhs = report.coefficient * report.lp_norm;
  report.holds = report.lhs <= report.rhs + 1e-12 * std::max(1.0, std::abs(report.rhs));
  return report;
}

EpsilonCertificate epsilon_dimension(double p, std::int64_t k, double epsilon, const QuadratureConfig& cfg,
                                     const std::vector<double>& t_grid, std::int64_t n_max) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon_dimension: need epsilon > 0");
  const std::int64_t start = dimension_threshold(p, k) + 1;
  const double target = 1.0 + epsilon;

  EpsilonCertificate cert;
  cert.p = p;
  cert.k = k;
  cert.epsilon = epsilon;
  double best_seen = std::numeric_limits<double>::infinity();

  auto probe = [&](std::int64_t n) {
    const Minimum m = minimize_over_grid(n, k, p, t_grid, cfg);
    cert.trace.emplace_back(n, m.coefficient);
    best_seen = std::min(best_seen, m.coefficient);
    return m;
  };
  auto accept = [&](std::int64_t n, const Minimum& m) {
    cert.n = n;
    cert.t = m.t;
    cert.a_coeff = a_coeff(n, k);
    cert.theta = m.theta;
    cert.coefficient = m.coefficient;
    return cert;
  };

  Minimum current = probe(start);
  if (current.coefficient <= target) return accept(start, current);

  std::int64_t failing = start;
  std::int64_t n = start;
  while (n < n_max) {
    n = std::min(n_max, 2 * n);
    current = probe(n);
    if (current.coefficient <= target) {
      std::int64_t passing = n;
      Minimum passing_min = current;
      while (passing - failing > 1) {
        const std::int64_t mid = failing + (passing - failing) / 2;
        const Minimum m = probe(mid);
        if (m.coefficient <= target) {
          passing = mid;
          passing_min = m;
        } else {
          failing = mid;
        }
      }
      return accept(passing, passing_min);
    }
    failing = n;
  }
  std::ostringstream msg;
  msg << "epsilon_dimension: no n <= " << n_max << " brings the coefficient to 1+" << epsilon
      << "; best " << best_seen;
  throw SearchExhausted(msg.str(), best_seen);
}

}  // namespace sphint
