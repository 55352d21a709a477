#include "sphint/density.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sphint/constants.hpp"
#include "sphint/error.hpp"

namespace sphint {

ProjectionSpec::ProjectionSpec(std::int64_t n, std::int64_t k) : n_(n), k_(k), radius_(0.0) {
  if (k < 1 || k > n - 2) {
    throw DomainError("ProjectionSpec: need 1 <= k <= n - 2, got n=" + std::to_string(n) +
                      " k=" + std::to_string(k));
  }
  radius_ = std::sqrt(static_cast<double>(n));
}

double marginal_log_density_r2(const ProjectionSpec& spec, double r2) {
  const double n = spec.radius_squared();
  if (!(r2 < n)) return -std::numeric_limits<double>::infinity();
  const double k = static_cast<double>(spec.k());
  const double exponent = 0.5 * (n - k - 2.0);
  const double log_norm =
      log_a_coeff(spec.n(), spec.k()) + log_b_coeff(spec.n(), spec.k()) - 0.5 * k * kLnTwoPi;
  // exponent is 0 when k = n - 2; the profile is then flat on the ball.
  if (exponent == 0.0) return log_norm;
  return log_norm + exponent * std::log1p(-r2 / n);
}

double marginal_log_density(const ProjectionSpec& spec, std::span<const double> x) {
  if (static_cast<std::int64_t>(x.size()) != spec.k()) {
    throw DimensionMismatch("marginal_log_density: point has " + std::to_string(x.size()) +
                            " coordinates, projection has k=" + std::to_string(spec.k()));
  }
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  return marginal_log_density_r2(spec, r2);
}

double marginal_density_r2(const ProjectionSpec& spec, double r2) {
  return std::exp(marginal_log_density_r2(spec, r2));
}

double marginal_density(const ProjectionSpec& spec, std::span<const double> x) {
  return std::exp(marginal_log_density(spec, x));
}

double beta_radial_moment(const ProjectionSpec& spec, int j) {
  if (j < 0) throw DomainError("beta_radial_moment: need j >= 0, got " + std::to_string(j));
  const double n = spec.radius_squared();
  const double half_k = 0.5 * static_cast<double>(spec.k());
  double moment = 1.0;
  for (int i = 0; i < j; ++i) {
    moment *= n * (half_k + i) / (0.5 * n + i);
  }
  return moment;
}

}  // namespace sphint
