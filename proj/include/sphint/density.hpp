#pragma once

#include <cstdint>
#include <span>

namespace sphint {

/// Geometric frame of every spherical integral: points live on S^{n-1}(sqrt n)
/// in R^n and are viewed through their first k coordinates.
class ProjectionSpec {
 public:
  /// Throws DomainError unless 1 <= k <= n - 2.
  ProjectionSpec(std::int64_t n, std::int64_t k);

  std::int64_t n() const noexcept { return n_; }
  std::int64_t k() const noexcept { return k_; }
  /// sqrt(n)
  double radius() const noexcept { return radius_; }
  double radius_squared() const noexcept { return static_cast<double>(n_); }

  friend bool operator==(const ProjectionSpec&, const ProjectionSpec&) = default;

 private:
  std::int64_t n_;
  std::int64_t k_;
  double radius_;
};

/// ln w_{n,k} as a function of the squared norm r2 = |x|^2. -inf on r2 >= n.
double marginal_log_density_r2(const ProjectionSpec& spec, double r2);

/// ln w_{n,k}(x) where w_{n,k} is the density of the first k coordinates of
/// the uniform probability measure on S^{n-1}(sqrt n). Throws
/// DimensionMismatch when x.size() != k.
double marginal_log_density(const ProjectionSpec& spec, std::span<const double> x);

double marginal_density_r2(const ProjectionSpec& spec, double r2);
double marginal_density(const ProjectionSpec& spec, std::span<const double> x);

/// E|x|^{2j} under the marginal, from |x|^2/n ~ Beta(k/2, (n-k)/2).
double beta_radial_moment(const ProjectionSpec& spec, int j);

}  // namespace sphint
