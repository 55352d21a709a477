#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sphint/density.hpp"
#include "sphint/test_function.hpp"

namespace sphint {

enum class QuadratureScheme {
  /// One-dimensional panels; for k > 1 the integrator picks radial reduction
  /// for radial integrands and a tensor product otherwise.
  adaptive_1d,
  tensor_product,
  radial_reduction,
};

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  std::int64_t max_subdivisions = std::int64_t{1} << 16;
  QuadratureScheme scheme = QuadratureScheme::adaptive_1d;

  /// Throws DomainError on non-positive tolerances or an empty budget.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::int64_t panels = 0;
};

/// Adaptive 15-point Gauss-Kronrod on [a, b], bisecting the panel with the
/// largest error estimate. Interior breakpoints start as panel boundaries;
/// the rule never evaluates at a panel endpoint, so integrable endpoint
/// singularities are allowed. Panel contributions are summed in order of
/// their left endpoint, so the result is reproducible.
QuadratureResult integrate_adaptive(const std::function<double(double)>& g, double a, double b,
                                    std::span<const double> breakpoints,
                                    const QuadratureConfig& cfg);

/// The integral of f o pi_k against the uniform probability measure on
/// S^{n-1}(sqrt n), computed as the integral of f against the disintegration
/// weight over the ball B_k(sqrt n).
QuadratureResult integrate_sphere_detailed(const TestFunction& f, const ProjectionSpec& spec,
                                           const QuadratureConfig& cfg = {});
double integrate_sphere(const TestFunction& f, const ProjectionSpec& spec,
                        const QuadratureConfig& cfg = {});

/// Standard Gaussian mean of f on R^k.
QuadratureResult integrate_gaussian_detailed(const TestFunction& f, const QuadratureConfig& cfg = {});
double integrate_gaussian(const TestFunction& f, const QuadratureConfig& cfg = {});

/// Truncation radius sqrt(2 ln(1/abs_tol)) + 6 for Gaussian integrals.
double gaussian_truncation_radius(double abs_tol);

/// Measure of the unit sphere S^{k-1} in R^k: 2 for k = 1, c_{k-1} otherwise.
double radial_measure_factor(int k);

/// Integral of g(|x|) over {inner < |x|^2 <= outer} in R^k.
double integrate_annulus(const std::function<double(double)>& g, int k, double inner, double outer,
                         const QuadratureConfig& cfg = {});

/// theta_{n,t}: the (1/q)-th power of the integral of
/// (2 pi)^{-k/2} (1 - |x|^2/n)^{n/4} over the band n/t < |x|^2 <= n.
double theta(std::int64_t n, double t, std::int64_t k, double q, const QuadratureConfig& cfg = {});
/// ln theta_{n,t}; finite where theta itself underflows.
double log_theta(std::int64_t n, double t, std::int64_t k, double q, const QuadratureConfig& cfg = {});

/// Probabilists' Gauss-Hermite rule: sum w_i f(x_i) approximates E f(Z).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermiteRule gauss_hermite_rule(int order);

}  // namespace sphint
