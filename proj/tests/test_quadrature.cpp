#include <doctest.h>

#include <cmath>
#include <vector>

#include "sphint/constants.hpp"
#include "sphint/density.hpp"
#include "sphint/error.hpp"
#include "sphint/quadrature.hpp"
#include "sphint/test_function.hpp"

using namespace sphint;

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Midpoint rule for theta, independent of the adaptive integrator (k = 1).
double theta_riemann(std::int64_t n, double t, double q, int panels) {
  const double nd = static_cast<double>(n);
  const double lo = std::sqrt(nd / t);
  const double hi = std::sqrt(nd);
  const double h = (hi - lo) / panels;
  double s = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double x = lo + (i + 0.5) * h;
    s += std::pow(1.0 - x * x / nd, nd / 4.0);
  }
  return std::pow(2.0 * s * h / std::sqrt(2.0 * kPi), 1.0 / q);
}

}  // namespace

TEST_CASE("integrate_adaptive basics") {
  const std::vector<double> none;
  const auto r = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, none, {});
  CHECK(std::abs(r.value - (std::exp(1.0) - 1.0)) < 1e-14);
  CHECK(r.error < 1e-10);
  // endpoint singularity
  const auto s = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 4.0, none, {});
  CHECK(std::abs(s.value - 4.0) < 1e-7);
  // jump at a declared breakpoint
  const std::vector<double> br{0.3};
  const auto j = integrate_adaptive([](double x) { return x < 0.3 ? 1.0 : 2.0; }, 0.0, 1.0, br, {});
  CHECK(std::abs(j.value - 1.7) < 1e-14);
  CHECK(j.panels == 2);
}

TEST_CASE("integrate_adaptive reports non-convergence") {
  QuadratureConfig cfg;
  cfg.max_subdivisions = 4;
  const std::vector<double> none;
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return std::sin(1.0 / x); }, 1e-6, 1.0, none, cfg),
                  NonConvergence);
  CHECK_THROWS_AS(integrate_adaptive([](double) { return std::nan(""); }, 0.0, 1.0, none, {}), NonConvergence);
}

TEST_CASE("QuadratureConfig validation") {
  QuadratureConfig cfg;
  cfg.rel_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.max_subdivisions = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("integrate_sphere oracles") {
  CHECK(std::abs(integrate_sphere(make_function("one"), ProjectionSpec(50, 1)) - 1.0) < 1e-10);
  for (std::int64_t n : {3, 10, 100, 10000, 1000000}) {
    CAPTURE(n);
    CHECK(std::abs(integrate_sphere(make_function("x2"), ProjectionSpec(n, 1)) - 1.0) < 1e-8);
  }
  CHECK(std::abs(integrate_sphere(make_function("x4"), ProjectionSpec(10, 1)) - 2.5) < 1e-8);
  CHECK_THROWS_AS(integrate_sphere(make_function("x2", 2), ProjectionSpec(10, 1)), DimensionMismatch);
}

TEST_CASE("integrate_gaussian oracles") {
  CHECK(std::abs(integrate_gaussian(make_function("x2")) - 1.0) < 1e-10);
  CHECK(std::abs(integrate_gaussian(make_function("x4")) - 3.0) < 1e-10);
  CHECK(std::abs(integrate_gaussian(make_function("abs")) - std::sqrt(2.0 / kPi)) < 1e-10);
  CHECK(std::abs(integrate_gaussian(make_function("unit_interval")) - (normal_cdf(1.0) - normal_cdf(-1.0))) < 1e-10);
  CHECK(std::abs(integrate_gaussian(make_function("cos")) - std::exp(-0.5)) < 1e-10);
  CHECK(std::abs(integrate_gaussian(make_function("x2", 3)) - 3.0) < 1e-9);
  const auto box = box_indicator({-1.0, 0.0}, {0.5, 2.0});
  const double expected = (normal_cdf(0.5) - normal_cdf(-1.0)) * (normal_cdf(2.0) - 0.5);
  CHECK(std::abs(integrate_gaussian(box) - expected) < 1e-9);
}

TEST_CASE("schemes agree") {
  QuadratureConfig tensor;
  tensor.scheme = QuadratureScheme::tensor_product;
  QuadratureConfig radial;
  radial.scheme = QuadratureScheme::radial_reduction;
  const auto f = make_function("x2", 2);
  const ProjectionSpec s(20, 2);
  CHECK(integrate_sphere(f, s, tensor) == doctest::Approx(integrate_sphere(f, s, radial)).epsilon(1e-8));
  CHECK(integrate_sphere(f, s, radial) == doctest::Approx(2.0).epsilon(1e-9));
  const auto box = box_indicator({0.0, 0.0}, {1.0, 1.0});
  CHECK_THROWS_AS(integrate_sphere(box, s, radial), DomainError);
  CHECK_THROWS_AS(integrate_sphere(make_function("x2", 4), ProjectionSpec(20, 4), tensor), DomainError);
}

TEST_CASE("annulus oracles") {
  auto one = [](double) { return 1.0; };
  CHECK(std::abs(integrate_annulus(one, 1, 0.0, 1.0) - 2.0) < 1e-12);
  CHECK(std::abs(integrate_annulus(one, 2, 1.0, 4.0) - 3.0 * kPi) < 1e-10);
  CHECK(std::abs(integrate_annulus([](double r) { return r * r; }, 1, 0.0, 1.0) - 2.0 / 3.0) < 1e-12);
  CHECK(radial_measure_factor(1) == 2.0);
  CHECK(radial_measure_factor(2) == doctest::Approx(2.0 * kPi));
  CHECK(radial_measure_factor(3) == doctest::Approx(4.0 * kPi));
}

TEST_CASE("theta against a brute-force Riemann sum") {
  const double quad = theta(10, 2.0, 1, 2.0);
  CHECK(quad > 0.0);
  const double brute = theta_riemann(10, 2.0, 2.0, 1000000);
  CHECK(std::abs(quad - brute) <= 1e-6 * brute);
  CHECK(theta(10000, 2.0, 1, 2.0) < 1e-6);
  CHECK(theta(8192, 2.0, 1, 2.0) > 0.0);
  // On the band the integrand is at most (1 - 1/t)^{n/4}.
  for (double t : {1.01, 1.1, 1.5}) {
    const std::int64_t n = 40;
    const double band = 2.0 * (std::sqrt(40.0) - std::sqrt(40.0 / t));
    const double bound = std::pow(band * std::pow(1.0 - 1.0 / t, 10.0) / std::sqrt(2.0 * kPi), 0.5);
    CHECK(theta(n, t, 1, 2.0) <= bound * (1.0 + 1e-12));
  }
  CHECK_THROWS_AS(theta(10, 1.0, 1, 2.0), DomainError);
}

TEST_CASE("theta decreases in n") {
  for (std::int64_t k : {1, 2}) {
    for (double t : {2.0, 8.0}) {
      double prev = INFINITY;
      for (std::int64_t n = 32; n <= 16384; n *= 2) {
        const double v = log_theta(n, t, k, 2.0);
        CHECK(v < prev);
        CHECK(std::exp(v) == theta(n, t, k, 2.0));
        prev = v;
      }
      CHECK(prev < std::log(1e-3));
    }
  }
}

TEST_CASE("Poincare convergence for bounded registry functions") {
  for (const char* name : {"unit_interval", "half_line", "cos", "sin", "indicator:-0.5,2"}) {
    const auto f = make_function(name);
    const double g = integrate_gaussian(f);
    double prev = INFINITY;
    for (std::int64_t n = 16; n <= 16384; n *= 2) {
      const double err = std::abs(integrate_sphere(f, ProjectionSpec(n, 1)) - g);
      CAPTURE(name);
      CAPTURE(n);
      CHECK(err <= prev + 1e-12);
      prev = err;
    }
    CHECK(prev < 1e-3);
  }
}

TEST_CASE("x4 error equals 6/(n+2)") {
  const auto f = make_function("x4");
  for (std::int64_t n = 16; n <= 16384; n *= 2) {
    const double err = 3.0 - integrate_sphere(f, ProjectionSpec(n, 1));
    CHECK(std::abs(err - 6.0 / (static_cast<double>(n) + 2.0)) < 1e-6);
  }
}

TEST_CASE("interval probabilities are monotone and in [0,1]") {
  const ProjectionSpec s(30, 1);
  double prev = 0.0;
  for (double b = -3.0; b <= 6.0; b += 0.5) {
    const double v = integrate_sphere(make_function("indicator:-3," + std::to_string(b)), s);
    CHECK(v >= prev - 1e-12);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-12);
    prev = v;
  }
}

TEST_CASE("radial moments match the beta oracle") {
  for (std::int64_t k : {1, 2}) {
    for (std::int64_t n : {10, 100, 1000}) {
      const ProjectionSpec s(n, k);
      for (int j : {1, 2, 3}) {
        const auto f = make_function("abs_pow:" + std::to_string(2 * j), static_cast<int>(k));
        const double m = beta_radial_moment(s, j);
        CAPTURE(k);
        CAPTURE(n);
        CAPTURE(j);
        CHECK(std::abs(integrate_sphere(f, s) - m) <= 1e-6 * m);
      }
    }
  }
}

TEST_CASE("Gauss-Hermite rule") {
  const auto rule = gauss_hermite_rule(20);
  double s0 = 0.0, s2 = 0.0, s4 = 0.0, s10 = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    s0 += rule.weights[i];
    s2 += rule.weights[i] * x * x;
    s4 += rule.weights[i] * std::pow(x, 4);
    s10 += rule.weights[i] * std::pow(x, 10);
  }
  CHECK(s0 == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(s2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s4 == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s10 == doctest::Approx(945.0).epsilon(1e-11));
  CHECK_THROWS_AS(gauss_hermite_rule(0), DomainError);
}

TEST_CASE("truncation radius") {
  const double r = gaussian_truncation_radius(1e-12);
  CHECK(r == doctest::Approx(std::sqrt(2.0 * std::log(1e12)) + 6.0));
}
