#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>

#include "sphint/constants.hpp"
#include "sphint/density.hpp"
#include "sphint/error.hpp"
#include "sphint/quadrature.hpp"

using namespace sphint;

namespace {

double integrate_radial(const ProjectionSpec& spec, double power) {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-11;
  cfg.abs_tol = 1e-14;
  auto g = [&](double r) { return std::pow(r, power) * marginal_density_r2(spec, r * r); };
  return integrate_annulus(g, static_cast<int>(spec.k()), 0.0, spec.radius_squared(), cfg);
}

}  // namespace

TEST_CASE("ProjectionSpec validation") {
  CHECK_NOTHROW(ProjectionSpec(3, 1));
  CHECK_THROWS_AS(ProjectionSpec(3, 2), DomainError);
  CHECK_THROWS_AS(ProjectionSpec(10, 0), DomainError);
  const ProjectionSpec s(16, 2);
  CHECK(s.radius() == 4.0);
  CHECK(s.radius_squared() == 16.0);
}

TEST_CASE("marginal density oracles") {
  const ProjectionSpec s10(10, 1);
  const double x0 = 0.0;
  const double expected = std::log(a_coeff(10, 1) * b_coeff(10, 1) / std::sqrt(2.0 * kPi));
  CHECK(std::abs(marginal_log_density(s10, {&x0, 1}) - expected) < 1e-14);
  const double x4 = 4.0;
  CHECK(marginal_log_density(s10, {&x4, 1}) == -std::numeric_limits<double>::infinity());
  const double edge = std::sqrt(10.0);
  CHECK(marginal_density(s10, {&edge, 1}) == 0.0);
  CHECK(marginal_density(s10, {&x0, 1}) == doctest::Approx(std::exp(expected)).epsilon(1e-15));

  const ProjectionSpec big(10000, 1);
  const double one = 1.0;
  CHECK(std::abs(marginal_log_density(big, {&one, 1}) - std::log(0.24197072451914337)) < 1e-3);

  const ProjectionSpec s2(100, 2);
  const std::array<double, 2> origin{0.0, 0.0};
  const double v = marginal_density(s2, origin);
  CHECK(v > 0.0);
  CHECK(v <= a_coeff(100, 2) * b_coeff(100, 2) / (2.0 * kPi) * (1.0 + 1e-15));

  const std::array<double, 2> wrong{0.0, 0.0};
  CHECK_THROWS_AS(marginal_density(s10, wrong), DimensionMismatch);
}

TEST_CASE("beta radial moments") {
  for (std::int64_t n : {3, 10, 77, 1000}) CHECK(beta_radial_moment(ProjectionSpec(n, 1), 1) == doctest::Approx(1.0));
  CHECK(beta_radial_moment(ProjectionSpec(10, 1), 2) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(beta_radial_moment(ProjectionSpec(12, 10), 0) == 1.0);
  // |x|^2 over k coordinates has mean k
  CHECK(beta_radial_moment(ProjectionSpec(50, 3), 1) == doctest::Approx(3.0));
}

TEST_CASE("density normalizes to 1") {
  for (std::int64_t k : {1, 2, 3}) {
    for (std::int64_t n : {k + 2, std::int64_t{10}, std::int64_t{100}, std::int64_t{10000}}) {
      CAPTURE(k);
      CAPTURE(n);
      CHECK(std::abs(integrate_radial(ProjectionSpec(n, k), 0.0) - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("density moments match the beta oracle") {
  for (std::int64_t k : {1, 2, 3}) {
    for (std::int64_t n : {k + 2, std::int64_t{10}, std::int64_t{100}, std::int64_t{10000}}) {
      const ProjectionSpec s(n, k);
      CAPTURE(k);
      CAPTURE(n);
      for (int j : {1, 2}) {
        const double m = beta_radial_moment(s, j);
        CHECK(std::abs(integrate_radial(s, 2.0 * j) - m) <= 1e-6 * m);
      }
    }
  }
}

TEST_CASE("sphere factor is dominated by the Gaussian factor") {
  for (std::int64_t n : {5, 30, 400, 100000}) {
    for (double r2 = 0.0; r2 < static_cast<double>(n); r2 += static_cast<double>(n) / 97.0) {
      const double lhs = 0.5 * static_cast<double>(n) * std::log1p(-r2 / static_cast<double>(n));
      CHECK(lhs <= -r2 / 2.0 + 1e-12);
    }
  }
}

TEST_CASE("density depends on x only through its norm") {
  const ProjectionSpec s(40, 3);
  const std::array<double, 3> a{1.0, 2.0, 2.0};
  const std::array<double, 3> b{0.0, 0.0, 3.0};
  const std::array<double, 3> c{-2.0, 1.0, -2.0};
  CHECK(marginal_density(s, a) == doctest::Approx(marginal_density(s, b)).epsilon(1e-15));
  CHECK(marginal_density(s, a) == doctest::Approx(marginal_density(s, c)).epsilon(1e-15));
  const ProjectionSpec s2(12, 2);
  for (double ang = 0.0; ang < 6.28; ang += 0.4) {
    const std::array<double, 2> p{2.0 * std::cos(ang), 2.0 * std::sin(ang)};
    CHECK(marginal_density(s2, p) == doctest::Approx(marginal_density_r2(s2, 4.0)).epsilon(1e-14));
  }
}
