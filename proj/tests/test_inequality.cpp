#include <doctest.h>

#include <cmath>
#include <vector>

#include "sphint/constants.hpp"
#include "sphint/error.hpp"
#include "sphint/inequality.hpp"
#include "sphint/quadrature.hpp"
#include "sphint/test_function.hpp"

using namespace sphint;

TEST_CASE("lp_norm oracles") {
  CHECK(lp_norm(make_function("abs"), 2.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(lp_norm(make_function("x2"), 2.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));
  CHECK(lp_norm(make_function("abs"), 3.0) == doctest::Approx(std::cbrt(2.0 * std::sqrt(2.0 / kPi))).epsilon(1e-10));
  CHECK_THROWS_AS(lp_norm(make_function("abs_pow:-0.5"), 2.0), DomainError);
  CHECK_THROWS_AS(lp_norm(make_function("abs"), 1.0), DomainError);
}

TEST_CASE("bound coefficient structure") {
  for (std::int64_t k : {1, 2}) {
    for (double p : {1.5, 2.0, 4.0}) {
      const auto base = dimension_threshold(p, k);
      for (std::int64_t n : {base + 1, base + 7, 10 * base}) {
        for (double t : default_t_grid()) {
          const double c = bound_coefficient(n, k, p, t);
          const double floor = a_coeff(n, k) * std::pow(t / (t - 1.0), (k + 2) / 2.0);
          CHECK(c >= floor);
        }
      }
      CHECK_THROWS_AS(bound_coefficient(base, k, p, 2.0), DomainError);
    }
  }
  CHECK_THROWS_AS(bound_coefficient(100, 1, 2.0, 1.0), DomainError);
  // large-n limit at t = 2
  CHECK(std::abs(bound_coefficient(10000, 1, 2.0, 2.0) - std::pow(2.0, 1.5)) < 1e-3);
  CHECK(theta(10000, 2.0, 1, 2.0) < 1e-6);
}

TEST_CASE("min over t is nonincreasing along a doubling grid") {
  // The bracket (t/(t-1))^{(k+2)/2} + theta decreases; the full coefficient
  // may rise by the drift of a_{n,k} toward 1 once theta is negligible.
  for (std::int64_t k : {1, 2, 3}) {
    for (double p : {1.5, 2.0, 4.0}) {
      double prev = INFINITY;
      double prev_bracket = INFINITY;
      double prev_a = 0.0;
      for (std::int64_t n = dimension_threshold(p, k) + 1; n < 200000; n *= 2) {
        const double a = a_coeff(n, k);
        double best = INFINITY;
        for (double t : default_t_grid()) best = std::min(best, bound_coefficient(n, k, p, t));
        CAPTURE(k);
        CAPTURE(p);
        CAPTURE(n);
        CHECK(best / a <= prev_bracket * (1.0 + 1e-12));
        if (prev_a > 0.0) CHECK(best <= prev * std::max(1.0, a / prev_a) * (1.0 + 1e-12));
        prev = best;
        prev_bracket = best / a;
        prev_a = a;
      }
      CHECK(prev < 1.1);
    }
  }
}

TEST_CASE("verify_inequality examples") {
  const auto r = verify_inequality(make_function("abs"), 2.0, 100);
  CHECK(r.holds);
  CHECK(std::abs(r.lhs - 0.798) < 0.01);
  CHECK(r.lp_norm == doctest::Approx(1.0));
  const auto z = verify_inequality(make_function("zero"), 2.0, 100);
  CHECK(z.holds);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  const auto sq = verify_inequality(make_function("x2"), 2.0, 30);
  CHECK(sq.holds);
  CHECK(sq.lhs == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(sq.rhs > 1.0);
  CHECK(sq.coefficient > 1.0);
  CHECK_THROWS_AS(verify_inequality(make_function("abs"), 2.0, 24), DomainError);
}

TEST_CASE("inequality holds across the registry") {
  for (const char* name : {"abs", "x2", "abs3", "exp_half_abs", "x4", "one", "unit_interval", "abs_pow:-0.2"}) {
    for (std::int64_t k : {1, 2}) {
      for (double p : {1.5, 2.0, 4.0}) {
        TestFunction g;
        try {
          g = make_function(name, static_cast<int>(k));
        } catch (const DomainError&) {
          continue;
        }
        if (!g.growth.admits_moment(p)) continue;
        const auto base = dimension_threshold(p, k);
        for (std::int64_t n : {base + 1, base + 2, base + 10, base + 100, base + 1000}) {
          const auto r = verify_inequality(g, p, n);
          CAPTURE(name);
          CAPTURE(k);
          CAPTURE(p);
          CAPTURE(n);
          CHECK(r.holds);
        }
      }
    }
  }
}

TEST_CASE("spherical mean of |x| approaches the Gaussian one") {
  const auto r = verify_inequality(make_function("abs"), 2.0, 10000);
  const double ratio = r.lhs / r.lp_norm;
  CHECK(ratio >= std::sqrt(2.0 / kPi) - 0.01);
  CHECK(ratio <= std::sqrt(2.0 / kPi) + 0.01);
}

TEST_CASE("epsilon_dimension") {
  const auto cert = epsilon_dimension(2.0, 1, 2.0);
  CHECK(cert.coefficient <= 3.0);
  CHECK(cert.n > dimension_threshold(2.0, 1));
  const auto loose = epsilon_dimension(2.0, 1, 1e9);
  CHECK(loose.n == dimension_threshold(2.0, 1) + 1);

  const auto half = epsilon_dimension(2.0, 1, 0.5);
  CHECK(half.coefficient <= 1.5);
  CHECK(std::abs(bound_coefficient(half.n, 1, 2.0, half.t) - half.coefficient) < 1e-9);
  // minimality: one dimension lower misses the target on the whole grid
  if (half.n - 1 > dimension_threshold(2.0, 1)) {
    double best = INFINITY;
    for (double t : default_t_grid()) best = std::min(best, bound_coefficient(half.n - 1, 1, 2.0, t));
    CHECK(best > 1.5);
  }
  CHECK_THROWS_AS(epsilon_dimension(2.0, 1, 0.0), DomainError);
  CHECK_THROWS_AS(epsilon_dimension(2.0, 1, 1e-6, {}, default_t_grid(), 1000), SearchExhausted);
}
