#include <doctest.h>

#include <cmath>
#include <vector>

#include "sphint/constants.hpp"
#include "sphint/error.hpp"
#include "sphint/riemann_lebesgue.hpp"
#include "sphint/test_function.hpp"

using namespace sphint;
using namespace sphint::riemann_lebesgue;

namespace {

// 2 int_0^pi x^{-1/2} cos(n x) dx = 4 int_0^sqrt(pi) cos(n u^2) du, by composite Simpson.
double singular_cosine_oracle(std::int64_t n) {
  const int panels = 2000000;
  const double b = std::sqrt(kPi);
  const double h = b / panels;
  const double nd = static_cast<double>(n);
  double s = 1.0 + std::cos(nd * b * b);
  for (int i = 1; i < panels; ++i) {
    const double u = i * h;
    s += (i % 2 ? 4.0 : 2.0) * std::cos(nd * u * u);
  }
  return 4.0 * s * h / 3.0;
}

}  // namespace

TEST_CASE("density values") {
  CHECK(density(OscillatoryDensity(1, Kind::cosine), 0.0) == 0.0);
  CHECK(density(OscillatoryDensity(1, Kind::cosine), kPi) == doctest::Approx(1.0 / kPi));
  CHECK(density(OscillatoryDensity(2, Kind::cosine), kPi / 2.0) == doctest::Approx(1.0 / kPi));
  CHECK_THROWS_AS(density(OscillatoryDensity(1, Kind::cosine), 4.0), DomainError);
  CHECK_THROWS_AS(OscillatoryDensity(0, Kind::sine), DomainError);
}

TEST_CASE("cdf values") {
  for (Kind kind : {Kind::cosine, Kind::sine}) {
    for (std::int64_t n : {1, 2, 7, 30}) {
      const OscillatoryDensity d(n, kind);
      CHECK(cdf(d, kPi) == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(std::abs(cdf(d, -kPi)) < 1e-15);
    }
  }
  CHECK(cdf(OscillatoryDensity(1, Kind::cosine), 0.0) == doctest::Approx(0.5));
}

TEST_CASE("densities integrate to one") {
  const auto one = make_function("one");
  for (Kind kind : {Kind::cosine, Kind::sine}) {
    for (std::int64_t n = 1; n <= 64; ++n) {
      CHECK(std::abs(expectation(one, OscillatoryDensity(n, kind)) - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("cdf is the integral of the density") {
  const QuadratureConfig cfg;
  for (Kind kind : {Kind::cosine, Kind::sine}) {
    for (std::int64_t n : {1, 3, 16}) {
      const OscillatoryDensity d(n, kind);
      for (int i = 0; i < 100; ++i) {
        const double x = -kPi + 2.0 * kPi * (i + 0.5) / 100.0;
        const std::vector<double> none;
        const double q = integrate_adaptive([&](double s) { return density(d, s); }, -kPi, x, none, cfg).value;
        CHECK(std::abs(cdf(d, x) - q) < 1e-9);
      }
    }
  }
}

TEST_CASE("weak convergence to uniform") {
  for (Kind kind : {Kind::cosine, Kind::sine}) {
    for (std::int64_t n : {1, 4, 32, 256}) {
      const OscillatoryDensity d(n, kind);
      double sup = 0.0;
      for (int i = 0; i <= 2000; ++i) {
        const double x = -kPi + 2.0 * kPi * i / 2000.0;
        sup = std::max(sup, std::abs(cdf(d, x) - (x + kPi) / (2.0 * kPi)));
      }
      CHECK(sup <= 1.0 / (kPi * static_cast<double>(n)) + 1e-15);
    }
  }
}

TEST_CASE("fourier coefficient oracles") {
  const auto x2 = make_function("x2");
  CHECK(fourier_coefficient(x2, 1, Kind::cosine) == doctest::Approx(-4.0 * kPi).epsilon(1e-10));
  CHECK(fourier_coefficient(x2, 2, Kind::cosine) == doctest::Approx(kPi).epsilon(1e-10));
  for (std::int64_t n = 1; n <= 32; ++n) {
    const double expected = 4.0 * kPi * (n % 2 ? -1.0 : 1.0) / static_cast<double>(n * n);
    CHECK(std::abs(fourier_coefficient(x2, n, Kind::cosine) - expected) < 1e-8);
  }
  CHECK(std::abs(fourier_coefficient(make_function("sin"), 5, Kind::cosine)) < 1e-10);
  CHECK(std::abs(fourier_coefficient(make_function("one"), 3, Kind::cosine)) < 1e-14);
  CHECK(std::abs(fourier_coefficient(make_function("one"), 3, Kind::sine)) < 1e-14);
  CHECK_THROWS_AS(fourier_coefficient(make_function("x2", 2), 1, Kind::cosine), DimensionMismatch);
}

TEST_CASE("singular integrand against a substitution oracle") {
  const auto f = make_function("abs_pow:-0.5");
  for (std::int64_t n : {8, 64, 512}) {
    CAPTURE(n);
    CHECK(std::abs(fourier_coefficient(f, n, Kind::cosine) - singular_cosine_oracle(n)) < 1e-7);
  }
}

TEST_CASE("expectation decomposes through the Fourier coefficient") {
  for (const char* name : {"x2", "abs", "abs_pow:-0.5", "half_line", "exp_half_abs"}) {
    const auto f = make_function(name);
    for (std::int64_t n : {1, 5, 40}) {
      const double lhs = expectation(f, OscillatoryDensity(n, Kind::cosine));
      const double rhs = (lebesgue_integral(f) - fourier_coefficient(f, n, Kind::cosine)) / (2.0 * kPi);
      CAPTURE(name);
      CAPTURE(n);
      CHECK(std::abs(lhs - rhs) <= 2e-8 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("rl_sweep slopes") {
  const auto r = rl_sweep(make_function("x2"), {1, 2, 4, 8, 16, 32, 64});
  CHECK(std::abs(r.slope + 2.0) < 0.05);
  CHECK(r.decaying);
  const auto s = rl_sweep(make_function("abs_pow:-0.5"), {8, 64, 512});
  CHECK(s.abs_values.back() < 0.2 * s.abs_values.front());
  CHECK(kind_from_string("sine") == Kind::sine);
  CHECK_THROWS_AS(kind_from_string("tan"), DomainError);
}
