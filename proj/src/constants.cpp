#include "sphint/constants.hpp"

#include <array>
#include <cmath>
#include <string>

#include "sphint/error.hpp"

namespace sphint {
namespace {

constexpr double kHalfLnTwoPi = 0.5 * kLnTwoPi;
constexpr double kStirlingCutoff = 10.0;

// Lanczos approximation, g = 7, nine terms.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_log_gamma(double x) {
  if (x < 0.5) {
    // reflection
    return std::log(kPi / std::sin(kPi * x)) - lanczos_log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    sum += kLanczos[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  return kHalfLnTwoPi + (z + 0.5) * std::log(t) - t + std::log(sum);
}

// ln Gamma(x) - [(x - 1/2) ln x - x + ln(2 pi)/2], valid for x >= 10.
double stirling_remainder(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Horner form of 1/12x - 1/360x^3 + 1/1260x^5 - 1/1680x^7 + 1/1188x^9
  //                 - 691/360360x^11 + 1/156x^13
  double series = 1.0 / 156.0;
  series = series * inv2 - 691.0 / 360360.0;
  series = series * inv2 + 1.0 / 1188.0;
  series = series * inv2 - 1.0 / 1680.0;
  series = series * inv2 + 1.0 / 1260.0;
  series = series * inv2 - 1.0 / 360.0;
  series = series * inv2 + 1.0 / 12.0;
  return series * inv;
}

void require_projection(std::int64_t n, std::int64_t k, const char* what) {
  if (k < 1 || k >= n) {
    throw DomainError(std::string(what) + ": need 1 <= k < n, got n=" + std::to_string(n) +
                      " k=" + std::to_string(k));
  }
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
  }
  if (std::isinf(x)) return x;
  if (x < kStirlingCutoff) return lanczos_log_gamma(x);
  return (x - 0.5) * std::log(x) - x + kHalfLnTwoPi + stirling_remainder(x);
}

double log_surface_area_constant(std::int64_t d) {
  if (d < 1) {
    throw DomainError("surface_area_constant: need d >= 1, got " + std::to_string(d));
  }
  const double half = 0.5 * static_cast<double>(d + 1);
  return std::log(2.0) + half * std::log(kPi) - log_gamma(half);
}

double surface_area_constant(std::int64_t d) { return std::exp(log_surface_area_constant(d)); }

double log_a_coeff(std::int64_t n, std::int64_t k) {
  require_projection(n, k, "a_coeff");
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double half_n = 0.5 * nd;
  const double half_rest = 0.5 * (nd - kd);
  if (half_rest >= kStirlingCutoff) {
    // The leading Stirling terms of the two Gammas collapse to a log1p.
    return -0.5 * (nd - 1.0) * std::log1p(-kd / nd) - 0.5 * kd + stirling_remainder(half_n) -
           stirling_remainder(half_rest);
  }
  return log_gamma(half_n) - log_gamma(half_rest) - 0.5 * kd * std::log(half_rest);
}

double a_coeff(std::int64_t n, std::int64_t k) { return std::exp(log_a_coeff(n, k)); }

double log_b_coeff(std::int64_t n, std::int64_t k) {
  require_projection(n, k, "b_coeff");
  const double kd = static_cast<double>(k);
  return 0.5 * kd * std::log1p(-kd / static_cast<double>(n));
}

double b_coeff(std::int64_t n, std::int64_t k) { return std::exp(log_b_coeff(n, k)); }

Coefficients coefficients(std::int64_t n, std::int64_t k) {
  return Coefficients{n, k, a_coeff(n, k), b_coeff(n, k)};
}

double conjugate_exponent(double p) {
  if (!(p > 1.0)) {
    throw DomainError("conjugate_exponent: need p > 1, got " + std::to_string(p));
  }
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

std::int64_t dimension_threshold(double p, std::int64_t k) {
  if (!(p > 1.0)) {
    throw DomainError("dimension_threshold: need p > 1, got " + std::to_string(p));
  }
  if (k < 1) {
    throw DomainError("dimension_threshold: need k >= 1, got " + std::to_string(k));
  }
  const double bound = 4.0 * static_cast<double>(k + 2) * conjugate_exponent(p);
  const double nearest = std::round(bound);
  // 4(k+2)q is an integer for the common p values; do not let rounding noise bump it.
  if (std::abs(bound - nearest) <= 1e-9 * bound) return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::ceil(bound));
}

}  // namespace sphint
