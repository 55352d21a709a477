#pragma once

#include <cstdint>

namespace sphint {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kLnTwoPi = 1.837877066409345483560659472811235280;

/// The coefficient pair multiplying the disintegration weight of the first
/// k coordinates of the uniform law on S^{n-1}(sqrt n).
struct Coefficients {
  std::int64_t n = 0;
  std::int64_t k = 0;
  double a = 0.0;  // Gamma(n/2) / [Gamma((n-k)/2) ((n-k)/2)^{k/2}]
  double b = 0.0;  // (1 - k/n)^{k/2}
};

/// ln Gamma(x) for x > 0. Lanczos below 10, Stirling series above.
double log_gamma(double x);

/// Surface area of the unit sphere S^d in R^{d+1}: 2 pi^{(d+1)/2} / Gamma((d+1)/2).
double surface_area_constant(std::int64_t d);
double log_surface_area_constant(std::int64_t d);

/// ln a_{n,k}, via the difference of Stirling remainders at large n.
double log_a_coeff(std::int64_t n, std::int64_t k);
double a_coeff(std::int64_t n, std::int64_t k);

double log_b_coeff(std::int64_t n, std::int64_t k);
double b_coeff(std::int64_t n, std::int64_t k);

Coefficients coefficients(std::int64_t n, std::int64_t k);

/// Smallest dimension bound 4(k+2)q with 1/p + 1/q = 1, rounded up.
/// Inequality checks only accept n strictly above this value.
std::int64_t dimension_threshold(double p, std::int64_t k);

/// Hoelder conjugate p/(p-1).
double conjugate_exponent(double p);

}  // namespace sphint
