#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sphint/quadrature.hpp"
#include "sphint/test_function.hpp"

namespace sphint::riemann_lebesgue {

enum class Kind { cosine, sine };

std::string to_string(Kind kind);
Kind kind_from_string(const std::string& s);

/// g_n(x) = (1 - cos(n x)) / 2 pi, or the sine analogue, on T = [-pi, pi].
class OscillatoryDensity {
 public:
  /// Throws DomainError for n < 1.
  OscillatoryDensity(std::int64_t n, Kind kind);

  std::int64_t n() const noexcept { return n_; }
  Kind kind() const noexcept { return kind_; }

 private:
  std::int64_t n_;
  Kind kind_;
};

/// Throws DomainError outside [-pi, pi].
double density(const OscillatoryDensity& d, double x);

/// Normalized antiderivative: F(-pi) = 0, F(pi) = 1. For the cosine kind
/// F(x) = (x + pi - sin(n x)/n) / 2 pi.
double cdf(const OscillatoryDensity& d, double x);

/// Integral over T of f(x) cos(n x) (or sin(n x)). Panels are cut at every
/// multiple of pi/n and at the breakpoints of f.
double fourier_coefficient(const TestFunction& f, std::int64_t n, Kind kind,
                           const QuadratureConfig& cfg = {});

/// Integral over T of f against Lebesgue measure.
double lebesgue_integral(const TestFunction& f, const QuadratureConfig& cfg = {});

/// Integral over T of f against g_n dx, integrated directly.
double expectation(const TestFunction& f, const OscillatoryDensity& d, const QuadratureConfig& cfg = {});

struct DecayReport {
  std::string function_name;
  Kind kind = Kind::cosine;
  std::vector<std::int64_t> n_grid;
  std::vector<double> values;
  std::vector<double> abs_values;
  /// Least-squares slope of log|value| against log n over nonzero values.
  double slope = 0.0;
  /// Negative slope and last magnitude below the first.
  bool decaying = false;
};

DecayReport rl_sweep(const TestFunction& f, const std::vector<std::int64_t>& n_grid, Kind kind = Kind::cosine,
                     const QuadratureConfig& cfg = {});

}  // namespace sphint::riemann_lebesgue
