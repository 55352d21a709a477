#include "sphint/riemann_lebesgue.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sphint/constants.hpp"
#include "sphint/error.hpp"

namespace sphint::riemann_lebesgue {
namespace {

void require_in_window(double x, const char* what) {
  if (!(x >= -kPi && x <= kPi)) {
    throw DomainError(std::string(what) + ": x=" + std::to_string(x) + " lies outside [-pi, pi]");
  }
}

std::vector<double> window_breakpoints(const TestFunction& f, std::int64_t n) {
  std::vector<double> breaks(f.axis_breakpoints(0).begin(), f.axis_breakpoints(0).end());
  const double step = kPi / static_cast<double>(n);
  for (std::int64_t j = 1; j < 2 * n; ++j) breaks.push_back(-kPi + static_cast<double>(j) * step);
  return breaks;
}

double integrate_window(const std::function<double(double)>& g, const std::vector<double>& breaks,
                        const QuadratureConfig& cfg) {
  QuadratureConfig local = cfg;
  local.max_subdivisions = cfg.max_subdivisions + static_cast<std::int64_t>(breaks.size());
  return integrate_adaptive(g, -kPi, kPi, breaks, local).value;
}

void require_one_dimensional(const TestFunction& f) {
  if (f.k != 1) throw DimensionMismatch("functions on T must be one-dimensional; " + f.name + " has k=" + std::to_string(f.k));
}

}  // namespace

std::string to_string(Kind kind) { return kind == Kind::cosine ? "cosine" : "sine"; }

Kind kind_from_string(const std::string& s) {
  if (s == "cosine" || s == "cos") return Kind::cosine;
  if (s == "sine" || s == "sin") return Kind::sine;
  throw DomainError("unknown oscillation kind '" + s + "'");
}

OscillatoryDensity::OscillatoryDensity(std::int64_t n, Kind kind) : n_(n), kind_(kind) {
  if (n < 1) throw DomainError("OscillatoryDensity: need n >= 1");
}

double density(const OscillatoryDensity& d, double x) {
  require_in_window(x, "density");
  const double nx = static_cast<double>(d.n()) * x;
  const double wave = d.kind() == Kind::cosine ? std::cos(nx) : std::sin(nx);
  return (1.0 - wave) / (2.0 * kPi);
}

double cdf(const OscillatoryDensity& d, double x) {
  require_in_window(x, "cdf");
  const double n = static_cast<double>(d.n());
  if (d.kind() == Kind::cosine) return (x + kPi - std::sin(n * x) / n) / (2.0 * kPi);
  return (x + kPi + (std::cos(n * x) - std::cos(n * kPi)) / n) / (2.0 * kPi);
}

double fourier_coefficient(const TestFunction& f, std::int64_t n, Kind kind, const QuadratureConfig& cfg) {
  require_one_dimensional(f);
  if (n < 1) throw DomainError("fourier_coefficient: need n >= 1");
  const double freq = static_cast<double>(n);
  std::function<double(double)> g;
  if (kind == Kind::cosine) {
    g = [&f, freq](double x) { return f(x) * std::cos(freq * x); };
  } else {
    g = [&f, freq](double x) { return f(x) * std::sin(freq * x); };
  }
  return integrate_window(g, window_breakpoints(f, n), cfg);
}

double lebesgue_integral(const TestFunction& f, const QuadratureConfig& cfg) {
  require_one_dimensional(f);
  std::vector<double> breaks(f.axis_breakpoints(0).begin(), f.axis_breakpoints(0).end());
  return integrate_window([&f](double x) { return f(x); }, breaks, cfg);
}

double expectation(const TestFunction& f, const OscillatoryDensity& d, const QuadratureConfig& cfg) {
  require_one_dimensional(f);
  return integrate_window([&f, &d](double x) { return f(x) * density(d, x); }, window_breakpoints(f, d.n()), cfg);
}

DecayReport rl_sweep(const TestFunction& f, const std::vector<std::int64_t>& n_grid, Kind kind,
                     const QuadratureConfig& cfg) {
  if (n_grid.empty()) throw DomainError("rl_sweep: empty n grid");
  DecayReport report;
  report.function_name = f.name;
  report.kind = kind;
  report.n_grid = n_grid;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int points = 0;
  for (const auto n : n_grid) {
    const double v = fourier_coefficient(f, n, kind, cfg);
    report.values.push_back(v);
    report.abs_values.push_back(std::abs(v));
    if (std::abs(v) > 0.0) {
      const double lx = std::log(static_cast<double>(n));
      const double ly = std::log(std::abs(v));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++points;
    }
  }
  if (points >= 2) {
    const double denom = points * sxx - sx * sx;
    report.slope = denom != 0.0 ? (points * sxy - sx * sy) / denom : 0.0;
  } else {
    report.slope = std::numeric_limits<double>::quiet_NaN();
  }
  report.decaying = report.slope < 0.0 && report.abs_values.back() < report.abs_values.front();
  return report;
}

}  // namespace sphint::riemann_lebesgue
