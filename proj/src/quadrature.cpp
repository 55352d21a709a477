#include "sphint/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "sphint/constants.hpp"
#include "sphint/error.hpp"

namespace sphint {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

Panel gauss_kronrod_15(const std::function<double(double)>& g, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};

  const double fc = g(center);
  double res_gauss = fc * kWg[3];
  double res_kronrod = fc * kWgk[7];
  double res_abs = std::abs(res_kronrod);
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double dx = half * kXgk[jtw];
    f1[jtw] = g(center - dx);
    f2[jtw] = g(center + dx);
    res_gauss += kWg[j] * (f1[jtw] + f2[jtw]);
    res_kronrod += kWgk[jtw] * (f1[jtw] + f2[jtw]);
    res_abs += kWgk[jtw] * (std::abs(f1[jtw]) + std::abs(f2[jtw]));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double dx = half * kXgk[jtwm1];
    f1[jtwm1] = g(center - dx);
    f2[jtwm1] = g(center + dx);
    res_kronrod += kWgk[jtwm1] * (f1[jtwm1] + f2[jtwm1]);
    res_abs += kWgk[jtwm1] * (std::abs(f1[jtwm1]) + std::abs(f2[jtwm1]));
  }
  const double mean = 0.5 * res_kronrod;
  double res_asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    res_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double width = std::abs(half);
  res_abs *= width;
  res_asc *= width;
  double error = std::abs((res_kronrod - res_gauss) * half);
  if (res_asc != 0.0 && error != 0.0) {
    error = res_asc * std::min(1.0, std::pow(200.0 * error / res_asc, 1.5));
  }
  if (res_abs > kTiny / (50.0 * kEps)) error = std::max(50.0 * kEps * res_abs, error);

  const double value = res_kronrod * half;
  if (!std::isfinite(value) || !std::isfinite(error)) {
    throw NonConvergence("non-finite integrand value on [" + std::to_string(a) + ", " +
                             std::to_string(b) + "]",
                         value, error);
  }
  return {a, b, value, error};
}

// log of the integration weight as a function of |x|^2.
using LogWeight = std::function<double(double)>;

QuadratureConfig tightened(const QuadratureConfig& cfg) {
  QuadratureConfig inner = cfg;
  inner.rel_tol = cfg.rel_tol * 0.1;
  inner.abs_tol = cfg.abs_tol * 0.1;
  return inner;
}

// Initial panel boundaries at 0 and +-4j inside [-radius, radius].
std::vector<double> support_breakpoints(double radius, std::span<const double> axis) {
  std::vector<double> breaks(axis.begin(), axis.end());
  breaks.push_back(0.0);
  for (double x = 4.0; x < radius && x <= 48.0; x += 4.0) {
    breaks.push_back(x);
    breaks.push_back(-x);
  }
  return breaks;
}

double weighted_radial(const TestFunction& f, const LogWeight& log_weight, double radius,
                       const QuadratureConfig& cfg) {
  const int k = f.k;
  std::vector<double> breaks(f.axis_breakpoints(0).begin(), f.axis_breakpoints(0).end());
  for (double r = 4.0; r < radius && r <= 48.0; r += 4.0) breaks.push_back(r);
  auto profile = f.radial_profile;
  auto integrand = [&](double r) {
    const double w = std::exp(log_weight(r * r));
    if (w == 0.0) return 0.0;
    return std::pow(r, k - 1) * profile(r) * w;
  };
  const auto res = integrate_adaptive(integrand, 0.0, radius, breaks, cfg);
  return radial_measure_factor(k) * res.value;
}

// Nested one-dimensional integration over the ball of the given radius.
double weighted_tensor(const TestFunction& f, const LogWeight& log_weight, double radius,
                       const QuadratureConfig& cfg) {
  const int k = f.k;
  std::vector<double> point(static_cast<std::size_t>(k), 0.0);
  std::function<double(int, double, const QuadratureConfig&)> level =
      [&](int axis, double used_r2, const QuadratureConfig& level_cfg) -> double {
    const double rest = radius * radius - used_r2;
    if (rest <= 0.0) return 0.0;
    const double half_width = std::sqrt(rest);
    const auto breaks = support_breakpoints(half_width, f.axis_breakpoints(static_cast<std::size_t>(axis)));
    const QuadratureConfig next_cfg = tightened(level_cfg);
    auto integrand = [&](double x) {
      point[static_cast<std::size_t>(axis)] = x;
      const double r2 = used_r2 + x * x;
      if (axis + 1 == k) {
        const double w = std::exp(log_weight(r2));
        if (w == 0.0) return 0.0;
        return f(point) * w;
      }
      return level(axis + 1, r2, next_cfg);
    };
    return integrate_adaptive(integrand, -half_width, half_width, breaks, level_cfg).value;
  };
  return level(0, 0.0, cfg);
}

double weighted_integral(const TestFunction& f, const LogWeight& log_weight, double radius,
                         const QuadratureConfig& cfg) {
  cfg.validate();
  if (f.k < 1) throw DimensionMismatch("test function has k < 1");
  if (cfg.scheme == QuadratureScheme::radial_reduction && !f.radial()) {
    throw DomainError("radial_reduction requested for non-radial function " + f.name);
  }
  if (cfg.scheme == QuadratureScheme::tensor_product && f.k > 3) {
    throw DomainError("tensor_product quadrature is limited to k <= 3");
  }
  if (cfg.scheme == QuadratureScheme::radial_reduction ||
      (cfg.scheme == QuadratureScheme::adaptive_1d && f.k > 1 && f.radial())) {
    return weighted_radial(f, log_weight, radius, cfg);
  }
  if (f.k > 3) {
    throw DomainError("deterministic quadrature of non-radial functions is limited to k <= 3; "
                      "use the sampler for " + f.name);
  }
  return weighted_tensor(f, log_weight, radius, cfg);
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw DomainError("QuadratureConfig: tolerances must be positive");
  }
  if (max_subdivisions < 1) throw DomainError("QuadratureConfig: max_subdivisions must be >= 1");
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& g, double a, double b,
                                    std::span<const double> breakpoints,
                                    const QuadratureConfig& cfg) {
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw DomainError("integrate_adaptive: bounds must be finite");
  }
  if (a == b) return {};
  if (a > b) {
    auto flipped = integrate_adaptive(g, b, a, breakpoints, cfg);
    flipped.value = -flipped.value;
    return flipped;
  }

  std::vector<double> edges{a, b};
  for (double x : breakpoints) {
    if (x > a && x < b) edges.push_back(x);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<Panel> panels;
  panels.reserve(edges.size() + 64);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    panels.push_back(gauss_kronrod_15(g, edges[i], edges[i + 1]));
  }

  auto by_error = [&panels](std::size_t lhs, std::size_t rhs) {
    return panels[lhs].error < panels[rhs].error;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_error)> queue(by_error);
  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    queue.push(i);
    total += panels[i].value;
    total_error += panels[i].error;
  }

  auto recompute = [&] {
    total = 0.0;
    total_error = 0.0;
    for (const auto& p : panels) {
      total += p.value;
      total_error += p.error;
    }
  };

  for (;;) {
    if (total_error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
      recompute();
      if (total_error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) break;
    }
    if (static_cast<std::int64_t>(panels.size()) >= cfg.max_subdivisions) {
      recompute();
      throw NonConvergence("adaptive quadrature exhausted " + std::to_string(cfg.max_subdivisions) +
                               " panels on [" + std::to_string(a) + ", " + std::to_string(b) + "]",
                           total, total_error);
    }
    const std::size_t worst = queue.top();
    queue.pop();
    const Panel old = panels[worst];
    const double mid = 0.5 * (old.a + old.b);
    if (!(mid > old.a && mid < old.b) || (old.b - old.a) <= 4.0 * kEps * std::max(std::abs(old.a), std::abs(old.b))) {
      recompute();
      throw NonConvergence("adaptive quadrature hit the resolution limit near " + std::to_string(mid),
                           total, total_error);
    }
    const Panel left = gauss_kronrod_15(g, old.a, mid);
    const Panel right = gauss_kronrod_15(g, mid, old.b);
    total += left.value + right.value - old.value;
    total_error += left.error + right.error - old.error;
    panels[worst] = left;
    panels.push_back(right);
    queue.push(worst);
    queue.push(panels.size() - 1);
  }

  std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  QuadratureResult result;
  for (const auto& p : panels) {
    result.value += p.value;
    result.error += p.error;
  }
  result.panels = static_cast<std::int64_t>(panels.size());
  return result;
}

QuadratureResult integrate_sphere_detailed(const TestFunction& f, const ProjectionSpec& spec,
                                           const QuadratureConfig& cfg) {
  if (f.k != spec.k()) {
    throw DimensionMismatch("integrate_sphere: function " + f.name + " has k=" + std::to_string(f.k) +
                            " but projection has k=" + std::to_string(spec.k()));
  }
  LogWeight log_weight = [&spec](double r2) { return marginal_log_density_r2(spec, r2); };
  if (f.k == 1 && cfg.scheme != QuadratureScheme::radial_reduction) {
    cfg.validate();
    const auto breaks = support_breakpoints(spec.radius(), f.axis_breakpoints(0));
    auto integrand = [&](double x) {
      const double w = std::exp(log_weight(x * x));
      if (w == 0.0) return 0.0;
      return f(x) * w;
    };
    return integrate_adaptive(integrand, -spec.radius(), spec.radius(), breaks, cfg);
  }
  return {weighted_integral(f, log_weight, spec.radius(), cfg), 0.0, 0};
}

double integrate_sphere(const TestFunction& f, const ProjectionSpec& spec, const QuadratureConfig& cfg) {
  return integrate_sphere_detailed(f, spec, cfg).value;
}

double gaussian_truncation_radius(double abs_tol) {
  if (!(abs_tol > 0.0 && abs_tol < 1.0)) {
    throw DomainError("gaussian_truncation_radius: need 0 < abs_tol < 1");
  }
  return std::sqrt(2.0 * std::log(1.0 / abs_tol)) + 6.0;
}

QuadratureResult integrate_gaussian_detailed(const TestFunction& f, const QuadratureConfig& cfg) {
  cfg.validate();
  if (f.k == 1 && f.smooth && cfg.scheme == QuadratureScheme::adaptive_1d) {
    static const GaussHermiteRule rule = gauss_hermite_rule(64);
    QuadratureResult res;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) res.value += rule.weights[i] * f(rule.nodes[i]);
    res.panels = 1;
    return res;
  }
  const double k = static_cast<double>(f.k);
  LogWeight log_weight = [k](double r2) { return -0.5 * r2 - 0.5 * k * kLnTwoPi; };
  const double radius = gaussian_truncation_radius(cfg.abs_tol);
  if (f.k == 1 && cfg.scheme != QuadratureScheme::radial_reduction) {
    const auto breaks = support_breakpoints(radius, f.axis_breakpoints(0));
    auto integrand = [&](double x) { return f(x) * std::exp(log_weight(x * x)); };
    return integrate_adaptive(integrand, -radius, radius, breaks, cfg);
  }
  return {weighted_integral(f, log_weight, radius, cfg), 0.0, 0};
}

double integrate_gaussian(const TestFunction& f, const QuadratureConfig& cfg) {
  return integrate_gaussian_detailed(f, cfg).value;
}

double radial_measure_factor(int k) {
  if (k < 1) throw DomainError("radial_measure_factor: need k >= 1");
  return k == 1 ? 2.0 : surface_area_constant(k - 1);
}

double integrate_annulus(const std::function<double(double)>& g, int k, double inner, double outer,
                         const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(inner >= 0.0 && inner < outer)) {
    throw DomainError("integrate_annulus: need 0 <= inner < outer");
  }
  const double r_in = std::sqrt(inner);
  const double r_out = std::sqrt(outer);
  auto integrand = [&](double r) { return std::pow(r, k - 1) * g(r); };
  return radial_measure_factor(k) * integrate_adaptive(integrand, r_in, r_out, {}, cfg).value;
}

double log_theta(std::int64_t n, double t, std::int64_t k, double q, const QuadratureConfig& cfg) {
  if (k < 1 || n <= k) throw DomainError("theta: need 1 <= k < n");
  if (!(t > 1.0)) throw DomainError("theta: need t > 1");
  if (!(q > 1.0)) throw DomainError("theta: need q > 1");
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  // Scale by the integrand's value at the inner edge r^2 = n/t, its maximum on the band.
  const double log_norm = -0.5 * kd * kLnTwoPi;
  const double log_peak = log_norm + 0.25 * nd * std::log1p(-1.0 / t);
  auto scaled = [nd, log_peak, log_norm](double r) {
    return std::exp(log_norm + 0.25 * nd * std::log1p(-(r * r) / nd) - log_peak);
  };
  QuadratureConfig band = cfg;
  band.abs_tol = std::numeric_limits<double>::min();
  const double mass = integrate_annulus(scaled, static_cast<int>(k), nd / t, nd, band);
  return (std::log(mass) + log_peak) / q;
}

double theta(std::int64_t n, double t, std::int64_t k, double q, const QuadratureConfig& cfg) {
  return std::exp(log_theta(n, t, k, q, cfg));
}

GaussHermiteRule gauss_hermite_rule(int order) {
  if (order < 1 || order > 200) throw DomainError("gauss_hermite_rule: need 1 <= order <= 200");
  // Newton iteration on the orthonormal physicists' Hermite recurrence, then
  // rescale nodes by sqrt 2 and weights by 1/sqrt(pi).
  const int n = order;
  const double pim4 = 0.7511255444649425;  // pi^{-1/4}
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> w(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[static_cast<std::size_t>(i - 2)];
    }
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    x[static_cast<std::size_t>(n - 1 - i)] = -z;
    w[static_cast<std::size_t>(i)] = 2.0 / (pp * pp);
    w[static_cast<std::size_t>(n - 1 - i)] = w[static_cast<std::size_t>(i)];
  }
  GaussHermiteRule rule;
  const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
  for (int i = n - 1; i >= 0; --i) {
    rule.nodes.push_back(std::sqrt(2.0) * x[static_cast<std::size_t>(i)]);
    rule.weights.push_back(w[static_cast<std::size_t>(i)] * inv_sqrt_pi);
  }
  return rule;
}

}  // namespace sphint
