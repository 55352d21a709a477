#include "sphint/kinetic_gas.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sphint/constants.hpp"
#include "sphint/density.hpp"
#include "sphint/error.hpp"

namespace sphint {
namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

struct MeanAndError {
  double mean;
  double standard_error;
};

MeanAndError mean_and_error(const std::vector<double>& values) {
  const double m = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / m;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = values.size() > 1 ? ss / (m - 1.0) : 0.0;
  return {mean, std::sqrt(var / m)};
}

}  // namespace

void GasConfig::validate() const {
  if (particles < 2) throw DomainError("GasConfig: need at least 2 particles, got " + std::to_string(particles));
  if (samples < 1) throw DomainError("GasConfig: need samples >= 1");
}

std::vector<double> GasSamples::component(int axis) const {
  if (axis < 0 || axis > 2) throw DomainError("GasSamples::component: axis must be 0, 1 or 2");
  std::vector<double> out;
  out.reserve(velocities.size());
  for (const auto& v : velocities) out.push_back(v[static_cast<std::size_t>(axis)]);
  return out;
}

std::vector<double> GasSamples::speeds() const {
  std::vector<double> out;
  out.reserve(velocities.size());
  for (const auto& v : velocities) out.push_back(std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]));
  return out;
}

GasSamples sample_configuration(const GasConfig& cfg, const SamplerOptions& options) {
  cfg.validate();
  SamplerOptions streaming = options;
  streaming.streaming = true;
  const auto batch = sample_sphere(ProjectionSpec(cfg.coordinates(), 3), cfg.samples, cfg.seed, streaming);
  GasSamples gas;
  gas.config = cfg;
  gas.energy_check = batch.full_norm_check();
  gas.velocities.reserve(static_cast<std::size_t>(batch.count()));
  for (std::int64_t i = 0; i < batch.count(); ++i) {
    const auto p = batch.point(i);
    gas.velocities.push_back({p[0], p[1], p[2]});
  }
  return gas;
}

KsReport component_marginal_test(const GasSamples& gas) {
  KsReport report;
  report.samples = static_cast<std::int64_t>(gas.velocities.size());
  report.statistic = ks_statistic(gas.component(0), normal_cdf);
  report.critical = kKsCritical001 / std::sqrt(static_cast<double>(report.samples));
  report.defined = report.samples >= kMinGasSamples;
  report.pass = report.defined && report.statistic < report.critical;
  return report;
}

KsReport component_marginal_test(const GasConfig& cfg, const SamplerOptions& options) {
  return component_marginal_test(sample_configuration(cfg, options));
}

SpeedStatistics speed_statistics(const GasSamples& gas) {
  if (gas.velocities.empty()) throw EmptyInput("speed_statistics: no samples");
  const auto speeds = gas.speeds();
  std::vector<double> squares;
  squares.reserve(speeds.size());
  for (double s : speeds) squares.push_back(s * s);
  const auto speed = mean_and_error(speeds);
  const auto square = mean_and_error(squares);
  SpeedStatistics stats;
  stats.samples = static_cast<std::int64_t>(speeds.size());
  stats.mean_speed = speed.mean;
  stats.mean_speed_se = speed.standard_error;
  stats.mean_square_speed = square.mean;
  stats.mean_square_speed_se = square.standard_error;
  stats.reference_mean_speed = 2.0 * std::sqrt(2.0 / kPi);
  stats.reference_mean_square_speed = 3.0;
  return stats;
}

SpeedStatistics speed_statistics(const GasConfig& cfg, const SamplerOptions& options) {
  return speed_statistics(sample_configuration(cfg, options));
}

IsotropyReport isotropy_test(const GasSamples& gas) {
  IsotropyReport report;
  const double m = static_cast<double>(gas.velocities.size());
  const auto vx = gas.component(0);
  const auto vy = gas.component(1);
  const auto vz = gas.component(2);
  report.max_statistic = std::max({ks_two_sample_statistic(vx, vy), ks_two_sample_statistic(vx, vz),
                                   ks_two_sample_statistic(vy, vz)});
  report.critical = kolmogorov_critical_coefficient(0.01) * std::sqrt(2.0 / m);
  report.pass = report.max_statistic <= report.critical;
  return report;
}

}  // namespace sphint
