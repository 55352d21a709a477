#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sphint/sampler.hpp"

namespace sphint {

/// N-particle velocity configurations uniform on the energy sphere
/// S^{3N-1}(sqrt(3N)), in units where kT = m.
struct GasConfig {
  std::int64_t particles = 1000;
  std::int64_t samples = 100000;
  std::uint64_t seed = 1;

  /// Throws DomainError unless particles >= 2 and samples >= 1.
  void validate() const;
  std::int64_t coordinates() const { return 3 * particles; }
};

/// First-particle velocity of each independent configuration.
struct GasSamples {
  GasConfig config;
  std::vector<std::array<double, 3>> velocities;
  /// Every configuration satisfied |sum |v_i|^2 - 3N| <= 3N 1e-9.
  bool energy_check = false;

  std::vector<double> component(int axis) const;
  std::vector<double> speeds() const;
};

GasSamples sample_configuration(const GasConfig& cfg, const SamplerOptions& options = {});

struct KsReport {
  std::int64_t samples = 0;
  double statistic = 0.0;
  /// 1.63 / sqrt(samples), the 0.01 level.
  double critical = 0.0;
  bool pass = false;
  /// False when fewer than 10^3 samples were drawn; pass is then meaningless.
  bool defined = false;
};

inline constexpr double kKsCritical001 = 1.63;
inline constexpr std::int64_t kMinGasSamples = 1000;

/// KS distance of the v_x marginal from the standard normal law.
KsReport component_marginal_test(const GasSamples& gas);
KsReport component_marginal_test(const GasConfig& cfg, const SamplerOptions& options = {});

struct SpeedStatistics {
  std::int64_t samples = 0;
  double mean_speed = 0.0;
  double mean_speed_se = 0.0;
  double mean_square_speed = 0.0;
  double mean_square_speed_se = 0.0;
  /// Maxwell (chi with 3 degrees of freedom) references: 2 sqrt(2/pi) and 3.
  double reference_mean_speed = 0.0;
  double reference_mean_square_speed = 3.0;
};

SpeedStatistics speed_statistics(const GasSamples& gas);
SpeedStatistics speed_statistics(const GasConfig& cfg, const SamplerOptions& options = {});

/// Largest pairwise two-sample KS distance among the v_x, v_y, v_z samples,
/// and whether it stays below c(0.01) sqrt(2/m).
struct IsotropyReport {
  double max_statistic = 0.0;
  double critical = 0.0;
  bool pass = false;
};

IsotropyReport isotropy_test(const GasSamples& gas);

}  // namespace sphint
