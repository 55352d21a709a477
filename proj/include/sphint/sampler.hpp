#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "sphint/density.hpp"

namespace sphint {

/// Worker and memory settings for Monte Carlo runs.
///
/// Work is cut into fixed-size blocks and block b always draws from the
/// stream derived from (seed, b), so results do not depend on `threads`.
struct SamplerOptions {
  /// 0 means: SPHINT_THREADS from the environment, else hardware concurrency.
  unsigned threads = 0;
  std::int64_t block_size = 4096;
  /// Generate each point coordinate by coordinate, keeping only the first k
  /// coordinates and a running sum of squares. Forced for n >= 10^5.
  bool streaming = false;
  /// Budget for count * n doubles when not streaming.
  std::uint64_t memory_budget_bytes = std::uint64_t{1} << 30;

  unsigned resolved_threads() const;
};

/// Independent 64-bit stream seed for block `index` of a run tagged `tag`.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index);

/// Standard normal variates for one stream: Boost mt19937_64 driving the
/// Boost ziggurat normal. Both algorithms are fixed by the Boost version.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t stream_seed);
  NormalStream(NormalStream&&) noexcept;
  NormalStream& operator=(NormalStream&&) noexcept;
  ~NormalStream();

  double operator()();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  struct State;
  std::unique_ptr<State> state_;
};

/// Seeded batch of points uniform on S^{n-1}(sqrt n), projected on their
/// first k coordinates. Immutable once built.
class SampleBatch {
 public:
  SampleBatch(ProjectionSpec spec, std::uint64_t seed, std::vector<double> points,
              bool full_norm_check, std::int64_t block_size);

  const ProjectionSpec& spec() const noexcept { return spec_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::int64_t count() const noexcept { return count_; }
  std::int64_t k() const noexcept { return spec_.k(); }
  std::int64_t block_size() const noexcept { return block_size_; }
  /// True when every full point satisfied | |x|^2 - n | <= n 1e-9 before projection.
  bool full_norm_check() const noexcept { return full_norm_check_; }

  std::span<const double> point(std::int64_t i) const;
  double coordinate(std::int64_t i, std::int64_t axis) const;
  /// Row-major count x k.
  std::span<const double> points() const noexcept { return points_; }
  /// All values of one coordinate.
  std::vector<double> column(std::int64_t axis) const;

 private:
  ProjectionSpec spec_;
  std::uint64_t seed_;
  std::int64_t count_;
  std::vector<double> points_;
  bool full_norm_check_;
  std::int64_t block_size_;
};

/// Draw z ~ N(0, I_n), emit the first k coordinates of sqrt(n) z / |z|.
/// Throws ResourceLimit if count * n doubles exceed the memory budget and
/// streaming was not requested.
SampleBatch sample_sphere(const ProjectionSpec& spec, std::int64_t count, std::uint64_t seed,
                          const SamplerOptions& options = {});

/// Closed axis-aligned box; infinite bounds allowed.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  static Box whole(std::int64_t k);
  bool contains(std::span<const double> x) const;
};

/// Fraction of batch points in the box. Boundary points count as inside.
double empirical_probability(const SampleBatch& batch, const Box& box);

/// sup |F_m - F| by the sorted-sample formula
/// max_i max(i/m - F(x_(i)), F(x_(i)) - (i-1)/m).
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// sup |F_a - F_b| between two empirical CDFs.
double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b);

/// Asymptotic Kolmogorov coefficient c(alpha) = sqrt(-ln(alpha/2)/2);
/// reject when sqrt(m) D > c(alpha).
double kolmogorov_critical_coefficient(double alpha);

struct WllnEstimate {
  double probability = 0.0;
  double standard_error = 0.0;
  std::int64_t trials = 0;
  std::int64_t hits = 0;
};

/// Monte Carlo estimate of P(|(X_1^2 + ... + X_n^2)/n - 1| > epsilon) for
/// iid standard normal X_i, with its binomial standard error.
WllnEstimate wlln_probability(std::int64_t n, double epsilon, std::int64_t trials, std::uint64_t seed,
                              const SamplerOptions& options = {});

/// Runs body(b) for b in [0, blocks) over the resolved worker count.
/// Workers claim blocks in increasing order; body must write only to
/// storage owned by its block.
void for_each_block(std::int64_t blocks, const SamplerOptions& options,
                    const std::function<void(std::int64_t)>& body);

// Binary batch dump --------------------------------------------------------
//
// 32-byte little-endian header:
//   [0,4)   magic "SPHB"
//   [4,8)   version u32 (= 1)
//   [8,16)  n u64
//   [16,20) k u32
//   [20,24) reserved u32 (zero)
//   [24,32) count u64
// followed by count * k IEEE-754 binary64 values, little-endian, row-major.

inline constexpr std::uint32_t kBatchFormatVersion = 1;

struct BatchFile {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t count = 0;
  std::vector<double> points;
};

void write_batch(std::ostream& out, const SampleBatch& batch);
/// Throws Error on a bad magic, unsupported version, or truncated payload.
BatchFile read_batch(std::istream& in);

}  // namespace sphint
