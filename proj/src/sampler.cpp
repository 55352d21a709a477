#include "sphint/sampler.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>

#include "sphint/error.hpp"

namespace sphint {
namespace {

constexpr std::uint64_t kSphereTag = 0x5350484552450001ULL;
constexpr std::uint64_t kWllnTag = 0x574c4c4e00000002ULL;
constexpr std::int64_t kStreamingDimension = 100000;
constexpr double kNormTolerance = 1e-9;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void put_u32(unsigned char* out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out[i] = static_cast<unsigned char>(v >> (8 * i));
}

void put_u64(unsigned char* out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out[i] = static_cast<unsigned char>(v >> (8 * i));
}

std::uint32_t get_u32(const unsigned char* in) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[i]) << (8 * i);
  return v;
}

std::uint64_t get_u64(const unsigned char* in) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[i]) << (8 * i);
  return v;
}

}  // namespace

unsigned SamplerOptions::resolved_threads() const {
  if (threads > 0) return threads;
  if (const char* env = std::getenv("SPHINT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  std::uint64_t state = seed;
  std::uint64_t mixed = splitmix64(state) ^ tag;
  mixed = splitmix64(mixed) ^ index;
  return splitmix64(mixed);
}

struct NormalStream::State {
  boost::random::mt19937_64 engine;
  boost::random::normal_distribution<double> normal;
};

NormalStream::NormalStream(std::uint64_t stream_seed) : state_(std::make_unique<State>()) {
  state_->engine.seed(stream_seed);
}
NormalStream::NormalStream(NormalStream&&) noexcept = default;
NormalStream& NormalStream::operator=(NormalStream&&) noexcept = default;
NormalStream::~NormalStream() = default;

double NormalStream::operator()() { return state_->normal(state_->engine); }

double NormalStream::uniform() {
  return static_cast<double>(state_->engine() >> 11) * 0x1.0p-53;
}

void for_each_block(std::int64_t blocks, const SamplerOptions& options,
                    const std::function<void(std::int64_t)>& body) {
  const auto workers = static_cast<std::int64_t>(
      std::min<std::int64_t>(options.resolved_threads(), std::max<std::int64_t>(blocks, 1)));
  if (workers <= 1) {
    for (std::int64_t b = 0; b < blocks; ++b) body(b);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (std::int64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::int64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
        try {
          body(b);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(blocks);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

SampleBatch::SampleBatch(ProjectionSpec spec, std::uint64_t seed, std::vector<double> points,
                         bool full_norm_check, std::int64_t block_size)
    : spec_(spec),
      seed_(seed),
      count_(static_cast<std::int64_t>(points.size()) / spec.k()),
      points_(std::move(points)),
      full_norm_check_(full_norm_check),
      block_size_(block_size) {
  if (static_cast<std::int64_t>(points_.size()) != count_ * spec_.k()) {
    throw DimensionMismatch("SampleBatch: point buffer is not a multiple of k");
  }
}

std::span<const double> SampleBatch::point(std::int64_t i) const {
  if (i < 0 || i >= count_) throw DomainError("SampleBatch::point: index out of range");
  return std::span<const double>(points_).subspan(static_cast<std::size_t>(i * k()),
                                                  static_cast<std::size_t>(k()));
}

double SampleBatch::coordinate(std::int64_t i, std::int64_t axis) const {
  return point(i)[static_cast<std::size_t>(axis)];
}

std::vector<double> SampleBatch::column(std::int64_t axis) const {
  if (axis < 0 || axis >= k()) throw DomainError("SampleBatch::column: axis out of range");
  std::vector<double> out(static_cast<std::size_t>(count_));
  for (std::int64_t i = 0; i < count_; ++i) {
    out[static_cast<std::size_t>(i)] = points_[static_cast<std::size_t>(i * k() + axis)];
  }
  return out;
}

SampleBatch sample_sphere(const ProjectionSpec& spec, std::int64_t count, std::uint64_t seed,
                          const SamplerOptions& options) {
  if (count < 1) throw DomainError("sample_sphere: need count >= 1");
  if (options.block_size < 1) throw DomainError("sample_sphere: need block_size >= 1");
  const std::int64_t n = spec.n();
  const std::int64_t k = spec.k();
  const bool streaming = options.streaming || n >= kStreamingDimension;
  if (!streaming) {
    const long double bytes = static_cast<long double>(count) * static_cast<long double>(n) * 8.0L;
    if (bytes > static_cast<long double>(options.memory_budget_bytes)) {
      throw ResourceLimit("sample_sphere: count*n = " + std::to_string(count) + "*" +
                          std::to_string(n) + " doubles exceed the memory budget; request streaming");
    }
  }

  const double nd = static_cast<double>(n);
  const std::int64_t block = options.block_size;
  const std::int64_t blocks = (count + block - 1) / block;
  std::vector<double> points(static_cast<std::size_t>(count * k));
  std::vector<char> norm_ok(static_cast<std::size_t>(blocks), 1);

  for_each_block(blocks, options, [&](std::int64_t b) {
    NormalStream normal(derive_stream_seed(seed, kSphereTag, static_cast<std::uint64_t>(b)));
    const std::int64_t first = b * block;
    const std::int64_t last = std::min(count, first + block);
    std::vector<double> full(streaming ? static_cast<std::size_t>(k) : static_cast<std::size_t>(n));
    bool ok = true;
    for (std::int64_t i = first; i < last; ++i) {
      double sum_sq = 0.0;
      if (streaming) {
        for (std::int64_t j = 0; j < k; ++j) {
          const double z = normal();
          full[static_cast<std::size_t>(j)] = z;
          sum_sq += z * z;
        }
        for (std::int64_t j = k; j < n; ++j) {
          const double z = normal();
          sum_sq += z * z;
        }
      } else {
        for (auto& z : full) {
          z = normal();
          sum_sq += z * z;
        }
      }
      const double scale = std::sqrt(nd / sum_sq);
      double norm_sq = 0.0;
      if (streaming) {
        norm_sq = scale * scale * sum_sq;
      } else {
        for (double z : full) norm_sq += (scale * z) * (scale * z);
      }
      ok = ok && std::abs(norm_sq - nd) <= nd * kNormTolerance;
      double* out = points.data() + i * k;
      for (std::int64_t j = 0; j < k; ++j) out[j] = scale * full[static_cast<std::size_t>(j)];
    }
    norm_ok[static_cast<std::size_t>(b)] = ok ? 1 : 0;
  });

  const bool all_ok = std::all_of(norm_ok.begin(), norm_ok.end(), [](char c) { return c != 0; });
  return SampleBatch(spec, seed, std::move(points), all_ok, block);
}

Box Box::whole(std::int64_t k) {
  const double inf = std::numeric_limits<double>::infinity();
  return Box{std::vector<double>(static_cast<std::size_t>(k), -inf),
             std::vector<double>(static_cast<std::size_t>(k), inf)};
}

bool Box::contains(std::span<const double> x) const {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  }
  return true;
}

double empirical_probability(const SampleBatch& batch, const Box& box) {
  const auto k = static_cast<std::size_t>(batch.k());
  if (box.lower.size() != k || box.upper.size() != k) {
    throw DimensionMismatch("empirical_probability: box dimension " + std::to_string(box.lower.size()) +
                            " does not match k=" + std::to_string(k));
  }
  std::int64_t inside = 0;
  for (std::int64_t i = 0; i < batch.count(); ++i) {
    if (box.contains(batch.point(i))) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(batch.count());
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw EmptyInput("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double m = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    const double above = static_cast<double>(i + 1) / m - f;
    const double below = f - static_cast<double>(i) / m;
    d = std::max({d, above, below});
  }
  return d;
}

double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw EmptyInput("ks_two_sample_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double kolmogorov_critical_coefficient(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("kolmogorov_critical_coefficient: need 0 < alpha < 1");
  return std::sqrt(-0.5 * std::log(0.5 * alpha));
}

WllnEstimate wlln_probability(std::int64_t n, double epsilon, std::int64_t trials, std::uint64_t seed,
                              const SamplerOptions& options) {
  if (n < 1) throw DomainError("wlln_probability: need n >= 1");
  if (!(epsilon > 0.0)) throw DomainError("wlln_probability: need epsilon > 0");
  if (trials < 1) throw DomainError("wlln_probability: need trials >= 1");
  const std::int64_t block = std::max<std::int64_t>(1, options.block_size);
  const std::int64_t blocks = (trials + block - 1) / block;
  std::vector<std::int64_t> hits(static_cast<std::size_t>(blocks), 0);
  const double nd = static_cast<double>(n);

  for_each_block(blocks, options, [&](std::int64_t b) {
    NormalStream normal(derive_stream_seed(seed, kWllnTag, static_cast<std::uint64_t>(b)));
    const std::int64_t first = b * block;
    const std::int64_t last = std::min(trials, first + block);
    std::int64_t local = 0;
    for (std::int64_t t = first; t < last; ++t) {
      double sum_sq = 0.0;
      for (std::int64_t j = 0; j < n; ++j) {
        const double z = normal();
        sum_sq += z * z;
      }
      if (std::abs(sum_sq / nd - 1.0) > epsilon) ++local;
    }
    hits[static_cast<std::size_t>(b)] = local;
  });

  WllnEstimate est;
  est.trials = trials;
  for (auto h : hits) est.hits += h;
  est.probability = static_cast<double>(est.hits) / static_cast<double>(trials);
  est.standard_error = std::sqrt(est.probability * (1.0 - est.probability) / static_cast<double>(trials));
  return est;
}

void write_batch(std::ostream& out, const SampleBatch& batch) {
  std::array<unsigned char, 32> header{};
  std::memcpy(header.data(), "SPHB", 4);
  put_u32(header.data() + 4, kBatchFormatVersion);
  put_u64(header.data() + 8, static_cast<std::uint64_t>(batch.spec().n()));
  put_u32(header.data() + 16, static_cast<std::uint32_t>(batch.k()));
  put_u32(header.data() + 20, 0);
  put_u64(header.data() + 24, static_cast<std::uint64_t>(batch.count()));
  out.write(reinterpret_cast<const char*>(header.data()), header.size());
  std::array<unsigned char, 8> word{};
  for (double v : batch.points()) {
    put_u64(word.data(), std::bit_cast<std::uint64_t>(v));
    out.write(reinterpret_cast<const char*>(word.data()), word.size());
  }
  if (!out) throw Error("write_batch: stream write failed");
}

BatchFile read_batch(std::istream& in) {
  std::array<unsigned char, 32> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  if (in.gcount() != static_cast<std::streamsize>(header.size())) throw Error("read_batch: truncated header");
  if (std::memcmp(header.data(), "SPHB", 4) != 0) throw Error("read_batch: bad magic");
  const std::uint32_t version = get_u32(header.data() + 4);
  if (version != kBatchFormatVersion) {
    throw Error("read_batch: unsupported version " + std::to_string(version));
  }
  BatchFile file;
  file.n = static_cast<std::int64_t>(get_u64(header.data() + 8));
  file.k = static_cast<std::int64_t>(get_u32(header.data() + 16));
  file.count = static_cast<std::int64_t>(get_u64(header.data() + 24));
  if (file.k < 1 || file.count < 0) throw Error("read_batch: malformed header");
  file.points.resize(static_cast<std::size_t>(file.count * file.k));
  std::array<unsigned char, 8> word{};
  for (auto& v : file.points) {
    in.read(reinterpret_cast<char*>(word.data()), word.size());
    if (in.gcount() != 8) throw Error("read_batch: truncated payload");
    v = std::bit_cast<double>(get_u64(word.data()));
  }
  return file;
}

}  // namespace sphint
