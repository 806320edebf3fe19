#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace hoover {

/// Counter-based 64-bit generator: output k is a SplitMix64 finalizer applied
/// to key + k * golden_gamma. A stream is fully identified by (key, counter),
/// so replaying from the same key reproduces every draw.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t key = 0) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + (++counter_) * kGamma); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  double normal(double mean = 0.0, double stddev = 1.0) {
    return mean + stddev * normal_(*this);
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::normal_distribution<double> normal_;
};

/// Stream tags keep the optimizer, evaluation and sweep streams of one master
/// seed apart.
enum class StreamTag : std::uint64_t {
  kOptimizer = 0x4f50,
  kEvaluation = 0x4556,
  kEstimate = 0x4d43,
};

constexpr std::uint64_t derive_seed(std::uint64_t master, StreamTag tag, std::uint64_t index) {
  std::uint64_t k = Rng::mix(master ^ (static_cast<std::uint64_t>(tag) * 0x9e3779b97f4a7c15ULL));
  return Rng::mix(k + index * 0xd1b54a32d192ed03ULL + 1);
}

}  // namespace hoover
