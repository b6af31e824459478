#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace forge {

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t sample_index = 0;

  bool operator==(const SeedSpec&) const = default;
};

/// Philox4x32-10 block function. Exposed for known-answer testing.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based generator. The output stream is a pure function of
/// (master_seed, sample_index, stream), so samples can be generated in any
/// order or in parallel without affecting each other.
///
/// Layout of the Philox counter: word0 = block counter, word1 = stream,
/// words 2..3 = sample_index. The key is the master seed.
class Rng {
 public:
  explicit Rng(SeedSpec seed, std::uint32_t stream = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform(std::uint64_t bound);
  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Uniform double in [0, 1) with 53 bits of resolution.
  double uniform01();
  bool bernoulli(double p) { return uniform01() < p; }

  /// Independent generator for a sub-stream of the same sample.
  Rng fork(std::uint32_t stream) const { return Rng(seed_, stream); }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[uniform(i)]);
    }
  }
  template <typename T>
  void shuffle(std::vector<T>& items) {
    shuffle(std::span<T>(items));
  }

  /// Uniform random permutation of 0..n-1.
  std::vector<int> permutation(int n);

  const SeedSpec& seed() const { return seed_; }
  std::uint32_t stream() const { return stream_; }

 private:
  void refill();

  SeedSpec seed_;
  std::uint32_t stream_;
  std::uint32_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

/// Generator for one sample; equal SeedSpecs give identical streams.
inline Rng derive_rng(SeedSpec seed) { return Rng(seed); }

}  // namespace forge
