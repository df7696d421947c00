#pragma once

#include <cstdint>
#include <limits>

namespace radiomis {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Key of the stream owned by `node` under the run seed `seed`.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t node) noexcept {
  return mix64(mix64(seed) ^ mix64(node * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
}

/// Counter-based private randomness: word number `index` of the stream of
/// `node` under `seed`. Pure function, so any draw can be recomputed.
constexpr std::uint64_t rng_for(std::uint64_t seed, std::uint64_t node,
                                std::uint64_t index) noexcept {
  return mix64(stream_key(seed, node) + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Sequential view over one node's stream. Satisfies
/// UniformRandomBitGenerator, but the protocols only use the helpers below so
/// results do not depend on the standard library's distribution algorithms.
class NodeRng {
 public:
  using result_type = std::uint64_t;

  NodeRng() = default;
  NodeRng(std::uint64_t seed, std::uint64_t node) noexcept
      : key_(stream_key(seed, node)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return next(); }

  result_type next() noexcept {
    ++index_;
    return mix64(key_ + index_ * 0x9E3779B97F4A7C15ULL);
  }

  /// One fair coin flip.
  bool fair_bit() noexcept {
    if (bits_left_ == 0) {
      bit_buffer_ = next();
      bits_left_ = 64;
    }
    const bool bit = (bit_buffer_ >> 63) != 0;
    bit_buffer_ <<= 1;
    --bits_left_;
    return bit;
  }

  /// Geometric(1/2) on {1, 2, 3, ...}: index of the first heads.
  std::uint32_t geometric_half() noexcept {
    std::uint32_t offset = 0;
    for (;;) {
      const std::uint64_t word = next();
      if (word != 0) {
        return offset + static_cast<std::uint32_t>(__builtin_ctzll(word)) + 1;
      }
      offset += 64;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Number of 64-bit words consumed so far.
  std::uint64_t draws() const noexcept { return index_; }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t index_ = 0;
  std::uint64_t bit_buffer_ = 0;
  int bits_left_ = 0;
};

}  // namespace radiomis
