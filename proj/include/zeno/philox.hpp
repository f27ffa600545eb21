#pragma once

// Philox4x32-10 counter-based random generator.  Each (seed, stream) pair
// names an independent substream addressed purely by counters, so trajectory
// k can draw from substream k with no shared state and bit-identical output
// under any execution order.

#include <array>
#include <cstdint>

namespace zeno {

class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_{static_cast<std::uint32_t>(stream),
                static_cast<std::uint32_t>(stream >> 32)} {}

  std::uint64_t next_u64() {
    if (word_index_ == 0) {
      block_ = generate_block(block_index_++);
      word_index_ = 4;
    }
    word_index_ -= 2;
    return (static_cast<std::uint64_t>(block_[word_index_ + 1]) << 32) |
           block_[word_index_];
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // One keyed block; exposed for known-answer tests.
  static std::array<std::uint32_t, 4> keyed_block(
      std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      counter = single_round(counter, key);
      key[0] += 0x9E3779B9u;
      key[1] += 0xBB67AE85u;
    }
    return counter;
  }

 private:
  std::array<std::uint32_t, 4> generate_block(std::uint64_t index) const {
    return keyed_block({static_cast<std::uint32_t>(index),
                        static_cast<std::uint32_t>(index >> 32), stream_[0],
                        stream_[1]},
                       key_);
  }

  static std::array<std::uint32_t, 4> single_round(
      const std::array<std::uint32_t, 4>& x,
      const std::array<std::uint32_t, 2>& key) {
    const std::uint64_t p0 = 0xD2511F53ull * x[0];
    const std::uint64_t p1 = 0xCD9E8D57ull * x[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ x[1] ^ key[0], lo1, hi0 ^ x[3] ^ key[1], lo0};
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 2> stream_;
  std::array<std::uint32_t, 4> block_{};
  std::uint64_t block_index_ = 0;
  int word_index_ = 0;
};

}  // namespace zeno
