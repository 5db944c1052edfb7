#pragma once

#include <array>
#include <cstdint>

namespace dkwsmc {

// Philox4x32-10 counter-based generator (Salmon et al., "Parallel random
// numbers: as easy as 1, 2, 3", SC'11). The output block is a pure function
// of (key, counter), so per-trace streams are derived from (seed, stream)
// without shared state: the seed forms the key and the stream id occupies
// the upper counter words. Distinct streams use disjoint counter blocks by
// construction. All arithmetic is fixed-width, so sequences are identical
// across platforms.
class PathRng {
  public:
    PathRng(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    std::uint64_t next_u64() {
        if (block_pos_ >= 4) refill();
        const std::uint64_t lo = block_[block_pos_];
        const std::uint64_t hi = block_[block_pos_ + 1];
        block_pos_ += 2;
        return lo | (hi << 32);
    }

    // Uniform on [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Exponential with the given rate (> 0), via inversion.
    double next_exponential(double rate);

    // One Philox4x32-10 block. Exposed for known-answer tests.
    static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter,
                                              const std::array<std::uint32_t, 2>& key);

  private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_index_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int block_pos_ = 4;  // forces refill on first use
};

}  // namespace dkwsmc
