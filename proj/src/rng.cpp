#include "dkwsmc/rng.hpp"

#include <cmath>

#include "dkwsmc/errors.hpp"

namespace dkwsmc {

namespace {

constexpr std::uint32_t kWeylA = 0x9E3779B9u;  // golden ratio
constexpr std::uint32_t kWeylB = 0xBB67AE85u;  // sqrt(3) - 1
constexpr std::uint32_t kMultA = 0xD2511F53u;
constexpr std::uint32_t kMultB = 0xCD9E8D57u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

inline void round_once(std::array<std::uint32_t, 4>& ctr, const std::array<std::uint32_t, 2>& key) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mul_hi_lo(kMultA, ctr[0], hi0, lo0);
    mul_hi_lo(kMultB, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> PathRng::block(const std::array<std::uint32_t, 4>& counter,
                                            const std::array<std::uint32_t, 2>& key) {
    std::array<std::uint32_t, 4> ctr = counter;
    std::array<std::uint32_t, 2> k = key;
    round_once(ctr, k);
    for (int r = 1; r < 10; ++r) {
        k[0] += kWeylA;
        k[1] += kWeylB;
        round_once(ctr, k);
    }
    return ctr;
}

void PathRng::refill() {
    const std::array<std::uint32_t, 4> counter = {
        static_cast<std::uint32_t>(block_index_),
        static_cast<std::uint32_t>(block_index_ >> 32),
        static_cast<std::uint32_t>(stream_),
        static_cast<std::uint32_t>(stream_ >> 32),
    };
    block_ = block(counter, key_);
    ++block_index_;
    block_pos_ = 0;
}

double PathRng::next_exponential(double rate) {
    if (!(rate > 0.0)) throw ParameterError("exponential rate must be positive");
    // next_unit() < 1, so log1p(-u) is finite.
    return -std::log1p(-next_unit()) / rate;
}

}  // namespace dkwsmc
