#pragma once

#include <array>
#include <cstdint>

#include "lrdcp/normal.hpp"

// Counter-based random number generation (Philox 4x32-10, Salmon et al. 2011).
//
// A generator is a pure function of (seed, counter): the same seed always
// yields the same stream, independent of thread count or call interleaving,
// and distinct seeds index distinct Philox keys so parallel replications with
// derived seeds never share a stream.

namespace lrdcp {

// SplitMix64 finalizer; used to derive per-replication seeds from
// (base seed, cell hash, replication index).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

    std::uint64_t next_u64() {
        if (avail_ == 0) refill();
        return out_[--avail_];
    }

    // Uniform in the open interval (0,1) with 53-bit resolution.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    // N(0,1) via the inverse CDF; see normal.hpp.
    double next_normal() { return normal_quantile(next_uniform()); }

  private:
    void refill() {
        std::uint32_t c0 = static_cast<std::uint32_t>(block_);
        std::uint32_t c1 = static_cast<std::uint32_t>(block_ >> 32);
        std::uint32_t c2 = 0, c3 = 0;
        std::uint32_t k0 = key_[0], k1 = key_[1];
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                k0 += 0x9E3779B9u;
                k1 += 0xBB67AE85u;
            }
            const std::uint64_t p0 = 0xD2511F53ull * c0;
            const std::uint64_t p1 = 0xCD9E8D57ull * c2;
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            c0 = hi1 ^ c1 ^ k0;
            c1 = lo1;
            c2 = hi0 ^ c3 ^ k1;
            c3 = lo0;
        }
        out_[0] = (static_cast<std::uint64_t>(c1) << 32) | c0;
        out_[1] = (static_cast<std::uint64_t>(c3) << 32) | c2;
        ++block_;
        avail_ = 2;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> out_{};
    int avail_ = 0;
};

}  // namespace lrdcp
