// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>

namespace cooltrace {

// splitmix64 finalizer (xor-shift-multiply avalanche).
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Counter-based stream generator. Draw j of stream s under seed k is a pure
/// function of (k, s, j), so shot-level sampling is deterministic no matter
/// how shots are partitioned across threads.
class ShotRng {
public:
    ShotRng(std::uint64_t seed, std::uint64_t stream)
        : state_(mix64(mix64(seed + 0x9e3779b97f4a7c15ULL) ^ stream)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_unit() < p; }

private:
    std::uint64_t state_;
};

/// Derives an independent sub-seed, used to give separate experiments inside
/// one seeded workflow non-overlapping stream namespaces.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed ^ mix64(tag + 0x632be59bd9b4e019ULL));
}

}  // namespace cooltrace
