#pragma once

#include <cstdint>
#include <vector>

#include "removal_lab/errors.hpp"

namespace rlab {

// Deterministic generator used everywhere randomness is needed.  splitmix64 is
// tiny, passes the usual batteries at our scale, and unlike the std
// distributions its bounded draws are bit-identical across standard libraries.
struct rng {
    uint64_t state;

    explicit rng(uint64_t seed) : state(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n) by rejection; n = 0 is a caller bug
    uint64_t below(uint64_t n) {
        if (n == 0) fail(errc::parameter, "rng::below(0)");
        uint64_t limit = ~uint64_t(0) - ~uint64_t(0) % n;
        uint64_t v;
        do { v = next_u64(); } while (v >= limit);
        return v % n;
    }

    bool coin() { return next_u64() >> 63; }
};

// Derives independent per-task seeds from a base seed, so trial t of an
// experiment is reproducible in isolation and insensitive to thread count.
inline uint64_t derive_seed(uint64_t base, uint64_t index) {
    rng r(base ^ (0xd1b54a32d192ed03ull * (index + 1)));
    return r.next_u64();
}

// First k entries of a seeded Fisher-Yates pass over 0..n-1.  Note the prefix
// property: sample(n, k, s) is a prefix of sample(n, k+1, s), which gives the
// tester a pathwise-monotone coupling in the sample size.
inline std::vector<int> sample_distinct(int n, int k, uint64_t seed) {
    if (k < 0 || k > n) fail(errc::parameter, "sample_distinct: k out of range");
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    rng r(seed);
    for (int i = 0; i < k; ++i) {
        int j = i + int(r.below(uint64_t(n - i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

} // namespace rlab
