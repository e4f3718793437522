#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "menugap/sequences.hpp"

namespace menugap {

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// All randomness flows from one seed through named streams, so each
/// subcommand and test suite draws an independent, reproducible sequence.
class SeedStream {
public:
    SeedStream(std::uint64_t seed, std::string_view name) {
        std::uint64_t s = seed ^ fnv1a64(name);
        std::uint64_t a = splitmix64(s), b = splitmix64(s);
        rng_.seed(a ^ (b << 1));
    }

    std::mt19937_64& rng() { return rng_; }

    int uniform_int(int lo, int hi) {  // inclusive
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
    }

    /// Dyadic value m / 2^bits with m in [lo_num, hi_num]; exact in both backends.
    double dyadic(long lo_num, long hi_num, int bits) {
        long m = std::uniform_int_distribution<long>(lo_num, hi_num)(rng_);
        return std::ldexp(static_cast<double>(m), -bits);
    }

private:
    std::mt19937_64 rng_;
};

/// Random sequence in (0,1]^k with no zero points and ||x||_inf >= 1/4,
/// coordinates dyadic so double -> rational conversion is lossless.
inline PointSeq<double> random_point_seq(SeedStream& s, int k, int n) {
    PointSeq<double> x;
    x.k = k;
    for (int i = 0; i < n; ++i) {
        Vec<double> p(static_cast<std::size_t>(k), 0.0);
        for (int d = 0; d < k; ++d) p[d] = s.dyadic(0, 64, 6);  // {0, 1/64, ..., 1}
        int big = s.uniform_int(0, k - 1);
        if (p[static_cast<std::size_t>(big)] < 0.25) p[static_cast<std::size_t>(big)] = s.dyadic(16, 64, 6);
        x.points.push_back(std::move(p));
    }
    return x;
}

inline ScalarSeq<double> random_scalar_seq(SeedStream& s, const PointSeq<double>& x) {
    ScalarSeq<double> c;
    c.scalars.push_back(0.0);
    for (const auto& p : x.points) {
        // round the cap down twice so t * cmax stays strictly inside the
        // exact bound after double rounding
        double cmax = std::nextafter(std::nextafter(1.0 / linf_norm(p), 0.0), 0.0);
        double t = s.dyadic(0, 64, 6);
        c.scalars.push_back(t * cmax);
    }
    return c;
}

inline AllocSeq<double> random_alloc_seq(SeedStream& s, int k, int n) {
    AllocSeq<double> q;
    q.k = k;
    q.allocations.push_back(zero_vec<double>(k));
    for (int i = 0; i < n; ++i) {
        Vec<double> a(static_cast<std::size_t>(k), 0.0);
        for (int d = 0; d < k; ++d) a[d] = s.dyadic(0, 64, 6);
        q.allocations.push_back(std::move(a));
    }
    return q;
}

}  // namespace menugap
