#pragma once

// Seeded randomness with derivable child streams.
//
// All sampling in the library goes through this header so that results are
// reproducible bit-for-bit across runs and across thread counts.  The engine
// is std::mt19937_64 (its output sequence is fixed by the standard); integer
// and real draws use the helpers below instead of std:: distributions, whose
// algorithms are implementation-defined.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace propb {

// SplitMix64 finalizer; used to turn (seed, salt) pairs into fresh seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic child seed: independent streams for batches, trials, stages.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    return mix64(seed ^ mix64(salt + 0x6a09e667f3bcc909ull));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() { return eng_(); }

    // Uniform integer in [0, bound); Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
        std::uint64_t x = next();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            std::uint64_t t = (0 - bound) % bound;
            while (lo < t) {
                x = next();
                m = static_cast<__uint128_t>(x) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    int below_int(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

    // Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform double in (0, 1]; safe as a log() argument.
    double unit_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

    // Fresh generator whose stream is independent of this one.
    Rng child(std::uint64_t salt) const { return Rng(derive_seed(seed_, salt)); }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

// Exact binomial coefficient; throws if the value does not fit.
inline unsigned __int128 binomial_exact(long long n, long long r) {
    if (r < 0 || n < 0) throw std::invalid_argument("binomial_exact: negative argument");
    if (r > n) return 0;
    if (r > n - r) r = n - r;
    unsigned __int128 acc = 1;
    const unsigned __int128 cap = ~static_cast<unsigned __int128>(0) / 2;
    for (long long i = 1; i <= r; ++i) {
        if (acc > cap / static_cast<unsigned __int128>(n - r + i))
            throw std::overflow_error("binomial_exact: overflow");
        acc = acc * static_cast<unsigned __int128>(n - r + i) / static_cast<unsigned __int128>(i);
    }
    return acc;
}

inline long long binomial_ll(long long n, long long r) {
    unsigned __int128 v = binomial_exact(n, r);
    if (v > static_cast<unsigned __int128>(std::numeric_limits<long long>::max()))
        throw std::overflow_error("binomial_ll: value exceeds long long");
    return static_cast<long long>(v);
}

// Number of successes when each of `total` independent slots succeeds with
// probability p.  Uses geometric gap skipping, so the cost is proportional to
// the number of successes rather than to `total`.
inline unsigned __int128 count_bernoulli_successes(unsigned __int128 total, double p, Rng& rng) {
    if (total == 0 || p <= 0.0) return 0;
    if (p >= 1.0) return total;
    const double log_q = std::log1p(-p);
    unsigned __int128 idx = 0;  // one past the last success
    unsigned __int128 hits = 0;
    while (true) {
        double gap = std::floor(std::log(rng.unit_pos()) / log_q);
        if (gap >= static_cast<double>(total)) return hits;  // clearly past the end
        idx += static_cast<unsigned __int128>(gap) + 1;
        if (idx > total) return hits;
        ++hits;
        if (idx == total) return hits;
    }
}

}  // namespace propb
