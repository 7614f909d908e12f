#pragma once

#include <cmath>
#include <cstdint>

namespace renewalkit {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ seeded through splitmix64. Substreams are derived from
// (seed, stream) pairs, so parallel consumers get reproducible, schedule-
// independent streams.
class Rng {
  public:
    explicit Rng(uint64_t seed, uint64_t stream = 0) {
        uint64_t sm = seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL);
        for (auto& word : s_) word = splitmix64(sm);
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform on [0,1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double exponential() { return -std::log1p(-uniform()); }

    double normal() {
        // polar Marsaglia; cached second value
        if (has_cache_) {
            has_cache_ = false;
            return cache_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        cache_ = v * f;
        has_cache_ = true;
        return u * f;
    }

    // index in [0, n)
    uint64_t below(uint64_t n) {
        // Lemire's unbiased bounded draw.
        uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        uint64_t l = static_cast<uint64_t>(m);
        if (l < n) {
            uint64_t t = -n % n;
            while (l < t) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * n;
                l = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
    double cache_ = 0.0;
    bool has_cache_ = false;
};

// Symmetric alpha-stable draw with scale such that E exp(i t X) = exp(-|t|^alpha)
// (Chambers-Mallows-Stuck, symmetric case).
inline double sample_sym_stable(Rng& rng, double alpha) {
    double u = (rng.uniform() - 0.5) * M_PI;  // (-pi/2, pi/2)
    if (alpha == 1.0) return std::tan(u);
    double w = rng.exponential();
    double t = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha);
    double s = std::pow(std::cos((1.0 - alpha) * u) / w, (1.0 - alpha) / alpha);
    return t * s;
}

}  // namespace renewalkit
