#pragma once

#include <cstdint>
#include <vector>

namespace evaset {

// Deterministic random stream: xoshiro256** seeded through SplitMix64.
// std::mt19937 would be reproducible, but the std distributions on top of it
// are implementation-defined, so everything here is hand-rolled.  Substreams
// derived from (master seed, index) make per-trial work order-independent:
// the same seed gives byte-identical results at any worker count.
class RandomStream {
   public:
    explicit RandomStream(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : s_) w = splitmix64(x);
    }

    // Substream for an indexed unit of work (trial, node, attempt).
    static RandomStream derive(std::uint64_t master, std::uint64_t index) {
        std::uint64_t x = master;
        std::uint64_t a = splitmix64(x);
        // Mix the index through the same permutation; avoids correlated
        // neighbouring streams without needing jump polynomials.
        std::uint64_t y = a ^ (0x9e3779b97f4a7c15ULL * (index + 1));
        return RandomStream(splitmix64(y));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform integer in [0, n) by rejection; n = 0 is a caller bug.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) {
        if (p >= 1.0) return true;
        if (p <= 0.0) return false;
        return uniform01() < p;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

   private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t s_[4];
};

}  // namespace evaset
