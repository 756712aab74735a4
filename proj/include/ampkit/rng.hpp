#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace ampkit {

// Deterministic RNG utilities. std::mt19937_64 output is pinned by the
// standard, but the std::uniform_* distributions are not; every mapping from
// raw bits to values lives here so results are identical across standard
// library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(splitmix(seed)) {}

    // Derive an independent stream, e.g. one per dataset entry or epoch.
    static Rng derive(std::uint64_t seed, std::uint64_t stream) {
        return Rng(splitmix(seed ^ (0x9e3779b97f4a7c15ull + stream)));
    }

    std::uint64_t next() {
        // xorshift64* — small, fast, and easy to keep bit-stable.
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545f4914f6cdd1dull;
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, n). Rejection sampling keeps it unbiased.
    std::uint64_t uniform_int(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t bound = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = next();
        while (x >= bound) x = next();
        return x % n;
    }

    // Box-Muller; one value per call, cached pair discarded for simplicity.
    double gaussian() {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::uint64_t state_;
};

} // namespace ampkit
