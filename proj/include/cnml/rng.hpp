#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace cnml {

// Deterministic random source. All sampling goes through this class so a
// run is reproducible from its seed alone, independent of the platform's
// std::uniform_* implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Rejection sampling keeps it unbiased.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // Inclusive integer range.
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin(double p = 0.5) { return uniform() < p; }

    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double normal(double mean = 0.0, double stddev = 1.0) {
        // Box-Muller; the second variate is discarded to keep the stream
        // position independent of call interleaving.
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(6.283185307179586476925287 * u2);
    }

    // Weighted index draw; weights need not be normalized.
    std::size_t weighted(const std::vector<double>& weights) {
        double total = 0.0;
        for (double w : weights) total += w > 0 ? w : 0;
        double x = uniform() * total;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            double w = weights[i] > 0 ? weights[i] : 0;
            if (x < w) return i;
            x -= w;
        }
        return weights.empty() ? 0 : weights.size() - 1;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    // Independent child stream derived from this rng's seed material.
    Rng fork(std::uint64_t stream) {
        return Rng(next_u64() ^ (stream * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull));
    }

private:
    std::uint64_t state_;
};

}  // namespace cnml
