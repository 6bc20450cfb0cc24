#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "tsfm/common.hpp"

namespace tsfm {

/// Counter-based deterministic generator (SplitMix64 output function over a
/// keyed counter). The n-th draw of a stream is a pure function of
/// (key, n), so identical (seed, stream labels) reproduce identical draws on
/// every platform. Child streams are derived by hashing the parent key with a
/// label; sibling streams never overlap in practice because the 64-bit keys
/// are mixed before use.
class Rng {
public:
    explicit Rng(std::uint64_t key) : key_(mix(key ^ 0x1f83d9abfb41bd6bULL)) {}

    static Rng from_seed(std::uint64_t seed) { return Rng(mix(seed)); }

    /// Child stream keyed by a label. Does not advance this stream.
    Rng stream(std::string_view label) const { return Rng(key_ ^ mix(fnv1a64(label))); }

    /// Child stream keyed by an index (e.g. per step, per row).
    Rng stream(std::uint64_t index) const {
        return Rng(key_ ^ mix(index * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL));
    }

    std::uint64_t key() const { return key_; }

    std::uint64_t next_u64() {
        counter_ += 0x9e3779b97f4a7c15ULL;
        return mix(key_ + counter_);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi], inclusive. Unbiased via rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller with a cached spare.
    double normal();
    double normal(double mu, double sigma) { return mu + sigma * normal(); }

    /// Gamma(alpha, 1) via Marsaglia-Tsang, with the boost for alpha < 1.
    double gamma(double alpha);

    double beta(double a, double b);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// k distinct indices from 0..n-1, in draw order.
    std::vector<int> sample_without_replacement(int n, int k);

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace tsfm
