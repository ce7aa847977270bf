#pragma once

#include <cstdint>
#include <vector>

namespace evac {

/// Deterministic 64-bit generator (xoshiro256**) seeded via splitmix64.
///
/// Every stochastic choice in a run draws from one instance of this class, so
/// a (config, seed) pair fully determines the trajectory. The standard-library
/// distributions are deliberately avoided: their output is not specified
/// bit-for-bit across implementations, and the batch harness promises
/// byte-identical CSVs regardless of how runs are scheduled.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // splitmix64 stream expands the seed into the four state words
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9E3779B97F4A7C15ULL;
            word = mix(x);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform integer in [0, n). Consumes exactly one draw (Lemire multiply;
    /// the 2^-64 range bias is irrelevant at simulation scales and constant
    /// consumption keeps replay simple).
    std::uint64_t bounded(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Fisher-Yates shuffle of an index vector.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    static std::uint64_t mix(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xBF58476D1CE4E5B9ULL;
        x ^= x >> 27;
        x *= 0x94D049BB133111EBULL;
        x ^= x >> 31;
        return x;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

/// Seed for one (grid cell, replicate) pair of a batch, as a pure function of
/// (master, cell, replicate). Runs can therefore execute in any order, or in
/// isolation, and still see the very stream they had inside the full batch.
inline std::uint64_t derive_run_seed(std::uint64_t master,
                                     std::uint64_t cell,
                                     std::uint64_t replicate) {
    std::uint64_t s = Rng::mix(master + 0x9E3779B97F4A7C15ULL * (cell + 1));
    s = Rng::mix(s + 0x9E3779B97F4A7C15ULL * (replicate + 1));
    return s;
}

} // namespace evac
