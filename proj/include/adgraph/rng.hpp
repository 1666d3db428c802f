#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>

namespace adgraph {

inline std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Derives an independent stream seed from a master seed and a role salt.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) {
    std::uint64_t s = master ^ (salt * 0x9E3779B97F4A7C15ull);
    splitmix64(s);
    return splitmix64(s);
}

// Stream roles. Every consumer of randomness owns a distinct stream so that
// toggling one mechanism never shifts another mechanism's draws.
inline constexpr std::uint64_t kSeedEmbedding = 0xE1;
inline constexpr std::uint64_t kSeedParams = 0xE2;
inline constexpr std::uint64_t kSeedSurvival = 0xE3;
inline constexpr std::uint64_t kSeedAggMask = 0xE4;
inline constexpr std::uint64_t kSeedDiffMask = 0xE5;
inline constexpr std::uint64_t kSeedSynth = 0xE6;
inline constexpr std::uint64_t kSeedEvalAggMask = 0xE7;
inline constexpr std::uint64_t kSeedEvalDiffMask = 0xE8;

/// mt19937_64 engine with distribution helpers implemented from raw bits, so
/// sequences are identical across standard libraries and serializable.
class Rng {
public:
    Rng() : eng_(0) {}
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(eng_() % span);
    }

    bool bernoulli(double p) { return uniform() < p; }

    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    std::string save() const {
        std::ostringstream os;
        os << eng_;
        return os.str();
    }

    void restore(const std::string& text) {
        std::istringstream is(text);
        is >> eng_;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace adgraph
