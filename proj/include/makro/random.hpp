#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace makro {

/// Thrown when a model rule produces an ill-formed quantity (e.g. a
/// negative rate). Carries enough context to identify the offending rule.
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// One independent random stream per replication. Identical (seed, stream_id)
/// gives a bit-identical draw sequence.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}
    RngStream(std::uint64_t seed, std::uint64_t stream_id) {
        std::seed_seq seq{seed, stream_id, std::uint64_t{0x9e3779b97f4a7c15ULL}};
        gen_.seed(seq);
    }

    /// Uniform on (0,1); never returns 0 so -log(u) is finite.
    double uniform() {
        const double u = (gen_() >> 11) * 0x1.0p-53;
        return u > 0.0 ? u : 0x1.0p-53;
    }

    /// Uniform on [0,1] inclusive of 0 (used for the xi shocks).
    double uniform01() { return (gen_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::size_t index(std::size_t n) {
        // n is tiny in this model; modulo bias is negligible but avoid it anyway
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do { x = gen_(); } while (x >= limit);
        return static_cast<std::size_t>(x % n);
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

inline constexpr double kInfiniteWait = std::numeric_limits<double>::infinity();

/// Exponential waiting time with the given rate (per period).
/// rate == 0 disables the clock (+inf); rate < 0 is a model error.
inline double draw_waiting_time(double rate, RngStream& rng) {
    if (rate < 0.0) {
        throw ModelError("negative exponential rate: " + std::to_string(rate));
    }
    if (rate == 0.0) return kInfiniteWait;
    return -std::log(rng.uniform()) / rate;
}

/// Outcome of a weighted draw over a candidate list.
struct WeightedPick {
    bool matched = false;
    std::size_t index = 0;
};

/// Selects index i with probability w_i / sum(w). All-zero weights fall back
/// to a uniform pick; an empty list is a no-match.
inline WeightedPick weighted_random(std::span<const double> weights, RngStream& rng) {
    if (weights.empty()) return {};
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ModelError("negative selection weight");
        total += w;
    }
    if (total <= 0.0) {
        return {true, rng.index(weights.size())};
    }
    double x = rng.uniform01() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        x -= weights[i];
        if (x <= 0.0) return {true, i};
    }
    return {true, weights.size() - 1};
}

}  // namespace makro
