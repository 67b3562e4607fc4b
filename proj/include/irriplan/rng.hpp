#ifndef IRRIPLAN_RNG_HPP
#define IRRIPLAN_RNG_HPP

#include <cstdint>
#include <cstddef>
#include <random>
#include <vector>

namespace irriplan {

// splitmix64 finalizer; avalanches each word into the accumulated seed.
inline std::uint64_t mix64(std::uint64_t h, std::uint64_t word) {
    h += 0x9e3779b97f4a7c15ull + word;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
    return h ^ (h >> 31);
}

// Derives an independent stream for (round, generation, ant) so serial and
// parallel walk schedules produce identical results.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t round,
                                 std::uint64_t generation, std::uint64_t ant) {
    std::uint64_t h = mix64(seed, 0x5bd1e995u);
    h = mix64(h, round);
    h = mix64(h, generation);
    return mix64(h, ant);
}

// Thin deterministic wrapper; the [0,1) mapping avoids the
// implementation-defined behavior of std::uniform_real_distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return engine_() % n; }

private:
    std::mt19937_64 engine_;
};

// Roulette-wheel selection over non-negative weights summing to `total`;
// the final slot absorbs rounding slack.
inline std::size_t roulette_pick(const std::vector<double>& weights, double total,
                                 double draw) {
    double cum = 0.0;
    const double target = draw * total;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        cum += weights[i];
        if (target < cum) return i;
    }
    return weights.size() - 1;
}

}  // namespace irriplan

#endif
