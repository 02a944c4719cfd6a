#pragma once

#include <cstdint>
#include <vector>

namespace dynmatch {

/// Seedable 64-bit generator (splitmix64 core). All randomness in a run flows
/// from one root seed; std:: distributions are avoided so that identical
/// seeds give identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound); bound = 0 returns 0.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) return 0;
        // rejection sampling, unbiased
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform double in [0, 1).
    double real() { return double(next() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return real() < p; }

    /// Independent child generator; tag selects the sub-stream.
    Rng child(std::uint64_t tag) {
        Rng mix(state_ ^ (0xd1342543de82ef95ULL * (tag + 1)));
        return Rng(mix.next());
    }

    template <typename T>
    void shuffle(std::vector<T>& xs) {
        for (std::size_t i = xs.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(xs[i - 1], xs[j]);
        }
    }

private:
    std::uint64_t state_;
};

} // namespace dynmatch
