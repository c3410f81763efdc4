#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace evrp {

// Deterministic RNG used throughout the toolkit. Bounded draws are built
// directly on the mt19937_64 word stream so results do not depend on the
// standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
    long long int_in(long long lo, long long hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1u;
        return lo + static_cast<long long>(eng_() % span);
    }

    // Uniform real in [0, 1).
    double real01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double real_in(double lo, double hi) { return lo + (hi - lo) * real01(); }

    // Integer drawn log-uniformly from [lo, hi]; requires lo >= 1.
    long long log_uniform_int(long long lo, long long hi) {
        if (lo >= hi) return lo;
        const double u = real_in(std::log(static_cast<double>(lo)),
                                 std::log(static_cast<double>(hi)));
        const long long v = std::llround(std::exp(u));
        return std::clamp(v, lo, hi);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j =
                static_cast<std::size_t>(int_in(0, static_cast<long long>(i) - 1));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace evrp
