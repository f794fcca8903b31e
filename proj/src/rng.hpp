#pragma once

// Portable seeded draws. std::mt19937_64 output is fixed by the standard,
// but the std distributions are not, so the mapping to doubles is done here.

#include <cmath>
#include <cstdint>
#include <random>

namespace nomura::detail {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    int below(int n) { return static_cast<int>(uniform() * n); }

    /// Standard normal via Box-Muller.
    double normal() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace nomura::detail
