#pragma once

#include <cstdint>
#include <random>

namespace balab {

// Seeded generator with hand-rolled distributions so that a given seed yields
// the same stream on every standard library (std distributions are not
// portable across implementations, and scenario reports must be reproducible).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform in [0,1) with 53 random bits
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace balab
