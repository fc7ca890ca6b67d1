#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace keq {

// Seeded generator producing the same stream on every platform (mt19937_64
// is fully specified; the uniform mapping avoids the library-defined
// std::uniform_real_distribution).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // [0, 1)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // {lo, ..., hi} inclusive, unbiased.
    int uniform_int(int lo, int hi) {
        const std::uint64_t k = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / k * k;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return lo + static_cast<int>(v % k);
    }

    bool coin() { return (gen_() & 1u) != 0; }

private:
    std::mt19937_64 gen_;
};

}  // namespace keq
