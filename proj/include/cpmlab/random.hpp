#pragma once

#include <cstdint>
#include <random>

namespace cpm {

// splitmix64 finalizer; derives independent per-configuration seeds from one run seed
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// mt19937_64 with uniform doubles built from the top 53 bits, so draws are identical across standard libraries
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    Rng(std::uint64_t seed, std::uint64_t index) : eng_(derive_seed(seed, index)) {}

    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    long integer(long lo, long hi) { return lo + long(eng_() % std::uint64_t(hi - lo + 1)); }

private:
    std::mt19937_64 eng_;
};

}  // namespace cpm
