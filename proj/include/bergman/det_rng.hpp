#ifndef BERGMAN_DET_RNG_HPP
#define BERGMAN_DET_RNG_HPP

#include <cstdint>

#include "bergman/complex_poly.hpp"

namespace bergman {

/// Deterministic generator for seeded test vectors. splitmix64 core with
/// hand-rolled uniform mapping, so streams are identical across platforms
/// and standard-library versions (std::uniform_real_distribution is not).
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// Uniform on the square [−r, r]².
    Complex complex_in_box(double r) {
        double re = uniform(-r, r);
        double im = uniform(-r, r);
        return {re, im};
    }

private:
    std::uint64_t state_;
};

}  // namespace bergman

#endif
