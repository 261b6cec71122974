#pragma once

#include <cstdint>

namespace mgrz {

// splitmix64: tiny, seedable, identical across platforms (std distributions
// are implementation-defined, so tests avoid them).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform-ish value in [0, k); k > 0.
    std::uint64_t below(std::uint64_t k) { return next() % k; }
    int below_int(int k) { return int(below(std::uint64_t(k))); }
    bool chance(std::uint64_t one_in) { return below(one_in) == 0; }

private:
    std::uint64_t state_;
};

}  // namespace mgrz
