#pragma once

#include <cstdint>

#include "pgiso/fp_matrix.hpp"

namespace pgiso {

// Counter-based generator: the n-th draw of stream (seed, stream) is a pure
// function of (seed, stream, n), so split streams never interact.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : key_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

    std::uint64_t next() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t limit = ~0ULL - (~0ULL % bound);
        std::uint64_t x;
        do x = next();
        while (x >= limit);
        return x % bound;
    }
    Rng split(std::uint64_t child) const { return Rng(key_, child + 1); }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

FpMatrix random_matrix(Prime p, std::size_t rows, std::size_t cols, Rng& rng);
FpMatrix random_invertible(Prime p, std::size_t n, Rng& rng);
FpMatrix random_skew(Prime p, std::size_t n, Rng& rng);

}  // namespace pgiso
