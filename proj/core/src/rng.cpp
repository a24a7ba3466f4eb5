#include "pgiso/rng.hpp"

namespace pgiso {

FpMatrix random_matrix(Prime p, std::size_t rows, std::size_t cols, Rng& rng) {
    FpMatrix m(p, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = static_cast<std::uint32_t>(rng.below(p.value()));
    return m;
}

FpMatrix random_invertible(Prime p, std::size_t n, Rng& rng) {
    for (;;) {
        FpMatrix m = random_matrix(p, n, n, rng);
        if (rank(m) == n) return m;
    }
}

FpMatrix random_skew(Prime p, std::size_t n, Rng& rng) {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto v = static_cast<std::uint32_t>(rng.below(p.value()));
            m.at(i, j) = v;
            m.at(j, i) = p.neg(v);
        }
    return m;
}

}  // namespace pgiso
