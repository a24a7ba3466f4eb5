#pragma once

// Naive enumeration helpers shared by the unit tests.

#include <functional>
#include <vector>

#include "pgiso/fp_matrix.hpp"
#include "pgiso/matrix_space.hpp"

namespace brute {

using pgiso::FpMatrix;
using pgiso::MatrixSpace;

inline void each_vector(pgiso::Prime p, std::size_t len, const std::function<void(const FpMatrix&)>& f) {
    std::vector<std::uint32_t> c(len, 0);
    do {
        FpMatrix v(p, 1, len);
        for (std::size_t i = 0; i < len; ++i) v.at(0, i) = c[i];
        f(v);
    } while (pgiso::next_vector(c, p.value()));
}

inline void each_element(const MatrixSpace& s, const std::function<void(const FpMatrix&)>& f) {
    each_vector(s.prime(), s.dim(), [&](const FpMatrix& c) {
        FpMatrix a(s.prime(), s.rows(), s.cols());
        for (std::size_t i = 0; i < s.dim(); ++i) a.add_scaled(s.basis()[i], c(0, i));
        f(a);
    });
}

inline MatrixSpace span_of(pgiso::Prime p, std::size_t rows, std::size_t cols, const std::vector<FpMatrix>& mats) {
    return pgiso::span_from_generators(p, rows, cols, mats);
}

}  // namespace brute
