#pragma once

#include <cstdint>

#include "pgiso/fp_matrix.hpp"
#include "pgiso/matrix_space.hpp"

namespace pgiso {

// Independent row vectors of F_p^ambient, one per row of `vectors`.
struct AttributeSet {
    FpMatrix vectors;

    AttributeSet() = default;
    explicit AttributeSet(FpMatrix v);
    static AttributeSet empty(Prime p, std::size_t ambient) { return AttributeSet(FpMatrix(p, 0, ambient)); }

    std::size_t size() const { return vectors.rows(); }
    std::size_t ambient() const { return vectors.cols(); }
    friend bool operator==(const AttributeSet& a, const AttributeSet& b) { return a.vectors == b.vectors; }
};

// {v in F_p^m : v·A ∈ span(Λ) for all A in S}
FpMatrix kernel_general(const MatrixSpace& s, const AttributeSet& lambda);
// kernel_general plus x·vᵀ = 0 for x in Λ.
FpMatrix kernel_skew(const MatrixSpace& s, const AttributeSet& lambda);

FpMatrix complementary_matrix(const MatrixSpace& s, const AttributeSet& lambda, bool skew);
bool is_complementary(const MatrixSpace& s, const AttributeSet& lambda, const FpMatrix& c, bool skew);
// Same checks with the kernel supplied.
bool is_complementary_for(const FpMatrix& kernel, const AttributeSet& lambda, const FpMatrix& c, bool skew);

struct FormattingData {
    FpMatrix kernel_basis;
    FpMatrix complementary;
    FpMatrix P;  // left formatting matrix (P_skew in the skew case)
    FpMatrix Q;  // right formatting matrix (P_skewᵀ in the skew case)
};

FormattingData formatting_matrices(const MatrixSpace& s, const AttributeSet& lambda, const FpMatrix& c, bool skew);

struct AttributeSearchOptions {
    std::uint64_t seed = 0;
    std::size_t samples = 64;
    std::size_t candidates = 256;  // pseudorandom rows tried per greedy step
    double constant = 8.0;
    std::uint64_t budget = 1'000'000;  // exhaustive rank check and completion search
    bool skew = false;
};

struct AttributeSearchResult {
    AttributeSet lambda;
    std::size_t greedy_rows = 0;
    std::size_t rank_bound = 0;
    std::size_t kernel_dim = 0;
};

AttributeSearchResult find_attribute_set(const MatrixSpace& s, const AttributeSearchOptions& opts = {});
// Convenience for when r is known.
AttributeSearchResult find_attribute_set(const MatrixSpace& s, std::size_t r, const AttributeSearchOptions& opts);

}  // namespace pgiso
