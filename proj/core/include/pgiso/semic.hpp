#pragma once

#include <cstdint>

#include "pgiso/low_rank.hpp"
#include "pgiso/matrix_space.hpp"
#include "pgiso/tensor.hpp"

namespace pgiso {

struct CharacterizationTuple {
    FpMatrix Ls;  // ·×n
    FpMatrix L;   // ·×m
    AttributeSet lambda;
    FpMatrix Cs;  // complementary for zero_{Ls,Lsᵀ}(X_G) and Λ (skew)
    FpMatrix C;   // complementary for zero_{L,Lsᵀ}(Y_G) and Λ

    friend bool operator==(const CharacterizationTuple& a, const CharacterizationTuple& b) {
        return a.Ls == b.Ls && a.L == b.L && a.lambda == b.lambda && a.Cs == b.Cs && a.C == b.C;
    }
};

// The subspaces and kernels a tuple induces on a tensor.
struct TupleAnalysis {
    MatrixSpace zero_x;   // zero_{Ls,Lsᵀ}(X_G)
    MatrixSpace zero_y;   // zero_{L,Lsᵀ}(Y_G)
    FpMatrix ker_skew;    // ker_skew(zero_x, Λ) ⊆ F^n
    FpMatrix ker_general; // ker(zero_y, Λ) ⊆ F^m
};

TupleAnalysis analyze_tuple(const SkewTensor& g, const FpMatrix& ls, const FpMatrix& l, const AttributeSet& lambda);
// Empty string when valid, otherwise the violated invariant.
std::string tuple_violation(const SkewTensor& g, const CharacterizationTuple& t);
bool tuple_valid(const SkewTensor& g, const CharacterizationTuple& t);

// Complements chosen canonically.
CharacterizationTuple make_tuple(const SkewTensor& g, const FpMatrix& ls, const FpMatrix& l, const AttributeSet& lambda);

struct TupleRecipe {
    std::size_t ls_rows = 2;
    std::size_t l_rows = 1;
    bool attribute_search = true;
    std::uint64_t seed = 0;
};

// Random individualization plus an attribute set found on both zero spaces.
CharacterizationTuple recipe_tuple(const SkewTensor& g, const TupleRecipe& recipe);
// (I_n, I_m, ∅, ·, ·)
CharacterizationTuple identity_tuple(const SkewTensor& g);

CharacterizationTuple derive_image_tuple(const CharacterizationTuple& t, const FpMatrix& n0, const FpMatrix& m0);
// Also re-validates against transform(g, n0, m0).
CharacterizationTuple derive_image_tuple(const SkewTensor& g, const CharacterizationTuple& t, const FpMatrix& n0,
                                         const FpMatrix& m0);

struct FormParams {
    std::size_t ax = 0, bx = 0, ay = 0, by = 0;
    std::size_t m_prime() const { return ax + bx; }
    std::size_t n_prime() const { return ay + by; }
    friend bool operator==(const FormParams&, const FormParams&) = default;
};

struct SemiCanonicalForm {
    SkewTensor tensor;
    FormParams params;
    FpMatrix N;
    FpMatrix M;
    CharacterizationTuple tuple;
};

SemiCanonicalForm build_semi_canonical_form(const SkewTensor& g, const CharacterizationTuple& t,
                                            const SemiCanonicalOptions& opts = {});

bool kernel_pattern_holds(const SkewTensor& sc, const FormParams& params);
// Entries with i < m' and j,k < n'.
bool kernels_equal(const SemiCanonicalForm& a, const SemiCanonicalForm& b);

}  // namespace pgiso
