#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pgiso/fp_matrix.hpp"

namespace pgiso {

// Linear space of rows×cols matrices. `basis` keeps the order it was built
// with; `canonical` is the RREF of the vectorized basis and decides membership.
class MatrixSpace {
public:
    MatrixSpace() = default;
    MatrixSpace(Prime p, std::size_t rows, std::size_t cols);

    // Keeps the given order; throws if the matrices are dependent.
    static MatrixSpace from_basis(Prime p, std::size_t rows, std::size_t cols, const std::vector<FpMatrix>& basis);

    Prime prime() const { return p_; }
    std::uint32_t p() const { return p_.value(); }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<FpMatrix>& basis() const { return basis_; }
    const FpMatrix& canonical() const { return canonical_; }
    bool is_skew() const;

    bool contains(const FpMatrix& a) const;
    // Coefficients of `a` in `basis()`; throws when a is not a member.
    std::vector<std::uint32_t> coords(const FpMatrix& a) const;
    FpMatrix element(const std::vector<std::uint32_t>& coeffs) const;
    // d × (rows·cols) stack of vectorized basis matrices.
    FpMatrix stacked() const;

    friend bool operator==(const MatrixSpace& a, const MatrixSpace& b) {
        return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.canonical_ == b.canonical_;
    }

private:
    Prime p_{};
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<FpMatrix> basis_;
    FpMatrix canonical_;
};

// Canonical basis: the RREF rows of the vectorized generators, reshaped.
MatrixSpace span_from_generators(Prime p, std::size_t rows, std::size_t cols, const std::vector<FpMatrix>& mats);
MatrixSpace span_from_generators(const std::vector<FpMatrix>& mats);

// {A in S : L·A·R = 0}
MatrixSpace zero_subspace(const MatrixSpace& s, const FpMatrix& l, const FpMatrix& r);

enum class TieBreak { Lexical, Random };

struct SemiCanonicalOptions {
    TieBreak tie_break = TieBreak::Lexical;
    std::uint64_t seed = 0;
    std::uint64_t cap = 10'000'000;  // max p^d
};

std::vector<FpMatrix> semi_canonical_basis(const MatrixSpace& s, const FpMatrix& l, const FpMatrix& r,
                                           const SemiCanonicalOptions& opts = {});

struct IndividualizationPair {
    FpMatrix L;
    FpMatrix R;
    bool verified = false;
    bool checked = false;  // false when p^dim was over the verification budget
    std::size_t t = 0;
};

struct IndividualizationOptions {
    double constant = 32.0;
    bool skew = false;  // R = Lᵀ
    std::uint64_t verify_budget = 1'000'000;
};

std::size_t individualization_size(std::size_t d, std::uint32_t p, std::size_t k, double constant);
IndividualizationPair sample_individualization(const MatrixSpace& s, std::size_t k, std::uint64_t seed,
                                               const IndividualizationOptions& opts = {});
// Exhaustive: every A in S with rank ≥ k has L·A·R ≠ 0.
bool individualization_holds(const MatrixSpace& s, std::size_t k, const FpMatrix& l, const FpMatrix& r);

// Largest rank over all elements (exhaustive); nullopt when p^dim > budget.
std::optional<std::size_t> max_rank(const MatrixSpace& s, std::uint64_t budget = 1'000'000);

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap);

}  // namespace pgiso
