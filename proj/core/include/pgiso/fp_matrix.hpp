#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "pgiso/error.hpp"

namespace pgiso {

// Odd prime modulus. Validated by trial division.
class Prime {
public:
    Prime() = default;
    explicit Prime(std::uint32_t p);

    std::uint32_t value() const { return p_; }

    std::uint32_t reduce(long long x) const {
        long long r = x % static_cast<long long>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

    friend bool operator==(const Prime& a, const Prime& b) { return a.p_ == b.p_; }

private:
    std::uint32_t p_ = 3;
};

bool is_prime(std::uint64_t n);

// Dense row-major matrix over F_p. Zero rows or zero columns are allowed so
// that empty bases and empty complements need no special casing.
class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(Prime p, std::size_t rows, std::size_t cols);
    FpMatrix(Prime p, std::size_t rows, std::size_t cols, std::initializer_list<long long> entries);

    static FpMatrix identity(Prime p, std::size_t n);
    static FpMatrix from_rows(Prime p, const std::vector<std::vector<long long>>& rows);
    static FpMatrix unit(Prime p, std::size_t rows, std::size_t cols, std::size_t r, std::size_t c);

    Prime prime() const { return p_; }
    std::uint32_t p() const { return p_.value(); }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, long long v) { data_[r * cols_ + c] = p_.reduce(v); }
    const std::uint32_t* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }
    std::uint32_t* row_ptr(std::size_t r) { return data_.data() + r * cols_; }
    const std::vector<std::uint32_t>& data() const { return data_; }

    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }
    bool is_skew() const;

    FpMatrix transpose() const;
    FpMatrix operator+(const FpMatrix& o) const;
    FpMatrix operator-(const FpMatrix& o) const;
    FpMatrix operator-() const;
    FpMatrix operator*(const FpMatrix& o) const;
    FpMatrix scaled(std::uint32_t c) const;
    FpMatrix& operator+=(const FpMatrix& o);
    void add_scaled(const FpMatrix& o, std::uint32_t c);

    FpMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const FpMatrix& b);
    FpMatrix row(std::size_t r) const { return block(r, 0, 1, cols_); }
    FpMatrix rows_range(std::size_t r0, std::size_t nr) const { return block(r0, 0, nr, cols_); }
    FpMatrix cols_range(std::size_t c0, std::size_t nc) const { return block(0, c0, rows_, nc); }
    // Row-major flattening to a 1×(rows·cols) matrix and back.
    FpMatrix vectorize() const;
    FpMatrix reshape(std::size_t rows, std::size_t cols) const;

    std::string to_string() const;

    friend bool operator==(const FpMatrix& a, const FpMatrix& b) {
        return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    Prime p_{};
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint32_t> data_;
};

FpMatrix vstack(const FpMatrix& a, const FpMatrix& b);
FpMatrix vstack(const std::vector<FpMatrix>& parts, Prime p, std::size_t cols);
FpMatrix hstack(const FpMatrix& a, const FpMatrix& b);
FpMatrix block_diag(const FpMatrix& a, const FpMatrix& b);

enum class Ordering { Less, Equal, Greater };

// Row-major first-difference order with entries compared as integers.
Ordering lex_compare(const FpMatrix& a, const FpMatrix& b);
bool lex_less(const FpMatrix& a, const FpMatrix& b);

struct RrefResult {
    FpMatrix reduced;
    std::size_t rank = 0;
    FpMatrix transform;  // transform * A = reduced
    std::vector<std::size_t> pivots;
};

RrefResult rref_rank(const FpMatrix& a);
FpMatrix rref(const FpMatrix& a);
std::size_t rank(const FpMatrix& a);
FpMatrix invert(const FpMatrix& a);
bool is_invertible(const FpMatrix& a);

// Basis of {v : v·A = 0}, one vector per row.
FpMatrix nullspace(const FpMatrix& a);
// Basis of {x : A·xᵀ = 0}, one vector per row.
FpMatrix right_nullspace(const FpMatrix& a);

// Subspaces of F_p^n stored as RREF bases (one vector per row).
FpMatrix row_basis(const FpMatrix& a);
bool in_row_space(const FpMatrix& basis, const FpMatrix& v);
bool same_row_space(const FpMatrix& a, const FpMatrix& b);
FpMatrix intersect_row_spaces(const FpMatrix& a, const FpMatrix& b);
FpMatrix sum_row_spaces(const FpMatrix& a, const FpMatrix& b);
// Unit vectors e_j for the non-pivot columns of the RREF of `basis`; together
// with `basis` they span F_p^n.
FpMatrix canonical_completion(const FpMatrix& basis, std::size_t n);
// Completion of `inner` to a basis of the space spanned by `outer`, chosen
// greedily from the RREF rows of `outer`.
FpMatrix completion_within(const FpMatrix& inner, const FpMatrix& outer);
// Orthogonal complement {y : x·yᵀ = 0 for every row x}, as an RREF basis.
FpMatrix orthogonal_complement(const FpMatrix& a, std::size_t n);
// Coefficients c with c·A = b when b lies in the row space of A (rows of A
// need not be independent; the returned solution is canonical).
bool solve_left(const FpMatrix& a, const FpMatrix& b, FpMatrix& coeffs);

// Mixed-radix enumeration helper over F_p^len in lexical order.
bool next_vector(std::vector<std::uint32_t>& v, std::uint32_t p);

}  // namespace pgiso
