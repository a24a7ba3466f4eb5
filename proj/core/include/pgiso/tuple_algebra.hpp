#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pgiso/fp_matrix.hpp"

namespace pgiso {

using MatrixTuple = std::vector<FpMatrix>;

// Linear: enumerate the S-projection of the solution space of S·A_i = B_i·T,
// which contains every isometry (take T = S^{-T}). Exhaustive: all of GL.
enum class TupleBackend { Linear, Exhaustive };

struct TupleOptions {
    TupleBackend backend = TupleBackend::Linear;
    std::uint64_t budget = 2'000'000;  // candidate count
};

struct TupleStats {
    std::uint64_t candidates = 0;
    std::size_t solution_dim = 0;
};

// |GL(n, p)|, saturating at cap + 1.
std::uint64_t gl_order(std::size_t n, std::uint32_t p, std::uint64_t cap);

// Lexical enumeration of GL(n, p) over row-major entries.
class GLEnumerator {
public:
    GLEnumerator(Prime p, std::size_t n);
    // Advances to the next invertible matrix; false when exhausted.
    bool next();
    const FpMatrix& current() const { return cur_; }

private:
    bool advance_row(std::size_t r);
    bool fill_from(std::size_t r);
    Prime p_;
    std::size_t n_;
    FpMatrix cur_;
    bool started_ = false;
};

std::optional<FpMatrix> skew_tuple_isometry(const MatrixTuple& a, const MatrixTuple& b, const TupleOptions& opts = {},
                                            TupleStats* stats = nullptr);

std::optional<std::pair<FpMatrix, FpMatrix>> tuple_equivalence(const MatrixTuple& a, const MatrixTuple& b,
                                                               const TupleOptions& opts = {},
                                                               TupleStats* stats = nullptr);

bool is_tuple_isometry(const FpMatrix& s, const MatrixTuple& a, const MatrixTuple& b);
bool is_tuple_equivalence(const FpMatrix& p, const FpMatrix& q, const MatrixTuple& a, const MatrixTuple& b);

}  // namespace pgiso
