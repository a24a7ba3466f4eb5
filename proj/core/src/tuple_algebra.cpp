#include "pgiso/tuple_algebra.hpp"

#include "pgiso/matrix_space.hpp"

namespace pgiso {

std::uint64_t gl_order(std::size_t n, std::uint32_t p, std::uint64_t cap) {
    std::uint64_t pn = checked_pow(p, n, cap);
    if (pn > cap) return cap + 1;
    std::uint64_t r = 1, pi = 1;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t f = pn - pi;
        if (f != 0 && r > cap / f) return cap + 1;
        r *= f;
        pi *= p;
    }
    return r;
}

GLEnumerator::GLEnumerator(Prime p, std::size_t n) : p_(p), n_(n), cur_(p, n, n) {}

bool GLEnumerator::advance_row(std::size_t r) {
    for (;;) {
        std::size_t c = n_;
        while (c-- > 0) {
            if (++cur_.at(r, c) < p_.value()) break;
            cur_.at(r, c) = 0;
            if (c == 0) return false;
        }
        if (rank(cur_.rows_range(0, r + 1)) == r + 1) return true;
    }
}

bool GLEnumerator::fill_from(std::size_t r) {
    for (std::size_t i = r; i < n_; ++i) {
        for (std::size_t c = 0; c < n_; ++c) cur_.at(i, c) = 0;
        if (!advance_row(i)) return false;
    }
    return true;
}

bool GLEnumerator::next() {
    if (n_ == 0) {
        if (started_) return false;
        started_ = true;
        return true;
    }
    if (!started_) {
        started_ = true;
        return fill_from(0);
    }
    for (std::size_t r = n_; r-- > 0;) {
        if (advance_row(r)) return fill_from(r + 1);
    }
    return false;
}

bool is_tuple_isometry(const FpMatrix& s, const MatrixTuple& a, const MatrixTuple& b) {
    if (a.size() != b.size() || !is_invertible(s)) return false;
    FpMatrix st = s.transpose();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(s * a[i] * st == b[i])) return false;
    return true;
}

bool is_tuple_equivalence(const FpMatrix& p, const FpMatrix& q, const MatrixTuple& a, const MatrixTuple& b) {
    if (a.size() != b.size() || !is_invertible(p) || !is_invertible(q)) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(p * a[i] * q == b[i])) return false;
    return true;
}

namespace {

void check_tuples(const MatrixTuple& a, const MatrixTuple& b) {
    if (a.empty() || a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "tuple lengths differ or are zero");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].rows() != a[0].rows() || a[i].cols() != a[0].cols() || b[i].rows() != a[0].rows() ||
            b[i].cols() != a[0].cols() || a[i].p() != b[i].p())
            throw Error(ErrorCode::ShapeMismatch, "tuple members differ in shape");
}

// Basis (as matrices) of {X : exists Y with X·A_i = B_i·Y for all i}, where
// X is r×r and Y is c×c for r×c tuples.
std::vector<FpMatrix> left_solution_span(const MatrixTuple& a, const MatrixTuple& b) {
    const Prime p = a[0].prime();
    const std::size_t r = a[0].rows(), c = a[0].cols();
    const std::size_t nx = r * r, ny = c * c;
    // One equation per (i, row, col); columns index the unknowns of X then Y.
    FpMatrix eq(p, a.size() * r * c, nx + ny);
    std::size_t e = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t row = 0; row < r; ++row)
            for (std::size_t col = 0; col < c; ++col, ++e) {
                for (std::size_t j = 0; j < r; ++j) eq.at(e, row * r + j) = a[i](j, col);
                for (std::size_t j = 0; j < c; ++j) eq.at(e, nx + j * c + col) = p.neg(b[i](row, j));
            }
    FpMatrix sol = right_nullspace(eq);
    FpMatrix xs = row_basis(sol.cols_range(0, nx));
    std::vector<FpMatrix> out;
    for (std::size_t i = 0; i < xs.rows(); ++i) out.push_back(xs.row(i).reshape(r, r));
    return out;
}

template <class Visit>
bool for_each_combination(const std::vector<FpMatrix>& basis, const FpMatrix& zero, std::uint64_t budget,
                          TupleStats* stats, Visit&& visit) {
    const std::uint32_t p = zero.p();
    if (checked_pow(p, basis.size(), budget) > budget)
        throw Error(ErrorCode::BudgetExceeded, "solution space too large to enumerate");
    std::vector<std::uint32_t> c(basis.size(), 0);
    while (next_vector(c, p)) {
        FpMatrix s = zero;
        for (std::size_t i = 0; i < basis.size(); ++i) s.add_scaled(basis[i], c[i]);
        if (stats) ++stats->candidates;
        if (visit(s)) return true;
    }
    return false;
}

// Q with P·A_i·Q = B_i for all i, searching the affine solution set.
std::optional<FpMatrix> solve_right_factor(const FpMatrix& pm, const MatrixTuple& a, const MatrixTuple& b,
                                           std::uint64_t budget) {
    const Prime p = pm.prime();
    const std::size_t c = a[0].cols();
    FpMatrix x(p, 0, c), y(p, 0, c);
    for (std::size_t i = 0; i < a.size(); ++i) {
        x = vstack(x, pm * a[i]);
        y = vstack(y, b[i]);
    }
    // Rows of Qᵀ satisfy q·Xᵀ = (row of Yᵀ).
    FpMatrix xt = x.transpose(), yt = y.transpose();
    FpMatrix q0(p, c, c);
    for (std::size_t r = 0; r < c; ++r) {
        FpMatrix coeff;
        if (!solve_left(xt, yt.row(r), coeff)) return std::nullopt;
        q0.set_block(r, 0, coeff);
    }
    q0 = q0.transpose();
    if (is_invertible(q0)) return q0;
    // Homogeneous part: columns z with X·z = 0, placed in any column of Q.
    FpMatrix kern = right_nullspace(x);
    std::vector<FpMatrix> hom;
    for (std::size_t k = 0; k < kern.rows(); ++k)
        for (std::size_t col = 0; col < c; ++col) {
            FpMatrix z(p, c, c);
            z.set_block(0, col, kern.row(k).transpose());
            hom.push_back(z);
        }
    std::optional<FpMatrix> found;
    if (hom.empty()) return std::nullopt;
    for_each_combination(hom, FpMatrix(p, c, c), budget, nullptr, [&](const FpMatrix& z) {
        FpMatrix q = q0 + z;
        if (is_invertible(q)) {
            found = q;
            return true;
        }
        return false;
    });
    return found;
}

}  // namespace

std::optional<FpMatrix> skew_tuple_isometry(const MatrixTuple& a, const MatrixTuple& b, const TupleOptions& opts,
                                            TupleStats* stats) {
    check_tuples(a, b);
    const Prime p = a[0].prime();
    const std::size_t n = a[0].rows();
    if (a[0].cols() != n) throw Error(ErrorCode::ShapeMismatch, "skew tuples must be square");
    if (a == b) return FpMatrix::identity(p, n);
    std::optional<FpMatrix> found;
    if (opts.backend == TupleBackend::Exhaustive) {
        if (gl_order(n, p.value(), opts.budget) > opts.budget)
            throw Error(ErrorCode::BudgetExceeded, "|GL(n)| beyond the exhaustive budget");
        GLEnumerator gl(p, n);
        while (gl.next()) {
            if (stats) ++stats->candidates;
            if (is_tuple_isometry(gl.current(), a, b)) return gl.current();
        }
        return std::nullopt;
    }
    auto basis = left_solution_span(a, b);
    if (stats) stats->solution_dim = basis.size();
    for_each_combination(basis, FpMatrix(p, n, n), opts.budget, stats, [&](const FpMatrix& s) {
        if (is_tuple_isometry(s, a, b)) {
            found = s;
            return true;
        }
        return false;
    });
    return found;
}

std::optional<std::pair<FpMatrix, FpMatrix>> tuple_equivalence(const MatrixTuple& a, const MatrixTuple& b,
                                                               const TupleOptions& opts, TupleStats* stats) {
    check_tuples(a, b);
    const Prime p = a[0].prime();
    const std::size_t m = a[0].rows(), n = a[0].cols();
    if (a == b) return std::make_pair(FpMatrix::identity(p, m), FpMatrix::identity(p, n));
    std::optional<std::pair<FpMatrix, FpMatrix>> found;
    auto try_p = [&](const FpMatrix& pm) {
        if (!is_invertible(pm)) return false;
        auto q = solve_right_factor(pm, a, b, opts.budget);
        if (q && is_tuple_equivalence(pm, *q, a, b)) {
            found = std::make_pair(pm, *q);
            return true;
        }
        return false;
    };
    if (opts.backend == TupleBackend::Exhaustive) {
        if (gl_order(m, p.value(), opts.budget) > opts.budget)
            throw Error(ErrorCode::BudgetExceeded, "|GL(m)| beyond the exhaustive budget");
        GLEnumerator gl(p, m);
        while (gl.next()) {
            if (stats) ++stats->candidates;
            if (try_p(gl.current())) return found;
        }
        return std::nullopt;
    }
    auto basis = left_solution_span(a, b);
    if (stats) stats->solution_dim = basis.size();
    for_each_combination(basis, FpMatrix(p, m, m), opts.budget, stats, try_p);
    return found;
}

}  // namespace pgiso
