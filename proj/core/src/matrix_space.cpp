#include "pgiso/matrix_space.hpp"

#include <cmath>

#include "pgiso/rng.hpp"

namespace pgiso {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

MatrixSpace::MatrixSpace(Prime p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), canonical_(p, 0, rows * cols) {}

MatrixSpace MatrixSpace::from_basis(Prime p, std::size_t rows, std::size_t cols, const std::vector<FpMatrix>& basis) {
    MatrixSpace s(p, rows, cols);
    for (const auto& b : basis)
        if (b.rows() != rows || b.cols() != cols || b.p() != p.value())
            throw Error(ErrorCode::ShapeMismatch, "basis matrix shape");
    s.basis_ = basis;
    FpMatrix st = s.stacked();
    s.canonical_ = row_basis(st);
    if (s.canonical_.rows() != basis.size()) throw Error(ErrorCode::InvalidArgument, "basis is linearly dependent");
    return s;
}

bool MatrixSpace::is_skew() const {
    if (rows_ != cols_) return false;
    for (const auto& b : basis_)
        if (!b.is_skew()) return false;
    return true;
}

FpMatrix MatrixSpace::stacked() const {
    FpMatrix st(p_, basis_.size(), rows_ * cols_);
    for (std::size_t i = 0; i < basis_.size(); ++i) st.set_block(i, 0, basis_[i].vectorize());
    return st;
}

bool MatrixSpace::contains(const FpMatrix& a) const {
    if (a.rows() != rows_ || a.cols() != cols_) throw Error(ErrorCode::ShapeMismatch, "membership shape");
    return in_row_space(canonical_, a.vectorize());
}

std::vector<std::uint32_t> MatrixSpace::coords(const FpMatrix& a) const {
    FpMatrix c;
    if (!solve_left(stacked(), a.vectorize(), c)) throw Error(ErrorCode::InvalidArgument, "matrix not in space");
    return {c.data().begin(), c.data().end()};
}

FpMatrix MatrixSpace::element(const std::vector<std::uint32_t>& coeffs) const {
    FpMatrix a(p_, rows_, cols_);
    for (std::size_t i = 0; i < basis_.size(); ++i) a.add_scaled(basis_[i], coeffs[i]);
    return a;
}

MatrixSpace span_from_generators(Prime p, std::size_t rows, std::size_t cols, const std::vector<FpMatrix>& mats) {
    FpMatrix st(p, mats.size(), rows * cols);
    for (std::size_t i = 0; i < mats.size(); ++i) {
        if (mats[i].rows() != rows || mats[i].cols() != cols || mats[i].p() != p.value())
            throw Error(ErrorCode::ShapeMismatch, "generator shape");
        st.set_block(i, 0, mats[i].vectorize());
    }
    FpMatrix can = row_basis(st);
    std::vector<FpMatrix> basis;
    for (std::size_t i = 0; i < can.rows(); ++i) basis.push_back(can.row(i).reshape(rows, cols));
    return MatrixSpace::from_basis(p, rows, cols, basis);
}

MatrixSpace span_from_generators(const std::vector<FpMatrix>& mats) {
    if (mats.empty()) throw Error(ErrorCode::InvalidArgument, "no generators to infer a shape from");
    return span_from_generators(mats[0].prime(), mats[0].rows(), mats[0].cols(), mats);
}

MatrixSpace zero_subspace(const MatrixSpace& s, const FpMatrix& l, const FpMatrix& r) {
    if (l.cols() != s.rows() || r.rows() != s.cols()) throw Error(ErrorCode::ShapeMismatch, "individualization shapes");
    const std::size_t d = s.dim();
    FpMatrix images(s.prime(), d, l.rows() * r.cols());
    for (std::size_t i = 0; i < d; ++i) images.set_block(i, 0, (l * s.basis()[i] * r).vectorize());
    FpMatrix coeffs = nullspace(images);
    std::vector<FpMatrix> gens;
    for (std::size_t i = 0; i < coeffs.rows(); ++i)
        gens.push_back(s.element({coeffs.row_ptr(i), coeffs.row_ptr(i) + d}));
    return span_from_generators(s.prime(), s.rows(), s.cols(), gens);
}

namespace {

// Incremental span of chosen coefficient vectors, kept in echelon form.
struct EchelonSet {
    Prime p;
    std::vector<std::vector<std::uint32_t>> rows;
    std::vector<std::size_t> pivots;

    // Reduces v; true when v is outside the span.
    bool independent(std::vector<std::uint32_t> v) const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::uint32_t f = v[pivots[i]];
            if (!f) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = p.sub(v[j], p.mul(f, rows[i][j]));
        }
        for (auto x : v)
            if (x) return true;
        return false;
    }
    void add(std::vector<std::uint32_t> v) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::uint32_t f = v[pivots[i]];
            if (!f) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = p.sub(v[j], p.mul(f, rows[i][j]));
        }
        std::size_t piv = 0;
        while (v[piv] == 0) ++piv;
        std::uint32_t inv = p.inv(v[piv]);
        for (auto& x : v) x = p.mul(x, inv);
        for (auto& r : rows) {
            std::uint32_t f = r[piv];
            if (!f) continue;
            for (std::size_t j = 0; j < v.size(); ++j) r[j] = p.sub(r[j], p.mul(f, v[j]));
        }
        rows.push_back(v);
        pivots.push_back(piv);
    }
};

int compare_vec(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    return 0;
}

void combine(const std::vector<std::vector<std::uint32_t>>& vecs, const std::vector<std::uint32_t>& c, Prime p,
             std::vector<std::uint32_t>& out) {
    std::fill(out.begin(), out.end(), 0);
    for (std::size_t j = 0; j < vecs.size(); ++j) {
        if (!c[j]) continue;
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = p.add(out[k], p.mul(c[j], vecs[j][k]));
    }
}

}  // namespace

std::vector<FpMatrix> semi_canonical_basis(const MatrixSpace& s, const FpMatrix& l, const FpMatrix& r,
                                           const SemiCanonicalOptions& opts) {
    if (l.cols() != s.rows() || r.rows() != s.cols()) throw Error(ErrorCode::ShapeMismatch, "individualization shapes");
    const Prime p = s.prime();
    const std::size_t d = s.dim();
    if (checked_pow(p.value(), d, opts.cap) > opts.cap)
        throw Error(ErrorCode::CapExceeded, "p^d exceeds the semi-canonical enumeration cap");

    std::vector<std::vector<std::uint32_t>> keys(d), vecs(d);
    for (std::size_t j = 0; j < d; ++j) {
        auto k = (l * s.basis()[j] * r).data();
        keys[j].assign(k.begin(), k.end());
        vecs[j].assign(s.basis()[j].data().begin(), s.basis()[j].data().end());
    }
    const std::size_t klen = l.rows() * r.cols(), vlen = s.rows() * s.cols();

    Rng rng(opts.seed, 0x5ca1ab1e);
    EchelonSet chosen{p, {}, {}};
    std::vector<std::vector<std::uint32_t>> picked;
    std::vector<std::uint32_t> key(klen), vec(vlen), best_key(klen), best_vec(vlen), best_c(d);
    for (std::size_t step = 0; step < d; ++step) {
        bool have = false;
        std::uint64_t ties = 0;
        std::vector<std::uint32_t> c(d, 0);
        while (next_vector(c, p.value())) {
            combine(keys, c, p, key);
            if (have) {
                int cmp = compare_vec(key, best_key);
                if (cmp > 0) continue;
                if (cmp == 0 && opts.tie_break == TieBreak::Lexical) {
                    combine(vecs, c, p, vec);
                    if (compare_vec(vec, best_vec) >= 0) continue;
                    if (!chosen.independent(c)) continue;
                    best_vec = vec;
                    best_c = c;
                    continue;
                }
                if (!chosen.independent(c)) continue;
                if (cmp == 0) {
                    // reservoir sampling over the tied candidates
                    ++ties;
                    if (rng.below(ties) != 0) continue;
                    best_c = c;
                    continue;
                }
            } else if (!chosen.independent(c)) {
                continue;
            }
            have = true;
            ties = 1;
            best_key = key;
            combine(vecs, c, p, best_vec);
            best_c = c;
        }
        chosen.add(best_c);
        picked.push_back(best_c);
    }
    std::vector<FpMatrix> out;
    for (const auto& c : picked) out.push_back(s.element(c));
    return out;
}

std::size_t individualization_size(std::size_t d, std::uint32_t p, std::size_t k, double constant) {
    double kk = static_cast<double>(k);
    double num = std::max(static_cast<double>(d) * std::log2(static_cast<double>(p)), kk);
    return static_cast<std::size_t>(std::ceil(constant * num / std::sqrt(kk)));
}

bool individualization_holds(const MatrixSpace& s, std::size_t k, const FpMatrix& l, const FpMatrix& r) {
    std::vector<std::uint32_t> c(s.dim(), 0);
    while (next_vector(c, s.p())) {
        FpMatrix a = s.element(c);
        if (rank(a) >= k && (l * a * r).is_zero()) return false;
    }
    return true;
}

IndividualizationPair sample_individualization(const MatrixSpace& s, std::size_t k, std::uint64_t seed,
                                               const IndividualizationOptions& opts) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "rank threshold must be at least 1");
    const Prime p = s.prime();
    IndividualizationPair out;
    out.t = individualization_size(s.dim(), p.value(), k, opts.constant);
    const std::size_t m = s.rows(), n = s.cols();
    if (out.t >= std::min(m, n)) {
        out.L = FpMatrix::identity(p, m);
        out.R = opts.skew ? out.L.transpose() : FpMatrix::identity(p, n);
    } else {
        Rng rng(seed, 0x1d);
        out.L = random_matrix(p, out.t, m, rng);
        out.R = opts.skew ? out.L.transpose() : random_matrix(p, n, out.t, rng);
    }
    if (checked_pow(p.value(), s.dim(), opts.verify_budget) <= opts.verify_budget) {
        out.checked = true;
        out.verified = individualization_holds(s, k, out.L, out.R);
    }
    return out;
}

std::optional<std::size_t> max_rank(const MatrixSpace& s, std::uint64_t budget) {
    if (checked_pow(s.p(), s.dim(), budget) > budget) return std::nullopt;
    std::size_t best = 0;
    std::vector<std::uint32_t> c(s.dim(), 0);
    while (next_vector(c, s.p())) best = std::max(best, rank(s.element(c)));
    return best;
}

}  // namespace pgiso
