#include "pgiso/fp_matrix.hpp"

#include <sstream>

namespace pgiso {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Prime::Prime(std::uint32_t p) : p_(p) {
    if (p < 3 || !is_prime(p))
        throw Error(ErrorCode::InvalidArgument, "modulus " + std::to_string(p) + " is not an odd prime");
    if (p > (1u << 30)) throw Error(ErrorCode::InvalidArgument, "modulus too large");
}

std::uint32_t Prime::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1 % p_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint32_t Prime::inv(std::uint32_t a) const {
    if (a % p_ == 0) throw Error(ErrorCode::Singular, "inverse of zero");
    return pow(a, p_ - 2);
}

FpMatrix::FpMatrix(Prime p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FpMatrix::FpMatrix(Prime p, std::size_t rows, std::size_t cols, std::initializer_list<long long> entries)
    : FpMatrix(p, rows, cols) {
    if (entries.size() != rows * cols) throw Error(ErrorCode::ShapeMismatch, "entry count");
    std::size_t i = 0;
    for (long long v : entries) data_[i++] = p.reduce(v);
}

FpMatrix FpMatrix::identity(Prime p, std::size_t n) {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
}

FpMatrix FpMatrix::from_rows(Prime p, const std::vector<std::vector<long long>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    FpMatrix m(p, rows.size(), c);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != c) throw Error(ErrorCode::ShapeMismatch, "ragged rows");
        for (std::size_t j = 0; j < c; ++j) m.set(r, j, rows[r][j]);
    }
    return m;
}

FpMatrix FpMatrix::unit(Prime p, std::size_t rows, std::size_t cols, std::size_t r, std::size_t c) {
    FpMatrix m(p, rows, cols);
    m.at(r, c) = 1;
    return m;
}

bool FpMatrix::is_zero() const {
    for (auto v : data_)
        if (v) return false;
    return true;
}

bool FpMatrix::is_skew() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if ((*this)(i, j) != p_.neg((*this)(j, i))) return false;
    return true;
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix t(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
    return t;
}

static void check_same(const FpMatrix& a, const FpMatrix& b) {
    if (a.p() != b.p() || a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::ShapeMismatch, "operands differ in shape or modulus");
}

FpMatrix FpMatrix::operator+(const FpMatrix& o) const {
    FpMatrix r = *this;
    r += o;
    return r;
}

FpMatrix& FpMatrix::operator+=(const FpMatrix& o) {
    check_same(*this, o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = p_.add(data_[i], o.data_[i]);
    return *this;
}

FpMatrix FpMatrix::operator-(const FpMatrix& o) const {
    check_same(*this, o);
    FpMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = p_.sub(data_[i], o.data_[i]);
    return r;
}

FpMatrix FpMatrix::operator-() const {
    FpMatrix r = *this;
    for (auto& v : r.data_) v = p_.neg(v);
    return r;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
    if (p() != o.p() || cols_ != o.rows_) throw Error(ErrorCode::ShapeMismatch, "product shapes");
    FpMatrix r(p_, rows_, o.cols_);
    const std::uint64_t p = p_.value();
    std::vector<std::uint64_t> acc(o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t a = data_[i * cols_ + k];
            if (!a) continue;
            const std::uint32_t* orow = o.row_ptr(k);
            for (std::size_t j = 0; j < o.cols_; ++j) acc[j] += a * orow[j];
            if (k % 1024 == 1023)
                for (auto& x : acc) x %= p;
        }
        for (std::size_t j = 0; j < o.cols_; ++j) r.data_[i * o.cols_ + j] = static_cast<std::uint32_t>(acc[j] % p);
    }
    return r;
}

FpMatrix FpMatrix::scaled(std::uint32_t c) const {
    FpMatrix r = *this;
    c %= p();
    for (auto& v : r.data_) v = p_.mul(v, c);
    return r;
}

void FpMatrix::add_scaled(const FpMatrix& o, std::uint32_t c) {
    check_same(*this, o);
    c %= p();
    if (!c) return;
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = p_.add(data_[i], p_.mul(o.data_[i], c));
}

FpMatrix FpMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::ShapeMismatch, "block out of range");
    FpMatrix b(p_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b.data_[i * nc + j] = data_[(r0 + i) * cols_ + c0 + j];
    return b;
}

void FpMatrix::set_block(std::size_t r0, std::size_t c0, const FpMatrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_ || b.p() != p())
        throw Error(ErrorCode::ShapeMismatch, "set_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) data_[(r0 + i) * cols_ + c0 + j] = b.data_[i * b.cols_ + j];
}

FpMatrix FpMatrix::vectorize() const {
    FpMatrix v(p_, 1, rows_ * cols_);
    v.data_ = data_;
    return v;
}

FpMatrix FpMatrix::reshape(std::size_t rows, std::size_t cols) const {
    if (rows * cols != data_.size()) throw Error(ErrorCode::ShapeMismatch, "reshape size");
    FpMatrix m(p_, rows, cols);
    m.data_ = data_;
    return m;
}

std::string FpMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
        os << '\n';
    }
    return os.str();
}

FpMatrix vstack(const FpMatrix& a, const FpMatrix& b) {
    if (a.cols() != b.cols() || a.p() != b.p()) throw Error(ErrorCode::ShapeMismatch, "vstack widths");
    FpMatrix r(a.prime(), a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

FpMatrix vstack(const std::vector<FpMatrix>& parts, Prime p, std::size_t cols) {
    std::size_t rows = 0;
    for (const auto& m : parts) {
        if (m.cols() != cols) throw Error(ErrorCode::ShapeMismatch, "vstack widths");
        rows += m.rows();
    }
    FpMatrix r(p, rows, cols);
    std::size_t at = 0;
    for (const auto& m : parts) {
        r.set_block(at, 0, m);
        at += m.rows();
    }
    return r;
}

FpMatrix hstack(const FpMatrix& a, const FpMatrix& b) {
    if (a.rows() != b.rows() || a.p() != b.p()) throw Error(ErrorCode::ShapeMismatch, "hstack heights");
    FpMatrix r(a.prime(), a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

FpMatrix block_diag(const FpMatrix& a, const FpMatrix& b) {
    FpMatrix r(a.prime(), a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

Ordering lex_compare(const FpMatrix& a, const FpMatrix& b) {
    if (a.p() != b.p() || a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::ShapeMismatch, "lex_compare shapes");
    const auto& x = a.data();
    const auto& y = b.data();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < y[i]) return Ordering::Less;
        if (x[i] > y[i]) return Ordering::Greater;
    }
    return Ordering::Equal;
}

bool lex_less(const FpMatrix& a, const FpMatrix& b) { return lex_compare(a, b) == Ordering::Less; }

RrefResult rref_rank(const FpMatrix& a) {
    const Prime p = a.prime();
    RrefResult res{a, 0, FpMatrix::identity(p, a.rows()), {}};
    FpMatrix& m = res.reduced;
    FpMatrix& t = res.transform;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(r, j), m.at(piv, j));
            for (std::size_t j = 0; j < rows; ++j) std::swap(t.at(r, j), t.at(piv, j));
        }
        std::uint32_t inv = p.inv(m(r, c));
        for (std::size_t j = 0; j < cols; ++j) m.at(r, j) = p.mul(m(r, j), inv);
        for (std::size_t j = 0; j < rows; ++j) t.at(r, j) = p.mul(t(r, j), inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            std::uint32_t f = m(i, c);
            if (!f) continue;
            std::uint32_t nf = p.neg(f);
            for (std::size_t j = c; j < cols; ++j) m.at(i, j) = p.add(m(i, j), p.mul(nf, m(r, j)));
            for (std::size_t j = 0; j < rows; ++j) t.at(i, j) = p.add(t(i, j), p.mul(nf, t(r, j)));
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

// Elimination without the transform; used on hot paths.
static std::size_t rref_inplace(FpMatrix& m, std::vector<std::size_t>* pivots) {
    const Prime p = m.prime();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(m.at(r, j), m.at(piv, j));
        std::uint32_t inv = p.inv(m(r, c));
        for (std::size_t j = c; j < cols; ++j) m.at(r, j) = p.mul(m(r, j), inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            std::uint32_t f = m(i, c);
            if (!f) continue;
            std::uint32_t nf = p.neg(f);
            for (std::size_t j = c; j < cols; ++j) m.at(i, j) = p.add(m(i, j), p.mul(nf, m(r, j)));
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return r;
}

FpMatrix rref(const FpMatrix& a) {
    FpMatrix m = a;
    rref_inplace(m, nullptr);
    return m;
}

std::size_t rank(const FpMatrix& a) {
    FpMatrix m = a;
    return rref_inplace(m, nullptr);
}

FpMatrix invert(const FpMatrix& a) {
    if (!a.is_square()) throw Error(ErrorCode::ShapeMismatch, "invert needs a square matrix");
    auto r = rref_rank(a);
    if (r.rank != a.rows()) throw Error(ErrorCode::Singular, "matrix is not invertible");
    return r.transform;
}

bool is_invertible(const FpMatrix& a) { return a.is_square() && rank(a) == a.rows(); }

FpMatrix nullspace(const FpMatrix& a) {
    auto r = rref_rank(a);
    return row_basis(r.transform.rows_range(r.rank, a.rows() - r.rank));
}

FpMatrix right_nullspace(const FpMatrix& a) { return nullspace(a.transpose()); }

FpMatrix row_basis(const FpMatrix& a) {
    FpMatrix m = a;
    std::size_t r = rref_inplace(m, nullptr);
    return m.rows_range(0, r);
}

bool in_row_space(const FpMatrix& basis, const FpMatrix& v) {
    return rank(vstack(basis, v)) == rank(basis);
}

bool same_row_space(const FpMatrix& a, const FpMatrix& b) { return row_basis(a) == row_basis(b); }

FpMatrix sum_row_spaces(const FpMatrix& a, const FpMatrix& b) { return row_basis(vstack(a, b)); }

FpMatrix intersect_row_spaces(const FpMatrix& a, const FpMatrix& b) {
    // x·A = y·B  <=>  (x, -y)·[A; B] = 0
    FpMatrix ba = row_basis(a), bb = row_basis(b);
    FpMatrix stacked = vstack(ba, bb);
    FpMatrix ns = nullspace(stacked);
    if (ns.rows() == 0) return FpMatrix(a.prime(), 0, a.cols());
    return row_basis(ns.cols_range(0, ba.rows()) * ba);
}

FpMatrix canonical_completion(const FpMatrix& basis, std::size_t n) {
    std::vector<std::size_t> piv;
    FpMatrix m = basis;
    rref_inplace(m, &piv);
    std::vector<bool> used(n, false);
    for (auto c : piv) used[c] = true;
    std::size_t count = 0;
    for (std::size_t c = 0; c < n; ++c)
        if (!used[c]) ++count;
    FpMatrix out(basis.prime(), count, n);
    std::size_t r = 0;
    for (std::size_t c = 0; c < n; ++c)
        if (!used[c]) out.at(r++, c) = 1;
    return out;
}

FpMatrix completion_within(const FpMatrix& inner, const FpMatrix& outer) {
    FpMatrix cur = row_basis(inner);
    FpMatrix ob = row_basis(outer);
    std::vector<FpMatrix> picked;
    std::size_t rk = cur.rows();
    for (std::size_t i = 0; i < ob.rows(); ++i) {
        FpMatrix cand = vstack(cur, ob.row(i));
        std::size_t r2 = rank(cand);
        if (r2 > rk) {
            picked.push_back(ob.row(i));
            cur = cand;
            rk = r2;
        }
    }
    return vstack(picked, outer.prime(), outer.cols());
}

FpMatrix orthogonal_complement(const FpMatrix& a, std::size_t n) {
    if (a.rows() == 0) return FpMatrix::identity(a.prime(), n);
    return row_basis(right_nullspace(a));
}

bool solve_left(const FpMatrix& a, const FpMatrix& b, FpMatrix& coeffs) {
    // Solve c·A = b via the RREF of Aᵀ augmented with bᵀ.
    const Prime p = a.prime();
    FpMatrix aug = hstack(a.transpose(), b.transpose());
    std::vector<std::size_t> piv;
    FpMatrix m = aug;
    std::size_t r = rref_inplace(m, &piv);
    if (!piv.empty() && piv.back() == a.rows()) return false;
    coeffs = FpMatrix(p, 1, a.rows());
    for (std::size_t i = 0; i < r; ++i) coeffs.at(0, piv[i]) = m(i, a.rows());
    return true;
}

bool next_vector(std::vector<std::uint32_t>& v, std::uint32_t p) {
    for (std::size_t i = v.size(); i-- > 0;) {
        if (++v[i] < p) return true;
        v[i] = 0;
    }
    return false;
}

}  // namespace pgiso
