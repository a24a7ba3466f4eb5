#include "pgiso/tensor.hpp"

#include "pgiso/rng.hpp"

namespace pgiso {

SkewTensor::SkewTensor(Prime p, std::size_t m, std::size_t n) : p_(p), n_(n), x_(m, FpMatrix(p, n, n)) {}

SkewTensor SkewTensor::from_slices(const std::vector<FpMatrix>& x) {
    if (x.empty()) throw Error(ErrorCode::InvalidArgument, "tensor needs at least one slice");
    SkewTensor t(x[0].prime(), 0, x[0].rows());
    for (const auto& s : x) {
        if (s.rows() != t.n_ || s.cols() != t.n_ || s.p() != t.p()) throw Error(ErrorCode::ShapeMismatch, "slice shape");
        if (!s.is_skew()) throw Error(ErrorCode::NotSkew, "tensor slice is not skew-symmetric");
    }
    t.x_ = x;
    return t;
}

FpMatrix SkewTensor::y_slice(std::size_t j) const {
    FpMatrix y(p_, m(), n_);
    for (std::size_t i = 0; i < m(); ++i)
        for (std::size_t k = 0; k < n_; ++k) y.at(i, k) = x_[i](j, k);
    return y;
}

FpMatrix SkewTensor::z_slice(std::size_t k) const {
    FpMatrix z(p_, m(), n_);
    for (std::size_t i = 0; i < m(); ++i)
        for (std::size_t j = 0; j < n_; ++j) z.at(i, j) = x_[i](j, k);
    return z;
}

std::vector<FpMatrix> SkewTensor::y_slices() const {
    std::vector<FpMatrix> ys;
    for (std::size_t j = 0; j < n_; ++j) ys.push_back(y_slice(j));
    return ys;
}

bool SkewTensor::slices_independent() const {
    FpMatrix st(p_, m(), n_ * n_);
    for (std::size_t i = 0; i < m(); ++i) st.set_block(i, 0, x_[i].vectorize());
    return rank(st) == m();
}

FpMatrix SkewTensor::radical() const {
    FpMatrix st(p_, n_, 0);
    for (const auto& x : x_) st = hstack(st, x);
    return nullspace(st);
}

MatrixSpace SkewTensor::x_space() const { return MatrixSpace::from_basis(p_, n_, n_, x_); }

MatrixSpace SkewTensor::y_space() const { return MatrixSpace::from_basis(p_, m(), n_, y_slices()); }

SkewTensor tensor_from_space(const MatrixSpace& s) {
    if (!s.is_skew()) throw Error(ErrorCode::NotSkew, "tensor_from_space needs a skew space");
    if (s.dim() == 0) throw Error(ErrorCode::InvalidArgument, "zero space has no tensor");
    return SkewTensor::from_slices(s.basis());
}

MatrixSpace space_of(const SkewTensor& g) { return span_from_generators(g.prime(), g.n(), g.n(), g.x_slices()); }

SkewTensor transform(const SkewTensor& g, const FpMatrix& n, const FpMatrix& m) {
    if (n.rows() != g.n() || n.cols() != g.n() || m.rows() != g.m() || m.cols() != g.m())
        throw Error(ErrorCode::ShapeMismatch, "transform shapes");
    if (!is_invertible(n) || !is_invertible(m)) throw Error(ErrorCode::Singular, "transform needs invertible N, M");
    std::vector<FpMatrix> conj;
    FpMatrix nt = n.transpose();
    for (const auto& x : g.x_slices()) conj.push_back(n * x * nt);
    std::vector<FpMatrix> out;
    for (std::size_t i = 0; i < g.m(); ++i) {
        FpMatrix acc(g.prime(), g.n(), g.n());
        for (std::size_t k = 0; k < g.m(); ++k) acc.add_scaled(conj[k], m(i, k));
        out.push_back(acc);
    }
    return SkewTensor::from_slices(out);
}

SkewTensor random_tensor(Prime p, std::size_t m, std::size_t n, std::uint64_t seed, bool non_degenerate) {
    Rng rng(seed, 0x7e);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<FpMatrix> xs;
        for (std::size_t i = 0; i < m; ++i) xs.push_back(random_skew(p, n, rng));
        SkewTensor t = SkewTensor::from_slices(xs);
        if (!t.slices_independent()) continue;
        if (non_degenerate && !t.non_degenerate()) continue;
        return t;
    }
    throw Error(ErrorCode::BudgetExceeded, "could not sample a tensor with the requested properties");
}

}  // namespace pgiso
