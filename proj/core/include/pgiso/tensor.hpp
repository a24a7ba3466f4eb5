#pragma once

#include <vector>

#include "pgiso/fp_matrix.hpp"
#include "pgiso/matrix_space.hpp"

namespace pgiso {

// G[i,j,k] with 0 ≤ i < m and 0 ≤ j,k < n, skew in (j,k). Stored as X-slices.
class SkewTensor {
public:
    SkewTensor() = default;
    SkewTensor(Prime p, std::size_t m, std::size_t n);
    // Throws NotSkew when a slice is not skew-symmetric.
    static SkewTensor from_slices(const std::vector<FpMatrix>& x);

    Prime prime() const { return p_; }
    std::uint32_t p() const { return p_.value(); }
    std::size_t m() const { return x_.size(); }
    std::size_t n() const { return n_; }

    std::uint32_t operator()(std::size_t i, std::size_t j, std::size_t k) const { return x_[i](j, k); }
    const std::vector<FpMatrix>& x_slices() const { return x_; }
    const FpMatrix& x_slice(std::size_t i) const { return x_[i]; }
    // Y_j[i,k] = G[i,j,k]
    FpMatrix y_slice(std::size_t j) const;
    // Z_k[i,j] = G[i,j,k]
    FpMatrix z_slice(std::size_t k) const;
    std::vector<FpMatrix> y_slices() const;

    bool slices_independent() const;
    // {v : v·X_i = 0 for all i}; trivial exactly when the tensor is non-degenerate.
    FpMatrix radical() const;
    bool non_degenerate() const { return radical().rows() == 0; }

    MatrixSpace x_space() const;
    MatrixSpace y_space() const;

    friend bool operator==(const SkewTensor& a, const SkewTensor& b) {
        return a.p_ == b.p_ && a.n_ == b.n_ && a.x_ == b.x_;
    }

private:
    Prime p_{};
    std::size_t n_ = 0;
    std::vector<FpMatrix> x_;
};

SkewTensor tensor_from_space(const MatrixSpace& s);
MatrixSpace space_of(const SkewTensor& g);

// X-slice i of the result is Σ_{i'} M[i,i']·N·X_{i'}·Nᵀ.
SkewTensor transform(const SkewTensor& g, const FpMatrix& n, const FpMatrix& m);

SkewTensor random_tensor(Prime p, std::size_t m, std::size_t n, std::uint64_t seed, bool non_degenerate = true);

}  // namespace pgiso
