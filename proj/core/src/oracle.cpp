#include "pgiso/oracle.hpp"

#include <algorithm>
#include <set>

#include "pgiso/error.hpp"

namespace pgiso {

namespace {

FpMatrix vec_row(Prime p, const std::vector<std::uint32_t>& c) {
    FpMatrix v(p, 1, c.size());
    for (std::size_t i = 0; i < c.size(); ++i) v.at(0, i) = c[i];
    return v;
}

}  // namespace

std::optional<FpMatrix> space_isometry_bruteforce(const MatrixSpace& a, const MatrixSpace& b, std::uint64_t budget) {
    if (a.p() != b.p() || a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw Error(ErrorCode::ShapeMismatch, "spaces differ in shape");
    if (a.dim() != b.dim()) return std::nullopt;
    const Prime p = a.prime();
    const std::size_t n = a.rows();
    if (a == b) return FpMatrix::identity(p, n);

    // proj[r]: the r×r leading blocks of B, as vectorized rows.
    std::vector<FpMatrix> proj(n + 1);
    for (std::size_t r = 0; r <= n; ++r) {
        FpMatrix rows(p, 0, r * r);
        for (const auto& m : b.basis()) rows = vstack(rows, m.block(0, 0, r, r).vectorize());
        proj[r] = row_basis(rows);
    }
    std::uint64_t tried = 0;
    FpMatrix s(p, 0, n);
    std::optional<FpMatrix> found;

    auto rec = [&](auto&& self, std::size_t r) -> bool {
        if (r == n) {
            std::vector<FpMatrix> imgs;
            for (const auto& m : a.basis()) imgs.push_back(s * m * s.transpose());
            if (span_from_generators(p, n, n, imgs) == b) {
                found = s;
                return true;
            }
            return false;
        }
        std::vector<std::uint32_t> c(n, 0);
        while (next_vector(c, p.value())) {
            if (++tried > budget) throw Error(ErrorCode::BudgetExceeded, "GL(n) search beyond budget");
            FpMatrix next = vstack(s, vec_row(p, c));
            if (rank(next) != r + 1) continue;
            bool ok = true;
            for (const auto& m : a.basis()) {
                FpMatrix blk = next * m * next.transpose();
                if (!in_row_space(proj[r + 1], blk.vectorize())) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            FpMatrix saved = s;
            s = next;
            if (self(self, r + 1)) return true;
            s = saved;
        }
        return false;
    };
    rec(rec, 0);
    return found;
}

std::optional<std::vector<std::uint32_t>> group_isom_bruteforce(const CayleyTable& g, const CayleyTable& h,
                                                                std::uint64_t budget) {
    const std::size_t order = g.order();
    if (order != h.order()) return std::nullopt;
    std::vector<std::uint64_t> og(order), oh(order);
    for (std::uint32_t x = 0; x < order; ++x) {
        og[x] = g.element_order(x);
        oh[x] = h.element_order(x);
    }
    {
        auto sg = og, sh = oh;
        std::sort(sg.begin(), sg.end());
        std::sort(sh.begin(), sh.end());
        if (sg != sh) return std::nullopt;
    }
    const std::vector<std::uint32_t> gens = generating_set(g);
    std::vector<std::uint32_t> imgs;
    std::vector<std::uint32_t> phi;
    std::uint64_t tried = 0;
    const std::uint32_t none = static_cast<std::uint32_t>(order);

    // Propagates gens[0..j) -> imgs along the Cayley graph; false on conflict.
    auto extend = [&](std::size_t j) {
        phi.assign(order, none);
        std::vector<char> used(order, 0);
        phi[0] = 0;
        used[0] = 1;
        std::vector<std::uint32_t> queue{0};
        for (std::size_t q = 0; q < queue.size(); ++q) {
            std::uint32_t x = queue[q];
            for (std::size_t i = 0; i < j; ++i) {
                std::uint32_t y = g(x, gens[i]), v = h(phi[x], imgs[i]);
                if (phi[y] == none) {
                    if (used[v]) return false;
                    phi[y] = v;
                    used[v] = 1;
                    queue.push_back(y);
                } else if (phi[y] != v) {
                    return false;
                }
            }
        }
        return true;
    };

    auto rec = [&](auto&& self, std::size_t j) -> bool {
        if (j == gens.size()) return true;
        for (std::uint32_t c = 1; c < order; ++c) {
            if (oh[c] != og[gens[j]]) continue;
            if (++tried > budget) throw Error(ErrorCode::BudgetExceeded, "generator images beyond budget");
            imgs.push_back(c);
            if (extend(j + 1) && self(self, j + 1)) return true;
            imgs.pop_back();
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    extend(gens.size());
    for (std::uint32_t a = 0; a < order; ++a)
        for (std::uint32_t b = 0; b < order; ++b)
            if (phi[g(a, b)] != h(phi[a], phi[b])) return std::nullopt;
    return phi;
}

FpMatrix kernel_bruteforce(const MatrixSpace& s, const FpMatrix& lambda, bool skew, std::uint64_t budget) {
    const Prime p = s.prime();
    const std::size_t rows = s.rows(), cols = s.cols();
    if (lambda.cols() != cols) throw Error(ErrorCode::ShapeMismatch, "attribute vectors have the wrong length");
    if (skew && rows != cols) throw Error(ErrorCode::NotSkew, "skew kernel needs square matrices");
    if (checked_pow(p.value(), rows, budget) > budget || checked_pow(p.value(), lambda.rows(), budget) > budget)
        throw Error(ErrorCode::BudgetExceeded, "too many vectors to enumerate");

    std::set<std::vector<std::uint32_t>> span;
    std::vector<std::uint32_t> c(lambda.rows(), 0);
    span.insert(std::vector<std::uint32_t>(cols, 0));
    while (next_vector(c, p.value())) {
        FpMatrix x(p, 1, cols);
        for (std::size_t i = 0; i < lambda.rows(); ++i) x.add_scaled(lambda.row(i), c[i]);
        span.insert(x.data());
    }
    FpMatrix found(p, 0, rows);
    std::vector<std::uint32_t> v(rows, 0);
    while (next_vector(v, p.value())) {
        FpMatrix vr = vec_row(p, v);
        bool ok = true;
        if (skew)
            for (std::size_t i = 0; i < lambda.rows() && ok; ++i) ok = (lambda.row(i) * vr.transpose()).is_zero();
        for (std::size_t i = 0; i < s.dim() && ok; ++i) ok = span.count((vr * s.basis()[i]).data()) > 0;
        if (ok) found = vstack(found, vr);
    }
    return rref(row_basis(found));
}

}  // namespace pgiso
