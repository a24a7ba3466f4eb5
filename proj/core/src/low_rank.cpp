#include "pgiso/low_rank.hpp"

#include "pgiso/rng.hpp"

namespace pgiso {

AttributeSet::AttributeSet(FpMatrix v) : vectors(std::move(v)) {
    if (rank(vectors) != vectors.rows()) throw Error(ErrorCode::InvalidArgument, "attribute vectors are dependent");
}

namespace {

void check_lambda(const MatrixSpace& s, const AttributeSet& lambda) {
    if (lambda.ambient() != s.cols() || lambda.vectors.p() != s.p())
        throw Error(ErrorCode::ShapeMismatch, "attribute set ambient dimension");
}

// Columns of the returned matrix span Λ^⊥, so that w ∈ span(Λ) iff w·Π = 0.
FpMatrix annihilator_columns(const AttributeSet& lambda) {
    return orthogonal_complement(lambda.vectors, lambda.ambient()).transpose();
}

}  // namespace

FpMatrix kernel_general(const MatrixSpace& s, const AttributeSet& lambda) {
    check_lambda(s, lambda);
    FpMatrix pi = annihilator_columns(lambda);
    FpMatrix sys(s.prime(), s.rows(), 0);
    for (const auto& a : s.basis()) sys = hstack(sys, a * pi);
    return nullspace(sys);
}

FpMatrix kernel_skew(const MatrixSpace& s, const AttributeSet& lambda) {
    if (!s.is_skew()) throw Error(ErrorCode::NotSkew, "kernel_skew needs a skew space");
    check_lambda(s, lambda);
    FpMatrix pi = annihilator_columns(lambda);
    FpMatrix sys = lambda.vectors.transpose();
    for (const auto& a : s.basis()) sys = hstack(sys, a * pi);
    return nullspace(sys);
}

bool is_complementary_for(const FpMatrix& kernel, const AttributeSet& lambda, const FpMatrix& c, bool skew) {
    const std::size_t amb = kernel.cols();
    if (c.cols() != amb) return false;
    if (c.rows() + kernel.rows() != amb) return false;
    if (rank(c) != c.rows()) return false;
    if (rank(vstack(kernel, c)) != amb) return false;
    if (skew) {
        if (kernel.rows() + lambda.size() > amb) return false;
        std::size_t lead = amb - kernel.rows() - lambda.size();
        if (lead > 0 && lambda.size() > 0 && !(c.rows_range(0, lead) * lambda.vectors.transpose()).is_zero())
            return false;
    }
    return true;
}

bool is_complementary(const MatrixSpace& s, const AttributeSet& lambda, const FpMatrix& c, bool skew) {
    FpMatrix ker = skew ? kernel_skew(s, lambda) : kernel_general(s, lambda);
    return is_complementary_for(ker, lambda, c, skew);
}

FpMatrix complementary_matrix(const MatrixSpace& s, const AttributeSet& lambda, bool skew) {
    if (!skew) {
        FpMatrix ker = kernel_general(s, lambda);
        return canonical_completion(ker, s.rows());
    }
    FpMatrix ker = kernel_skew(s, lambda);
    const std::size_t n = s.rows();
    if (ker.rows() + lambda.size() > n)
        throw Error(ErrorCode::Infeasible, "|Λ| + dim ker_skew exceeds n");
    // Leading rows complete the kernel inside Λ^⊥ (which contains it); the
    // rest complete to F_p^n.
    FpMatrix perp = orthogonal_complement(lambda.vectors, n);
    FpMatrix lead = completion_within(ker, perp);
    FpMatrix tail = canonical_completion(vstack(ker, lead), n);
    FpMatrix c = vstack(lead, tail);
    if (!is_complementary_for(ker, lambda, c, true))
        throw Error(ErrorCode::Infeasible, "could not build a complementary matrix");
    return c;
}

FormattingData formatting_matrices(const MatrixSpace& s, const AttributeSet& lambda, const FpMatrix& c, bool skew) {
    FormattingData f;
    f.kernel_basis = skew ? kernel_skew(s, lambda) : kernel_general(s, lambda);
    if (!is_complementary_for(f.kernel_basis, lambda, c, skew))
        throw Error(ErrorCode::Infeasible, "complementary matrix is not valid for (S, Λ)");
    f.complementary = c;
    f.P = vstack(f.kernel_basis, c);
    if (!is_invertible(f.P)) throw Error(ErrorCode::Infeasible, "formatting rows not full rank");
    if (skew) {
        f.Q = f.P.transpose();
    } else {
        const std::size_t n = s.cols();
        FpMatrix perp = orthogonal_complement(lambda.vectors, n);
        FpMatrix rest = canonical_completion(perp, n);
        f.Q = vstack(perp, rest).transpose();
    }
    return f;
}

namespace {

std::size_t image_dim(const MatrixSpace& s, const FpMatrix& y) {
    FpMatrix st(s.prime(), 0, s.cols());
    for (const auto& a : s.basis()) st = vstack(st, y * a);
    return rank(st);
}

}  // namespace

AttributeSearchResult find_attribute_set(const MatrixSpace& s, std::size_t r, const AttributeSearchOptions& opts) {
    const Prime p = s.prime();
    const std::size_t m = s.rows(), d = s.dim();
    AttributeSearchResult res;
    res.rank_bound = r;
    if (opts.skew && !s.is_skew()) throw Error(ErrorCode::NotSkew, "skew attribute search on a non-skew space");

    Rng rng(opts.seed, 0xa77);
    std::vector<FpMatrix> samples;
    for (std::size_t i = 0; i < opts.samples; ++i) {
        std::vector<std::uint32_t> c(d);
        for (auto& x : c) x = static_cast<std::uint32_t>(rng.below(p.value()));
        samples.push_back(s.element(c));
    }

    // Greedy rows x_1..x_d raising rank(X·A_α) for a majority of samples.
    FpMatrix x(p, 0, m);
    std::vector<std::size_t> cur_rank(samples.size(), 0);
    const std::size_t max_rows = static_cast<std::size_t>(2 * r + 1);
    while (x.rows() < std::min(m, max_rows) && r > 0) {
        bool accepted = false;
        for (std::size_t tries = 0; tries < opts.candidates + m && !accepted; ++tries) {
            FpMatrix cand = tries < m ? FpMatrix::unit(p, 1, m, 0, tries) : random_matrix(p, 1, m, rng);
            FpMatrix nx = vstack(x, cand);
            if (rank(nx) != nx.rows()) continue;
            std::size_t wins = 0;
            std::vector<std::size_t> nr(samples.size());
            for (std::size_t i = 0; i < samples.size(); ++i) {
                nr[i] = rank(nx * samples[i]);
                if (nr[i] > cur_rank[i]) ++wins;
            }
            if (2 * wins > samples.size()) {
                x = nx;
                cur_rank = nr;
                accepted = true;
            }
        }
        if (!accepted) break;
    }
    res.greedy_rows = x.rows();

    // Complete to P; shift every completion row by the combination of the
    // greedy rows that minimizes dim <y·S>.
    FpMatrix completion = canonical_completion(x, m);
    const std::size_t g = x.rows();
    const bool search = checked_pow(p.value(), g, opts.budget) <= opts.budget;
    FpMatrix lambda_gen(p, 0, s.cols());
    FpMatrix trailing(p, 0, m);
    for (std::size_t i = 0; i < completion.rows(); ++i) {
        FpMatrix v = completion.row(i);
        FpMatrix best = v;
        std::size_t best_dim = image_dim(s, v);
        if (search && g > 0) {
            std::vector<std::uint32_t> beta(g, 0);
            while (best_dim > 0 && next_vector(beta, p.value())) {
                FpMatrix y = v;
                for (std::size_t j = 0; j < g; ++j) y.add_scaled(x.row(j), p.neg(beta[j]));
                std::size_t dd = image_dim(s, y);
                if (dd < best_dim) {
                    best_dim = dd;
                    best = y;
                }
            }
        }
        trailing = vstack(trailing, best);
        for (const auto& a : s.basis()) lambda_gen = vstack(lambda_gen, best * a);
    }
    res.lambda = AttributeSet(row_basis(lambda_gen));

    FpMatrix ker = opts.skew ? kernel_skew(s, res.lambda) : kernel_general(s, res.lambda);
    res.kernel_dim = ker.rows();
    const double bound = opts.constant * static_cast<double>(r * r);
    if (static_cast<double>(res.lambda.size()) > bound || static_cast<double>(m) - static_cast<double>(res.kernel_dim) > bound)
        throw Error(ErrorCode::BudgetExceeded, "greedy attribute search did not certify the size bounds");
    return res;
}

AttributeSearchResult find_attribute_set(const MatrixSpace& s, const AttributeSearchOptions& opts) {
    auto r = max_rank(s, opts.budget);
    std::size_t rr = r ? *r : std::min(s.rows(), s.cols());
    return find_attribute_set(s, rr, opts);
}

}  // namespace pgiso
