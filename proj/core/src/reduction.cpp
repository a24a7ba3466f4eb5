#include "pgiso/reduction.hpp"

namespace pgiso {

namespace {

// 1-based anchor: F(r, c) = v and F(c, r) = −v.
void anchor(FpMatrix& f, std::size_t r, std::size_t c) {
    f.at(r - 1, c - 1) = 1;
    f.at(c - 1, r - 1) = f.p() - 1;
}

FpMatrix stack_rows(const std::vector<FpMatrix>& parts, Prime p, std::size_t cols) {
    return vstack(parts, p, cols);
}

}  // namespace

FFTuple build_ff(const SemiCanonicalForm& sc) {
    const SkewTensor& g = sc.tensor;
    const FormParams& q = sc.params;
    if (q.m_prime() > g.m() || q.n_prime() > g.n() || !kernel_pattern_holds(g, q))
        throw Error(ErrorCode::InvalidForm, "semi-canonical form violates its kernel zero-pattern");
    const Prime p = g.prime();
    const std::size_t n = g.n(), m = g.m(), np = q.n_prime(), mp = q.m_prime();
    const std::size_t d = 3 + n + mp;

    FFTuple ff;
    ff.p = p;
    ff.n = n;
    ff.mp = mp;
    ff.params = q;
    auto fresh = [&]() -> FpMatrix& {
        ff.mats.emplace_back(p, d, d);
        return ff.mats.back();
    };

    // Step 1.
    anchor(fresh(), 1, 2);
    anchor(fresh(), 1, 3);
    anchor(fresh(), 2, 3);
    ff.marks[0] = ff.mats.size();

    // Step 2.
    for (std::size_t i = q.ax; i < m; ++i) fresh().set_block(3, 3, g.x_slice(i).block(0, 0, np, np));
    ff.marks[1] = ff.mats.size();

    // Step 3.
    for (std::size_t i = mp; i < m; ++i) fresh().set_block(3 + np, 3 + np, g.x_slice(i).block(np, np, n - np, n - np));
    ff.marks[2] = ff.mats.size();

    // Step 4.
    for (std::size_t i = mp; i < m; ++i) {
        FpMatrix& f = fresh();
        f.set_block(3, 3 + np, g.x_slice(i).block(0, np, np, n - np));
        f.set_block(3 + np, 3, g.x_slice(i).block(np, 0, n - np, np));
    }
    ff.marks[3] = ff.mats.size();

    // Step 5.
    for (std::size_t l = 1; l <= n - q.ay; ++l) {
        anchor(fresh(), 1, 3 + q.ay + l);
        anchor(fresh(), 2, 3 + q.ay + l);
    }
    ff.marks[4] = ff.mats.size();

    // Step 6.
    for (std::size_t j = q.ay; j < n; ++j) {
        FpMatrix y = g.y_slice(j).block(0, 0, mp, np);
        FpMatrix& f = fresh();
        f.set_block(3 + n, 3, y);
        f.set_block(3, 3 + n, -y.transpose());
    }
    ff.marks[5] = ff.mats.size();

    // Step 7.
    for (std::size_t j = np; j < n; ++j) {
        FpMatrix y = g.y_slice(j).block(0, np, mp, n - np);
        FpMatrix& f = fresh();
        f.set_block(3 + n, 3 + np, y);
        f.set_block(3 + np, 3 + n, -y.transpose());
    }
    ff.marks[6] = ff.mats.size();

    // Step 8.
    for (std::size_t l = 1; l <= q.bx; ++l) {
        anchor(fresh(), 1, 3 + n + q.ax + l);
        anchor(fresh(), 2, 3 + n + q.ax + l);
    }
    ff.t = ff.mats.size();

    std::string why = ff_violation(ff);
    if (!why.empty()) throw Error(ErrorCode::InvalidForm, "FF tuple: " + why);
    return ff;
}

std::string ff_violation(const FFTuple& ff) {
    const std::size_t d = ff.dim(), n3 = 3 + ff.n;
    if (ff.mats.size() != ff.t) return "length differs from t";
    for (std::size_t l = 0; l < ff.t; ++l) {
        const FpMatrix& f = ff.mats[l];
        if (f.rows() != d || f.cols() != d || !f.is_skew()) return "member " + std::to_string(l + 1) + " not skew";
        if (!f.block(n3, n3, ff.mp, ff.mp).is_zero()) return "bottom-right block nonzero";
        bool type1 = l < ff.marks[4];
        if (type1 && !ff.b_block(l).is_zero()) return "member " + std::to_string(l + 1) + " should be type 1";
        if (!type1 && !ff.a_block(l).is_zero()) return "member " + std::to_string(l + 1) + " should be type 2";
    }
    // Vectors vanishing on the first three coordinates are detected by some
    // member whose first three rows are zero.
    FpMatrix detect(ff.p, d - 3, 0);
    for (const auto& f : ff.mats)
        if (f.rows_range(0, 3).is_zero()) detect = hstack(detect, f.rows_range(3, d - 3));
    if (nullspace(detect).rows() != 0) return "a vector with v[1..3] = 0 annihilates every member";
    std::vector<FpMatrix> bs;
    for (std::size_t l = 0; l < ff.t; ++l) bs.push_back(ff.b_block(l));
    if (rank(stack_rows(bs, ff.p, ff.mp)) != ff.mp) return "B-block rows do not span m' dimensions";
    return {};
}

FFType classify(const FFTuple& ff, std::size_t l) {
    if (ff.b_block(l).is_zero()) return FFType::Type1;
    if (ff.a_block(l).is_zero()) return FFType::Type2;
    throw Error(ErrorCode::Ambiguous, "FF member has both blocks nonzero");
}

BlockDecomposedS decompose(const FpMatrix& s, std::size_t n3) {
    const std::size_t mp = s.rows() - n3;
    return {s.block(0, 0, n3, n3), s.block(0, n3, n3, mp), s.block(n3, 0, mp, n3), s.block(n3, n3, mp, mp)};
}

FpMatrix reassemble(const BlockDecomposedS& b) { return vstack(hstack(b.Q, b.R), hstack(b.V, b.W)); }

std::optional<FpMatrix> repair_block_diagonal(const FpMatrix& s, const FFTuple& g, const FFTuple& h) {
    auto b = decompose(s, 3 + g.n);
    FpMatrix out;
    if (is_invertible(b.Q))
        out = block_diag(b.Q, b.W - b.V * invert(b.Q) * b.R);
    else if (is_invertible(b.W))
        out = block_diag(b.Q - b.R * invert(b.W) * b.V, b.W);
    else
        return std::nullopt;
    if (!is_tuple_isometry(out, g.mats, h.mats))
        throw Error(ErrorCode::NormalizationFailed, "repaired block-diagonal S does not map FF_G to FF_H");
    return out;
}

FpMatrix Normalized::s_prime() const {
    const Prime p = Qp.prime();
    const std::size_t n3 = Qp.cols(), mp = Rp.cols();
    FpMatrix top = vstack(hstack(Qp, FpMatrix(p, Qp.rows(), mp)), hstack(FpMatrix(p, Rp.rows(), n3), Rp));
    FpMatrix bot = vstack(hstack(FpMatrix(p, Wp.rows(), n3), Wp), hstack(Vp, FpMatrix(p, Vp.rows(), mp)));
    return vstack(top, bot);
}

namespace {

[[noreturn]] void norm_fail(const std::string& why) { throw Error(ErrorCode::NormalizationFailed, why); }

// Rows c·basis of the subspace {c·basis : c·basis·target = 0}.
FpMatrix annihilated_part(const FpMatrix& basis, const FpMatrix& target) { return nullspace(basis * target) * basis; }

// {c : c·X ∈ rowspace(Y)}
FpMatrix preimage_in(const FpMatrix& x, const FpMatrix& y) {
    FpMatrix perp = orthogonal_complement(row_basis(y), y.cols());
    return nullspace(x * perp.transpose());
}

void check_case1(const Normalized& nz, const FFTuple& g, const FFTuple& h) {
    const Prime p = g.p;
    const std::size_t n3 = 3 + g.n, mp = g.mp, q = nz.q, r = n3 - q;
    FpMatrix sp = nz.s_prime();
    if (!is_invertible(sp)) norm_fail("S' is singular");
    FpMatrix jk = block_diag(nz.J, nz.K);
    FpMatrix spt = sp.transpose(), jkt = jk.transpose();
    for (std::size_t l = 0; l < g.t; ++l) {
        FpMatrix lhs = sp * g.mats[l] * spt;
        if (!(lhs == jk * h.mats[l] * jkt)) norm_fail("S' F S'^T differs from diag(J,K) F' diag(J,K)^T");
        if (l < g.marks[4]) {
            FpMatrix rest = lhs;
            rest.set_block(0, 0, FpMatrix(p, q, q));
            if (!rest.is_zero()) norm_fail("type-1 image leaves the top-left q block");
        } else {
            if (!lhs.block(0, 0, n3, n3).is_zero()) norm_fail("type-2 image has a nonzero A-block");
            FpMatrix dl = lhs.block(0, n3, n3, mp);
            if (!dl.block(0, mp - r, q, r).is_zero() || !dl.block(q, 0, r, mp - r).is_zero())
                norm_fail("type-2 D-block is not block diagonal");
        }
    }
}

}  // namespace

Normalized normalize_S(const FpMatrix& s, const FFTuple& g, const FFTuple& h) {
    const Prime p = g.p;
    const std::size_t n3 = 3 + g.n, mp = g.mp;
    FpMatrix cur = s;
    std::size_t prev_tau = n3 + 1;
    for (std::size_t iter = 0; iter <= n3; ++iter) {
        auto b = decompose(cur, n3);
        FpMatrix rt = b.R.transpose();
        std::vector<FpMatrix> ms;
        FpMatrix wide(p, n3, 0);
        for (std::size_t l = g.marks[4]; l < g.t; ++l) {
            FpMatrix x = b.Q * g.b_block(l) * rt;
            if (!(x == x.transpose())) norm_fail("Q B R^T is not symmetric");
            ms.push_back(x);
            wide = hstack(wide, x);
        }
        const std::size_t tau = rank(stack_rows(ms, p, n3));
        if (tau >= prev_tau) norm_fail("tau did not decrease");
        prev_tau = tau;

        FpMatrix u = nullspace(wide);
        if (u.rows() != n3 - tau) norm_fail("annihilator of Q B R^T has the wrong dimension");
        FpMatrix uq = annihilated_part(u, b.R), ur = annihilated_part(u, b.Q);
        if (uq.rows() + ur.rows() != u.rows() || rank(vstack(uq, ur)) != u.rows())
            norm_fail("annihilator does not split into Q- and R-parts");
        FpMatrix c1 = canonical_completion(u, n3);
        FpMatrix q1 = c1 * b.Q, r1 = c1 * b.R, q0 = uq * b.Q, r0 = ur * b.R;

        FpMatrix kv = preimage_in(b.V, b.Q), kw = preimage_in(b.W, b.R);
        FpMatrix kint = intersect_row_spaces(kv, kw);
        if (kint.rows() != tau) norm_fail("lower block intersection has dimension != tau");
        FpMatrix kv_extra = completion_within(kint, kv), kw_extra = completion_within(kint, kw);

        if (tau == 0) {
            Normalized nz;
            nz.J = vstack(uq, ur);
            nz.K = vstack(kv_extra, kw_extra);
            if (nz.K.rows() != mp || !is_invertible(nz.K) || !is_invertible(nz.J)) norm_fail("J or K singular");
            nz.Qp = q0;
            nz.Rp = r0;
            nz.Wp = kv_extra * b.W;
            nz.Vp = kw_extra * b.V;
            nz.q = q0.rows();
            nz.rewrites = iter;
            check_case1(nz, g, h);
            return nz;
        }

        FpMatrix qs = vstack(q1, q0), rs = vstack(r1, r0);
        if (rank(qs) != qs.rows() || rank(rs) != rs.rows()) norm_fail("[Q1;Q0] or [R1;R0] not of full row rank");
        FpMatrix zq(p, tau, tau), zq0(p, tau, q0.rows()), zr(p, tau, tau), zr0(p, tau, r0.rows());
        for (std::size_t i = 0; i < tau; ++i) {
            FpMatrix cq, cr;
            if (!solve_left(qs, kint.row(i) * b.V, cq) || !solve_left(rs, kint.row(i) * b.W, cr))
                norm_fail("lower rows leave the row spaces of Q or R");
            zq.set_block(i, 0, cq.cols_range(0, tau));
            zq0.set_block(i, 0, cq.cols_range(tau, q0.rows()));
            zr.set_block(i, 0, cr.cols_range(0, tau));
            zr0.set_block(i, 0, cr.cols_range(tau, r0.rows()));
        }

        FpMatrix first;
        if (is_invertible(zq)) {
            FpMatrix r1p = r1 - invert(zq) * (zr * r1 + zr0 * r0);
            first = hstack(FpMatrix(p, tau, n3), r1p);
        } else if (is_invertible(zr)) {
            FpMatrix q1p = q1 - invert(zr) * (zq * q1 + zq0 * q0);
            first = hstack(q1p, FpMatrix(p, tau, mp));
        } else {
            FpMatrix two_zr = zr.scaled(2);
            first = hstack(zr * q1, (two_zr - zq) * r1);
        }
        FpMatrix t_new = vstack(vstack(first, hstack(q0, FpMatrix(p, q0.rows(), mp))),
                                hstack(FpMatrix(p, r0.rows(), n3), r0));
        FpMatrix xu = t_new * invert(cur);
        FpMatrix x = xu.cols_range(0, n3);
        if (!is_invertible(x)) norm_fail("rewritten top block is not an upper-triangular transform of S");
        cur = vstack(invert(x) * t_new, cur.rows_range(n3, mp));
        if (!is_tuple_isometry(cur, g.mats, h.mats)) norm_fail("rewritten S no longer maps FF_G to FF_H");
    }
    norm_fail("tau did not reach zero within 3+n rewrites");
}

std::vector<std::size_t> phi_indices(const FFTuple& ff) {
    std::vector<std::size_t> phi = {0, 1, 2};
    for (std::size_t k = 3 + ff.params.ay; k < 3 + ff.n; ++k) phi.push_back(k);
    for (std::size_t k = 3 + ff.n + ff.params.ax; k < ff.dim(); ++k) phi.push_back(k);
    return phi;
}

std::string witness_structure_violation(const FpMatrix& s, const FFTuple& g, const FFTuple& h) {
    if (!is_tuple_isometry(s, g.mats, h.mats)) return "S does not map FF_G to FF_H";
    const Prime p = g.p;
    const std::size_t d = g.dim(), n3 = 3 + g.n;
    const std::uint32_t gamma = s(0, 0);
    if (p.mul(gamma, gamma) != 1) return "gamma^2 != 1";
    for (std::size_t k : phi_indices(g))
        for (std::size_t i = 0; i < d; ++i)
            if (s(i, k) != (i == k ? gamma : 0u)) return "column " + std::to_string(k + 1) + " in Phi is not gamma*e_k";
    if (!s.block(0, 3, 3, d - 3).is_zero()) return "S[1..3, 4..] is nonzero";
    if (!s.block(3, 0, d - 3, 3).is_zero()) return "S[4.., 1..3] is nonzero";
    FpMatrix bl = s.block(n3, 0, g.mp, n3);
    for (std::size_t l = 0; l < g.t; ++l)
        if (!(bl * g.a_block(l)).is_zero()) return "bottom-left rows do not annihilate A_l";
    return {};
}

std::optional<std::pair<FpMatrix, FpMatrix>> extract_witness(const FpMatrix& s_block, const SemiCanonicalForm& g,
                                                             const SemiCanonicalForm& h) {
    const Prime p = g.tensor.prime();
    const std::size_t n = g.tensor.n(), m = g.tensor.m(), mp = g.params.m_prime(), np = g.params.n_prime();
    const std::uint32_t gamma = s_block(0, 0);
    if (p.mul(gamma, gamma) != 1) return std::nullopt;
    FpMatrix nm = s_block.block(3, 3, n, n).scaled(gamma);
    nm.set_block(np, 0, FpMatrix(p, n - np, g.params.ay));
    FpMatrix mm = block_diag(s_block.block(3 + n, 3 + n, mp, mp).scaled(gamma), FpMatrix::identity(p, m - mp));
    if (!is_invertible(nm) || !is_invertible(mm)) return std::nullopt;
    if (!(transform(g.tensor, nm, mm) == h.tensor)) return std::nullopt;
    return std::make_pair(nm, mm);
}

namespace {

// Direct search for a block-diagonal FF isometry: the linear backend with R and
// V pinned to zero. Used only when the assembled witness fails to verify.
std::optional<FpMatrix> block_diagonal_search(const FFTuple& g, const FFTuple& h, const TupleOptions& opts,
                                              TupleStats* stats) {
    const Prime p = g.p;
    const std::size_t d = g.dim(), n3 = 3 + g.n;
    auto in_block = [&](std::size_t r, std::size_t c) { return (r < n3) == (c < n3); };
    // Unknowns: block-diagonal entries of S, then all entries of T; S·F_i = F'_i·T.
    std::vector<std::pair<std::size_t, std::size_t>> sv;
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            if (in_block(r, c)) sv.emplace_back(r, c);
    const std::size_t ns = sv.size(), nt = d * d;
    FpMatrix eq(p, g.t * d * d, ns + nt);
    std::size_t e = 0;
    for (std::size_t i = 0; i < g.t; ++i)
        for (std::size_t row = 0; row < d; ++row)
            for (std::size_t col = 0; col < d; ++col, ++e) {
                for (std::size_t k = 0; k < ns; ++k)
                    if (sv[k].first == row) eq.at(e, k) = g.mats[i](sv[k].second, col);
                for (std::size_t j = 0; j < d; ++j) eq.at(e, ns + j * d + col) = p.neg(h.mats[i](row, j));
            }
    FpMatrix sol = row_basis(right_nullspace(eq).cols_range(0, ns));
    if (stats) stats->solution_dim = sol.rows();
    if (checked_pow(p.value(), sol.rows(), opts.budget) > opts.budget)
        throw Error(ErrorCode::BudgetExceeded, "block-diagonal solution space too large");
    std::vector<std::uint32_t> c(sol.rows(), 0);
    while (next_vector(c, p.value())) {
        FpMatrix s(p, d, d);
        for (std::size_t r = 0; r < sol.rows(); ++r)
            if (c[r])
                for (std::size_t k = 0; k < ns; ++k) s.at(sv[k].first, sv[k].second) = p.add(s(sv[k].first, sv[k].second), p.mul(c[r], sol(r, k)));
        if (stats) ++stats->candidates;
        if (is_tuple_isometry(s, g.mats, h.mats)) return s;
    }
    return std::nullopt;
}

}  // namespace

NormalizedOutcome resolve_normalized(const FpMatrix& s, const FFTuple& fg, const FFTuple& fh, const TupleOptions& opts) {
    NormalizedOutcome res;
    Normalized nz = normalize_S(s, fg, fh);
    MatrixTuple xs, xts;
    for (std::size_t l = fg.marks[4]; l < fg.t; ++l) {
        FpMatrix x = nz.Vp * fg.b_block(l) * nz.Rp.transpose();
        xs.push_back(x);
        xts.push_back(x.transpose());
    }
    const Prime p = fg.p;
    std::optional<std::pair<FpMatrix, FpMatrix>> eqv;
    if (xs.empty() || xs[0].rows() == 0)
        eqv = std::make_pair(FpMatrix::identity(p, nz.Vp.rows()), FpMatrix::identity(p, nz.Vp.rows()));
    else
        eqv = tuple_equivalence(xs, xts, opts);
    if (!eqv) return res;
    res.equivalent = true;
    const std::size_t n3 = 3 + fg.n, q = nz.q, r = n3 - q;
    FpMatrix pm = -eqv->first, qm = eqv->second;
    FpMatrix qq = vstack(nz.Qp, nz.Vp), ww = vstack(nz.Wp, nz.Rp);
    FpMatrix top = invert(nz.J) * block_diag(FpMatrix::identity(p, q), pm) * qq;
    FpMatrix bot = invert(nz.K) * block_diag(FpMatrix::identity(p, fg.mp - r), qm.transpose()) * ww;
    FpMatrix s0 = block_diag(top, bot);
    if (is_tuple_isometry(s0, fg.mats, fh.mats)) res.s_block = s0;
    return res;
}

SemicDecision semic_isometry(const SemiCanonicalForm& g, const SemiCanonicalForm& h, const TupleOptions& opts) {
    SemicDecision out;
    if (!(g.params == h.params) || g.tensor.m() != h.tensor.m() || g.tensor.n() != h.tensor.n()) {
        out.path = SemicPath::ParamsDiffer;
        return out;
    }
    FFTuple fg = build_ff(g), fh = build_ff(h);
    auto s = skew_tuple_isometry(fg.mats, fh.mats, opts, &out.stats);
    if (!s) {
        out.path = SemicPath::NoTupleIsometry;
        return out;
    }
    out.s = *s;
    const std::size_t n3 = 3 + fg.n;
    if (auto rep = repair_block_diagonal(*s, fg, fh)) {
        out.isometric = true;
        out.path = SemicPath::Repaired;
        out.s_block = *rep;
    } else {
        auto res = resolve_normalized(*s, fg, fh, opts);
        if (!res.equivalent) {
            out.path = SemicPath::NoEquivalence;
            return out;
        }
        out.isometric = true;
        out.path = SemicPath::Normalized;
        out.s_block = res.s_block;
    }
    if (!out.s_block) out.s_block = block_diagonal_search(fg, fh, opts, nullptr);
    if (out.s_block) {
        if (auto w = extract_witness(*out.s_block, g, h)) {
            out.N = w->first;
            out.M = w->second;
        }
    }
    return out;
}

}  // namespace pgiso
