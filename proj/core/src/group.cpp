#include "pgiso/group.hpp"

#include <algorithm>
#include <cmath>

#include "pgiso/oracle.hpp"

namespace pgiso {

namespace {

std::string el(std::uint32_t a) { return std::to_string(a + 1); }

struct QuotientBasis {
    std::vector<std::uint32_t> basis;
    std::vector<std::vector<std::uint32_t>> coords;  // per element of A; empty outside A
};

// Basis of the elementary abelian quotient A/K with coordinates for every element of A.
QuotientBasis quotient_basis(const CayleyTable& g, const std::vector<std::uint32_t>& a,
                             const std::vector<std::uint32_t>& k, std::uint32_t p) {
    QuotientBasis q;
    q.coords.resize(g.order());
    std::vector<char> in(g.order(), 0);
    std::vector<std::uint32_t> span;
    for (auto x : k) {
        in[x] = 1;
        span.push_back(x);
    }
    for (auto x : a) {
        if (in[x]) continue;
        const std::size_t j = q.basis.size();
        q.basis.push_back(x);
        std::vector<std::uint32_t> grown;
        std::uint32_t be = 0;
        for (std::uint32_t e = 1; e < p; ++e) {
            be = g(be, x);
            for (auto s : span) {
                std::uint32_t y = g(s, be);
                if (in[y]) continue;
                in[y] = 1;
                auto c = q.coords[s];
                c.resize(j + 1, 0);
                c[j] = e;
                q.coords[y] = c;
                grown.push_back(y);
            }
        }
        span.insert(span.end(), grown.begin(), grown.end());
    }
    for (auto x : a) q.coords[x].resize(q.basis.size(), 0);
    return q;
}

}  // namespace

PGroupData verify_class2_exp_p(const CayleyTable& g) {
    const std::size_t order = g.order();
    if (order == 1) throw Error(ErrorCode::NotClass2, "trivial group is abelian");
    std::uint32_t p = 2;
    while (order % p) ++p;
    std::size_t k = 0;
    for (std::size_t r = order; r > 1; r /= p, ++k)
        if (r % p) throw Error(ErrorCode::NotPPower, "order " + std::to_string(order) + " is not a prime power");
    for (std::uint32_t a = 1; a < order; ++a) {
        std::uint64_t o = g.element_order(a);
        if (o != p)
            throw Error(ErrorCode::WrongExponent, "element " + el(a) + " has order " + std::to_string(o));
    }
    std::vector<std::uint32_t> center;
    for (std::uint32_t a = 0; a < order; ++a) {
        bool central = true;
        for (std::uint32_t b = 0; b < order && central; ++b) central = g(a, b) == g(b, a);
        if (central) center.push_back(a);
    }
    if (center.size() == order) throw Error(ErrorCode::NotClass2, "group is abelian");
    std::vector<char> is_central(order, 0);
    for (auto z : center) is_central[z] = 1;
    std::vector<std::uint32_t> comms;
    std::vector<char> seen(order, 0);
    for (std::uint32_t a = 0; a < order; ++a)
        for (std::uint32_t b = 0; b < order; ++b) {
            std::uint32_t c = g.commutator(a, b);
            if (!is_central[c])
                throw Error(ErrorCode::NotClass2, "[" + el(a) + ", " + el(b) + "] = " + el(c) + " is not central");
            if (!seen[c]++) comms.push_back(c);
        }

    PGroupData d;
    d.p = Prime(p);
    d.k = k;
    d.center = center;
    d.commutator_subgroup = subgroup_closure(g, comms);
    std::vector<std::uint32_t> all(order);
    for (std::uint32_t a = 0; a < order; ++a) all[a] = a;
    QuotientBasis gz = quotient_basis(g, all, center, p);
    QuotientBasis cc = quotient_basis(g, d.commutator_subgroup, {0}, p);
    d.coset_reps = gz.basis;
    d.commutator_basis = cc.basis;
    d.n = gz.basis.size();
    d.m = cc.basis.size();
    std::vector<FpMatrix> xs(d.m, FpMatrix(d.p, d.n, d.n));
    for (std::size_t i = 0; i < d.n; ++i)
        for (std::size_t j = 0; j < d.n; ++j) {
            const auto& c = cc.coords[g.commutator(d.coset_reps[i], d.coset_reps[j])];
            for (std::size_t l = 0; l < d.m; ++l) xs[l].at(i, j) = c[l];
        }
    d.tensor = SkewTensor::from_slices(xs);
    return d;
}

std::uint32_t encode_element(const std::vector<std::uint32_t>& u, const std::vector<std::uint32_t>& w, std::uint32_t p) {
    std::uint32_t idx = 0;
    for (auto x : u) idx = idx * p + x;
    for (auto x : w) idx = idx * p + x;
    return idx;
}

CayleyTable group_from_tensor(const SkewTensor& t, const GroupBuildOptions& opts) {
    const std::uint32_t p = t.p();
    const std::size_t n = t.n(), m = t.m();
    if (m == 0 || n == 0) throw Error(ErrorCode::Degenerate, "empty tensor gives an abelian group");
    bool zero = true;
    for (const auto& x : t.x_slices()) zero = zero && x.is_zero();
    if (zero) throw Error(ErrorCode::Degenerate, "b = 0 gives an abelian group");
    if (!t.slices_independent()) throw Error(ErrorCode::Degenerate, "slices are linearly dependent");
    if (!opts.allow_radical && !t.non_degenerate())
        throw Error(ErrorCode::Degenerate, "some nonzero v has v·X_i = 0 for all i");
    const std::uint64_t order = checked_pow(p, n + m, opts.max_order);
    if (order > opts.max_order) throw Error(ErrorCode::CapExceeded, "group order beyond the cap");

    const Prime pr = t.prime();
    const std::uint32_t half = (p + 1) / 2;
    std::vector<std::vector<std::uint32_t>> us(order), ws(order);
    for (std::uint64_t idx = 0; idx < order; ++idx) {
        std::uint64_t r = idx;
        std::vector<std::uint32_t> w(m), u(n);
        for (std::size_t i = m; i-- > 0; r /= p) w[i] = r % p;
        for (std::size_t i = n; i-- > 0; r /= p) u[i] = r % p;
        us[idx] = u;
        ws[idx] = w;
    }
    std::vector<std::uint32_t> mul(order * order);
    std::vector<std::uint32_t> u(n), w(m);
    for (std::uint64_t a = 0; a < order; ++a)
        for (std::uint64_t b = 0; b < order; ++b) {
            for (std::size_t i = 0; i < n; ++i) u[i] = pr.add(us[a][i], us[b][i]);
            for (std::size_t l = 0; l < m; ++l) {
                std::uint32_t bl = 0;
                const FpMatrix& x = t.x_slice(l);
                for (std::size_t i = 0; i < n; ++i) {
                    if (!us[a][i]) continue;
                    for (std::size_t j = 0; j < n; ++j) bl = pr.add(bl, pr.mul(us[a][i], pr.mul(x(i, j), us[b][j])));
                }
                w[l] = pr.add(pr.add(ws[a][l], ws[b][l]), pr.mul(half, bl));
            }
            mul[a * order + b] = encode_element(u, w, p);
        }
    return CayleyTable(order, std::move(mul));
}

GroupIsoResult group_isomorphism(const CayleyTable& g, const CayleyTable& h, const GroupIsoConfig& cfg) {
    GroupIsoResult res;
    if (g.order() != h.order()) {
        res.verdict = Verdict::NotIsometric;
        res.reason = "orders differ";
        return res;
    }
    PGroupData dg = verify_class2_exp_p(g), dh = verify_class2_exp_p(h);
    if (dg.p != dh.p) {
        res.verdict = Verdict::NotIsometric;
        res.reason = "different primes";
        return res;
    }
    bool oracle = cfg.branch == GroupBranch::Oracle;
    if (cfg.branch == GroupBranch::Auto) {
        const double l = std::log2(static_cast<double>(dg.p.value()));
        oracle = static_cast<double>(dg.k) <= l * l * l * l * l;
    }
    if (oracle) {
        res.used_oracle = true;
        try {
            res.verdict = group_isom_bruteforce(g, h, cfg.oracle_budget) ? Verdict::Isometric : Verdict::NotIsometric;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::BudgetExceeded) throw;
            res.reason = e.what();
        }
        return res;
    }
    if (dg.n != dh.n || dg.m != dh.m) {
        res.verdict = Verdict::NotIsometric;
        res.reason = "dimensions of G/Z(G) or [G,G] differ";
        return res;
    }
    res.tensor = tensor_isometry(dg.tensor, dh.tensor, cfg.iso);
    res.verdict = res.tensor.verdict;
    res.reason = res.tensor.reason;
    return res;
}

}  // namespace pgiso
