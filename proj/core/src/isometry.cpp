#include "pgiso/isometry.hpp"

#include <algorithm>
#include <cmath>

#include "pgiso/rng.hpp"

namespace pgiso {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Isometric: return "isometric";
        case Verdict::NotIsometric: return "not-isometric";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

Bounds default_bounds(std::size_t n, std::size_t m, std::uint32_t p) {
    const double lp = std::log2(static_cast<double>(p)), s = std::pow(static_cast<double>(n), 0.2);
    Bounds b;
    b.l1 = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((m + n) * lp / s - 1e-9)));
    b.l2 = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(n * lp / s - 1e-9)));
    b.l3 = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), 0.4) - 1e-9));
    b.l4 = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), 0.8) - 1e-9));
    return b;
}

bool verify_witness(const SkewTensor& g, const SkewTensor& h, const FpMatrix& n, const FpMatrix& m) {
    if (g.m() != h.m() || g.n() != h.n() || n.rows() != g.n() || n.cols() != g.n() || m.rows() != g.m() ||
        m.cols() != g.m())
        return false;
    if (!is_invertible(n) || !is_invertible(m)) return false;
    return transform(g, n, m) == h;
}

std::optional<FpMatrix> slice_change(const SkewTensor& g, const SkewTensor& h, const FpMatrix& n) {
    if (g.m() != h.m() || g.n() != h.n()) return std::nullopt;
    const Prime p = g.prime();
    FpMatrix ys(p, 0, g.n() * g.n());
    for (const auto& y : h.x_slices()) ys = vstack(ys, y.vectorize());
    FpMatrix c(p, g.m(), g.m()), nt = n.transpose();
    for (std::size_t k = 0; k < g.m(); ++k) {
        FpMatrix coeff;
        if (!solve_left(ys, (n * g.x_slice(k) * nt).vectorize(), coeff)) return std::nullopt;
        c.set_block(k, 0, coeff);
    }
    if (!is_invertible(c)) return std::nullopt;
    FpMatrix m = invert(c);
    if (!verify_witness(g, h, n, m)) return std::nullopt;
    return m;
}

std::optional<std::map<std::size_t, std::uint64_t>> rank_profile(const SkewTensor& g, std::uint64_t budget) {
    if (checked_pow(g.p(), g.m(), budget) > budget) return std::nullopt;
    std::map<std::size_t, std::uint64_t> prof;
    std::vector<std::uint32_t> c(g.m(), 0);
    while (next_vector(c, g.p())) {
        FpMatrix a(g.prime(), g.n(), g.n());
        for (std::size_t i = 0; i < g.m(); ++i) a.add_scaled(g.x_slice(i), c[i]);
        ++prof[rank(a)];
    }
    return prof;
}

RadicalSplit split_radical(const SkewTensor& g) {
    RadicalSplit out;
    FpMatrix rad = g.radical();
    out.radical_dim = rad.rows();
    out.P = vstack(canonical_completion(rad, g.n()), rad);
    const std::size_t k = g.n() - rad.rows();
    FpMatrix pt = out.P.transpose();
    std::vector<FpMatrix> xs;
    for (const auto& x : g.x_slices()) xs.push_back((out.P * x * pt).block(0, 0, k, k));
    out.reduced = SkewTensor::from_slices(xs);
    return out;
}

namespace {

bool recoverable(const Error& e) {
    switch (e.code()) {
        case ErrorCode::InvalidForm:
        case ErrorCode::ConstructionFailed:
        case ErrorCode::Degenerate:
        case ErrorCode::InvalidTuple:
        case ErrorCode::CapExceeded:
        case ErrorCode::BudgetExceeded:
        case ErrorCode::Infeasible:
        case ErrorCode::Singular:
            return true;
        default:
            return false;
    }
}

using Witness = std::pair<FpMatrix, FpMatrix>;

struct Search {
    struct BudgetStop {};
    const IsometryConfig& cfg;
    IsometryCounters& ctr;
    std::string note;

    // semic(h, th) against a prepared form of g; witness on (g, h) when verified.
    std::optional<Witness> attempt(const SemiCanonicalForm& sg, const SkewTensor& g, const SkewTensor& h,
                                   const CharacterizationTuple& th) {
        SemiCanonicalForm sh;
        try {
            sh = build_semi_canonical_form(h, th);
        } catch (const Error& e) {
            if (!recoverable(e)) throw;
            return std::nullopt;
        }
        if (++ctr.semic_calls > cfg.semic_budget) throw BudgetStop{};
        SemicDecision d;
        try {
            d = semic_isometry(sg, sh, cfg.tuple);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::InvalidForm) throw;
            return std::nullopt;
        }
        ctr.gl_candidates += d.stats.candidates;
        if (!d.isometric) return std::nullopt;
        if (!d.N) {
            note = "forms decided isometric but no witness could be extracted";
            return std::nullopt;
        }
        FpMatrix n = invert(sh.N) * *d.N * sg.N, m = invert(sh.M) * *d.M * sg.M;
        if (!verify_witness(g, h, n, m)) {
            note = "composed witness failed verification";
            return std::nullopt;
        }
        return std::make_pair(n, m);
    }

    // All (k×n) RREF matrices of rank k.
    static std::vector<FpMatrix> subspaces(Prime p, std::size_t k, std::size_t n) {
        std::vector<FpMatrix> out;
        if (k == 0) {
            out.emplace_back(p, 0, n);
            return out;
        }
        std::vector<std::uint32_t> c(k * n, 0);
        while (next_vector(c, p.value())) {
            FpMatrix a(p, k, n);
            for (std::size_t i = 0; i < k * n; ++i) a.at(i / n, i % n) = c[i];
            auto r = rref_rank(a);
            if (r.rank == k && r.reduced == a) out.push_back(a);
        }
        return out;
    }

    static FpMatrix from_digits(Prime p, const std::vector<std::uint32_t>& c, std::size_t off, std::size_t rows,
                                std::size_t cols) {
        FpMatrix a(p, rows, cols);
        for (std::size_t i = 0; i < rows * cols; ++i) a.at(i / cols, i % cols) = c[off + i];
        return a;
    }

    // Calls visit(Ls, L, Λ) over every (rows_ls×n, rows_l×m, k-subspace) in
    // lexical order; stops when visit returns true. False on budget exhaustion.
    template <class Visit>
    bool for_each_prefix(Prime p, std::size_t n, std::size_t m, std::size_t rows_ls, std::size_t rows_l,
                         std::size_t k, Visit&& visit, bool& stopped) {
        auto subs = subspaces(p, k, n);
        const std::size_t len = rows_ls * n + rows_l * m;
        std::vector<std::uint32_t> c(len, 0);
        bool first = true;
        stopped = false;
        while (first || next_vector(c, p.value())) {
            first = false;
            FpMatrix ls = from_digits(p, c, 0, rows_ls, n), l = from_digits(p, c, rows_ls * n, rows_l, m);
            for (const auto& lam : subs) {
                if (++ctr.tuples > cfg.budget) return false;
                if (visit(ls, l, AttributeSet(lam))) {
                    stopped = true;
                    return true;
                }
            }
            if (len == 0) break;
        }
        return true;
    }

    // Every valid complement with `rows` rows for (kernel, Λ).
    template <class Visit>
    bool for_each_complement(Prime p, std::size_t rows, std::size_t n, const FpMatrix& kernel,
                             const AttributeSet& lam, bool skew, Visit&& visit, bool& stopped) {
        std::vector<std::uint32_t> c(rows * n, 0);
        bool first = true;
        stopped = false;
        while (first || next_vector(c, p.value())) {
            first = false;
            if (++ctr.tuples > cfg.budget) return false;
            FpMatrix cm = from_digits(p, c, 0, rows, n);
            if (!is_complementary_for(kernel, lam, cm, skew)) {
                if (rows * n == 0) break;
                continue;
            }
            if (visit(cm)) {
                stopped = true;
                return true;
            }
            if (rows * n == 0) break;
        }
        return true;
    }

    struct Outcome {
        std::optional<Witness> witness;
        bool complete = false;
    };

    // Fixes tG and searches every tuple of the same shapes for h. When G ≅ H the
    // image of tG is among them, so a complete search without a hit is a no.
    Outcome search_images(const SkewTensor& g, const SkewTensor& h, const SemiCanonicalForm& sg,
                          const CharacterizationTuple& tg) {
        const Prime p = g.prime();
        const std::size_t n = g.n(), m = g.m();
        auto ag = analyze_tuple(g, tg.Ls, tg.L, tg.lambda);
        const std::size_t rk_ls = rank(tg.Ls), rk_l = rank(tg.L);
        Outcome out;
        bool stopped = false;
        bool within = for_each_prefix(
            p, n, m, tg.Ls.rows(), tg.L.rows(), tg.lambda.size(),
            [&](const FpMatrix& ls, const FpMatrix& l, const AttributeSet& lam) {
                if (rank(ls) != rk_ls || rank(l) != rk_l) return false;
                TupleAnalysis ah = analyze_tuple(h, ls, l, lam);
                if (ah.ker_skew.rows() != ag.ker_skew.rows() || ah.ker_general.rows() != ag.ker_general.rows() ||
                    ah.zero_x.dim() != ag.zero_x.dim() || ah.zero_y.dim() != ag.zero_y.dim())
                    return false;
                try {
                    SemiCanonicalForm probe = build_semi_canonical_form(h, make_tuple(h, ls, l, lam));
                    if (!kernels_equal(probe, sg)) return false;
                } catch (const Error& e) {
                    if (!recoverable(e)) throw;
                    return false;
                }
                bool inner_stop = false, ok = true;
                bool done = for_each_complement(
                    p, tg.Cs.rows(), n, ah.ker_skew, lam, true,
                    [&](const FpMatrix& cs) {
                        bool stop2 = false;
                        bool ok2 = for_each_complement(
                            p, tg.C.rows(), m, ah.ker_general, lam, false,
                            [&](const FpMatrix& c) {
                                out.witness = attempt(sg, g, h, CharacterizationTuple{ls, l, lam, cs, c});
                                return out.witness.has_value();
                            },
                            stop2);
                        if (!ok2) ok = false;
                        return stop2 || !ok2;
                    },
                    inner_stop);
                if (!done) ok = false;
                if (!ok) throw BudgetStop{};
                return out.witness.has_value();
            },
            stopped);
        (void)within;
        out.complete = within && !out.witness;
        return out;
    }

};

}  // namespace

IsometryResult tensor_isometry(const SkewTensor& g, const SkewTensor& h, const IsometryConfig& cfg) {
    if (g.p() != h.p() || g.m() != h.m() || g.n() != h.n())
        throw Error(ErrorCode::ShapeMismatch, "tensors differ in (p, m, n)");
    IsometryResult res;
    Search search{cfg, res.counters, {}};

    RadicalSplit rg = split_radical(g), rh = split_radical(h);
    if (rg.radical_dim != rh.radical_dim) {
        res.verdict = Verdict::NotIsometric;
        res.reason = "radical dimensions differ";
        return res;
    }
    if (cfg.invariants) {
        auto pg = rank_profile(g), ph = rank_profile(h);
        if (pg && ph && *pg != *ph) {
            res.verdict = Verdict::NotIsometric;
            res.reason = "rank profiles differ";
            return res;
        }
    }
    const SkewTensor& g2 = rg.reduced;
    const SkewTensor& h2 = rh.reduced;
    const Prime p = g.prime();
    const std::size_t r = rg.radical_dim;

    auto lift = [&](const Witness& w) {
        FpMatrix n = invert(rh.P) * block_diag(w.first, FpMatrix::identity(p, r)) * rg.P;
        if (!verify_witness(g, h, n, w.second)) throw Error(ErrorCode::ConstructionFailed, "lifted witness does not verify");
        res.verdict = Verdict::Isometric;
        res.N = n;
        res.M = w.second;
    };

    try {
        if (cfg.mode == IsoMode::Guided) {
            std::optional<Witness> transport;
            if (cfg.transport && verify_witness(g, h, cfg.transport->first, cfg.transport->second)) {
                FpMatrix z = rh.P * cfg.transport->first * invert(rg.P);
                transport = std::make_pair(z.block(0, 0, g2.n(), g2.n()), cfg.transport->second);
            } else if (g == h) {
                transport = std::make_pair(FpMatrix::identity(p, g2.n()), FpMatrix::identity(p, g2.m()));
            }
            for (std::size_t k = 0; k <= cfg.retries; ++k) {
                CharacterizationTuple tg;
                SemiCanonicalForm sg;
                try {
                    if (k == 0 && cfg.tuple_g) {
                        tg = *cfg.tuple_g;
                    } else {
                        TupleRecipe rc = cfg.recipe;
                        rc.seed = k == 0 ? cfg.seed : Rng::mix(cfg.seed + k);
                        tg = recipe_tuple(g2, rc);
                    }
                    sg = build_semi_canonical_form(g2, tg);
                    build_ff(sg);
                } catch (const Error& e) {
                    if (!recoverable(e)) throw;
                    ++res.counters.retries;
                    continue;
                }
                ++res.counters.tuples;
                if (transport) {
                    CharacterizationTuple th = derive_image_tuple(g2, tg, transport->first, transport->second);
                    if (auto w = search.attempt(sg, g2, h2, th)) {
                        lift(*w);
                        return res;
                    }
                    res.reason = "pipeline did not confirm a verified transport";
                    if (!search.note.empty()) res.reason += ": " + search.note;
                    return res;
                }
                if (k == 0 && cfg.tuple_h) {
                    if (auto w = search.attempt(sg, g2, h2, *cfg.tuple_h)) {
                        lift(*w);
                        return res;
                    }
                    res.reason = "supplied tuple pair gave no witness";
                    return res;
                }
                auto o = search.search_images(g2, h2, sg, tg);
                if (o.witness) {
                    lift(*o.witness);
                } else if (o.complete) {
                    res.verdict = Verdict::NotIsometric;
                    res.reason = "every image tuple searched";
                } else {
                    res.reason = "tuple budget exhausted";
                }
                return res;
            }
            res.reason = "no usable characterization tuple for G";
            return res;
        }

        Bounds def = default_bounds(g.n(), g.m(), g.p());
        Bounds b = cfg.bounds.value_or(def);
        if (cfg.strict && (b.l1 < def.l1 || b.l2 < def.l2 || b.l3 < def.l3 || b.l4 < def.l4))
            throw Error(ErrorCode::BoundsTooSmall, "bounds below the default sizes in strict mode");
        const std::size_t n2 = g2.n(), m2 = g2.m();
        const std::size_t k = std::min(b.l3, n2);
        std::optional<CharacterizationTuple> tg;
        SemiCanonicalForm sg;
        bool stopped = false;
        search.for_each_prefix(
            p, n2, m2, b.l1, b.l2, k,
            [&](const FpMatrix& ls, const FpMatrix& l, const AttributeSet& lam) {
                try {
                    auto a = analyze_tuple(g2, ls, l, lam);
                    if (a.ker_skew.rows() + b.l4 < n2 || a.ker_general.rows() + b.l4 < m2) return false;
                    CharacterizationTuple t = make_tuple(g2, ls, l, lam);
                    sg = build_semi_canonical_form(g2, t);
                    build_ff(sg);
                    tg = t;
                    return true;
                } catch (const Error& e) {
                    if (!recoverable(e)) throw;
                    return false;
                }
            },
            stopped);
        if (!tg) {
            res.reason = "no characterization tuple for G within bounds";
            return res;
        }
        auto o = search.search_images(g2, h2, sg, *tg);
        if (o.witness) {
            lift(*o.witness);
        } else if (o.complete) {
            res.verdict = Verdict::NotIsometric;
            res.reason = "every image tuple searched";
        } else {
            res.reason = "tuple budget exhausted";
        }
        return res;
    } catch (const Search::BudgetStop&) {
        res.verdict = Verdict::Inconclusive;
        res.reason = "tuple budget exhausted";
        return res;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        res.verdict = Verdict::Inconclusive;
        res.reason = e.what();
        return res;
    }
}

}  // namespace pgiso
