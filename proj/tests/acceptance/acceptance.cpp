// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>

#include "brute.hpp"
#include "ff_dual.hpp"
#include "pgiso/error.hpp"
#include "pgiso/group.hpp"
#include "pgiso/isometry.hpp"
#include "pgiso/low_rank.hpp"
#include "pgiso/oracle.hpp"
#include "pgiso/rng.hpp"
#include "pgiso/tuple_algebra.hpp"

using namespace pgiso;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

MatrixSpace random_space(Prime p, std::size_t d, std::size_t m, std::size_t n, bool skew, Rng& rng) {
    std::vector<FpMatrix> g;
    for (std::size_t i = 0; i < d; ++i) g.push_back(skew ? random_skew(p, n, rng) : random_matrix(p, m, n, rng));
    return span_from_generators(p, m, n, g);
}

std::optional<SemiCanonicalForm> form_with_ff(const SkewTensor& g, std::uint64_t seed, int* rejected = nullptr) {
    for (std::uint64_t k = 0; k < 16; ++k) {
        TupleRecipe r;
        r.seed = Rng::mix(seed + k);
        r.ls_rows = 1 + k % 2;
        try {
            auto sc = build_semi_canonical_form(g, recipe_tuple(g, r));
            build_ff(sc);
            return sc;
        } catch (const Error& e) {
            if (rejected && e.code() == ErrorCode::InvalidForm) ++*rejected;
        }
    }
    return std::nullopt;
}

std::vector<std::uint32_t> scramble(std::size_t order, std::uint64_t seed) {
    std::vector<std::uint32_t> perm(order);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(seed);
    for (std::size_t i = order - 1; i > 1; --i) std::swap(perm[i], perm[1 + rng.below(i)]);
    return perm;
}

Outcome spaces_vs_oracle() {
    auto t0 = Clock::now();
    Prime p(3);
    int pairs = 0, agree = 0, decided = 0, false_pos = 0, iso_pairs = 0, non_pairs = 0;
    for (int seed = 0; seed < 150; ++seed) {
        Rng rng(seed, 101);
        const std::size_t n = 2 + seed % 2, m = n == 2 ? 1 : 1 + (seed / 2) % 2;
        // A single 3x3 skew form always has a radical.
        auto g = random_tensor(p, m, n, seed, !(n == 3 && m == 1));
        FpMatrix n0 = random_invertible(p, n, rng), m0 = random_invertible(p, m, rng);
        auto h = transform(g, n0, m0);
        IsometryConfig c;
        c.transport = std::make_pair(n0, m0);
        auto r = tensor_isometry(g, h, c);
        const bool oracle = space_isometry_bruteforce(space_of(g), space_of(h)).has_value();
        ++pairs, ++iso_pairs;
        if (r.verdict == Verdict::Inconclusive) continue;
        ++decided;
        if (r.verdict == Verdict::Isometric && !(r.N && verify_witness(g, h, *r.N, *r.M))) ++false_pos;
        agree += (r.verdict == Verdict::Isometric) == oracle;
    }
    for (int seed = 0; seed < 60; ++seed) {
        const std::size_t m = 1 + seed % 2;
        auto g = random_tensor(p, m, 4, seed + 5000);
        std::optional<SkewTensor> h;
        for (std::uint64_t k = 1; k < 200 && !h; ++k) {
            auto cand = random_tensor(p, m, 4, Rng::mix(seed * 1000 + k), m == 2);
            if (!space_isometry_bruteforce(space_of(g), space_of(cand))) h = cand;
        }
        if (!h) continue;
        ++pairs, ++non_pairs;
        auto r = tensor_isometry(g, *h);
        if (r.verdict == Verdict::Inconclusive) continue;
        ++decided;
        if (r.verdict == Verdict::Isometric) ++false_pos;
        agree += r.verdict == Verdict::NotIsometric;
    }
    double secs = seconds_since(t0);
    bool ok = pairs >= 200 && agree == decided && false_pos == 0 && secs < 300;
    return {ok, fmt("%d pairs (%d isometric, %d oracle-certified non-isometric), %d/%d decided agree, "
                    "%d false positives, %.1fs",
                    pairs, iso_pairs, non_pairs, agree, decided, false_pos, secs)};
}

Outcome groups_vs_oracle() {
    auto t0 = Clock::now();
    Prime p(3);
    std::vector<CayleyTable> groups;
    GroupBuildOptions rad;
    rad.allow_radical = true;
    for (int i = 0; i < 11; ++i) {
        auto g = group_from_tensor(random_tensor(p, 1, 2, i));
        groups.push_back(g.relabeled(scramble(g.order(), 300 + i)));
    }
    for (int i = 0; i < 11; ++i) {
        auto g = group_from_tensor(random_tensor(p, 1, 3, i, false), rad);
        groups.push_back(g.relabeled(scramble(g.order(), 400 + i)));
    }
    GroupIsoConfig pipe;
    pipe.branch = GroupBranch::Pipeline;
    int compared = 0, agree = 0;
    for (std::size_t a = 0; a < groups.size(); ++a)
        for (std::size_t b = a; b < groups.size(); ++b) {
            const bool oracle = group_isom_bruteforce(groups[a], groups[b]).has_value();
            auto r = group_isomorphism(groups[a], groups[b], pipe);
            ++compared;
            agree += r.verdict == (oracle ? Verdict::Isometric : Verdict::NotIsometric);
        }
    double secs = seconds_since(t0);
    bool ok = groups.size() >= 20 && agree == compared && secs < 600;
    return {ok, fmt("%zu groups of order 27/81, %d/%d pairs agree with the oracle, %.1fs", groups.size(), agree,
                    compared, secs)};
}

Outcome baer_round_trip() {
    int total = 0, ok = 0;
    GroupBuildOptions opts;
    opts.allow_radical = true;
    opts.max_order = 3125;
    for (std::uint32_t pv : {3u, 5u})
        for (int seed = 0; seed < 30; ++seed) {
            Prime p(pv);
            const std::size_t n = 2 + seed % 2, m = n == 2 ? 1 : 1 + (seed / 2) % 2;
            if (pv == 5 && m == 2 && seed % 4 != 1) continue;
            auto g = random_tensor(p, m, n, seed, m == 2);
            auto data = verify_class2_exp_p(group_from_tensor(g, opts));
            // A radical moves into the center, so compare against the reduced tensor.
            auto reduced = split_radical(g).reduced;
            ++total;
            ok += data.tensor.n() == reduced.n() && data.tensor.m() == reduced.m() &&
                  space_isometry_bruteforce(space_of(reduced), space_of(data.tensor)).has_value();
        }
    return {total >= 50 && ok == total, fmt("%d/%d tensors recovered up to isometry", ok, total)};
}

Outcome kernels_vs_oracle() {
    int total = 0, ok = 0;
    for (std::uint32_t pv : {3u, 5u, 7u}) {
        Prime p(pv);
        for (int trial = 0; trial < 70; ++trial) {
            Rng rng(trial, 700 + pv);
            const std::size_t n = pv == 7 ? 3 + trial % 2 : 3 + trial % 4;
            const std::size_t d = 1 + trial % 4;
            auto lam = AttributeSet(row_basis(random_matrix(p, trial % 3, n, rng)));

            auto gen = random_space(p, d, n - 1 + trial % 3, n, false, rng);
            ok += same_row_space(kernel_general(gen, lam), kernel_bruteforce(gen, lam.vectors, false));
            auto sk = random_space(p, d, n, n, true, rng);
            ok += same_row_space(kernel_skew(sk, lam), kernel_bruteforce(sk, lam.vectors, true));

            FpMatrix l = random_matrix(p, 1 + trial % 2, gen.rows(), rng), r = random_matrix(p, n, 1 + trial % 3, rng);
            std::vector<FpMatrix> hits;
            brute::each_element(gen, [&](const FpMatrix& a) {
                if ((l * a * r).is_zero()) hits.push_back(a);
            });
            ok += zero_subspace(gen, l, r) == span_from_generators(p, gen.rows(), n, hits);
            total += 3;
        }
    }
    return {total >= 500 && ok == total, fmt("%d/%d kernel and zero-subspace instances match", ok, total)};
}

Outcome zero_blocks() {
    int total = 0, ok = 0;
    for (std::uint32_t pv : {3u, 5u}) {
        Prime p(pv);
        for (int trial = 0; trial < 110; ++trial) {
            Rng rng(trial, 900 + pv);
            const bool skew = trial % 2;
            const std::size_t n = 3 + trial % 2, m = skew ? n : 2 + trial % 3;
            auto s = random_space(p, 1 + trial % 3, m, n, skew, rng);
            auto lam = AttributeSet(row_basis(random_matrix(p, 1 + trial % 3, n, rng)));
            auto f = formatting_matrices(s, lam, complementary_matrix(s, lam, skew), skew);
            const std::size_t k = f.kernel_basis.rows(), w = skew ? k : n - lam.size();
            bool good = true;
            brute::each_element(s, [&](const FpMatrix& a) { good = good && (f.P * a * f.Q).block(0, 0, k, w).is_zero(); });
            ++total;
            ok += good;
        }
    }
    return {total >= 200 && ok == total, fmt("%d/%d spaces have exact zero blocks", ok, total)};
}

Outcome kernel_fixedness() {
    int total = 0, ok = 0;
    for (std::uint32_t pv : {3u, 5u})
        for (int seed = 0; seed < 60; ++seed) {
            Prime p(pv);
            const std::size_t n = 3 + seed % 2, m = n == 3 ? 2 : 1 + seed % 2;
            auto g = random_tensor(p, m, n, seed * 11 + pv);
            CharacterizationTuple t = identity_tuple(g);
            for (std::uint64_t k = 0; k < 32; ++k) {
                TupleRecipe r;
                r.seed = Rng::mix(seed + k);
                r.ls_rows = 1 + k % 2;
                try {
                    auto c = recipe_tuple(g, r);
                    if (tuple_valid(g, c)) {
                        t = c;
                        break;
                    }
                } catch (const Error&) {
                }
            }
            SemiCanonicalOptions a, b;
            a.tie_break = b.tie_break = TieBreak::Random;
            a.seed = 2 * seed + 1;
            b.seed = 2 * seed + 2;
            auto fa = build_semi_canonical_form(g, t, a), fb = build_semi_canonical_form(g, t, b);
            ++total;
            ok += fa.params == fb.params && kernels_equal(fa, fb);
        }
    return {total >= 100 && ok == total, fmt("%d/%d randomized build pairs agree on the kernel region", ok, total)};
}

Outcome ff_suite() {
    int built = 0, good = 0, dual_ok = 0, rejected = 0;
    auto check = [&](const SemiCanonicalForm& sc) {
        FFTuple ff;
        try {
            ff = build_ff(sc);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::InvalidForm) throw;
            ++rejected;
            return;
        }
        ++built;
        good += ff_violation(ff).empty();
        auto d = ffdual::dual_ff(sc);
        bool same = d.F.size() == ff.t && d.marks[7] == ff.t;
        for (std::size_t i = 0; same && i < 7; ++i) same = d.marks[i] == ff.marks[i];
        for (std::size_t l = 0; same && l < ff.t; ++l) same = d.F[l] == ff.mats[l];
        dual_ok += same;
    };
    for (std::uint32_t pv : {3u, 5u})
        for (int seed = 0; seed < 50; ++seed) {
            Prime p(pv);
            const std::size_t n = 2 + seed % 3, m = n == 2 ? 1 : 1 + seed % 3;
            auto g = random_tensor(p, m, n, seed * 17 + pv);
            for (std::uint64_t k = 0; k < 2; ++k) {
                TupleRecipe r;
                r.seed = Rng::mix(seed * 2 + k);
                r.ls_rows = 1 + k;
                try {
                    check(build_semi_canonical_form(g, recipe_tuple(g, r)));
                } catch (const Error& e) {
                    if (e.code() == ErrorCode::InvalidForm) ++rejected;
                }
            }
        }
    bool ok = built >= 100 && good == built && dual_ok == built;
    return {ok, fmt("%d tuples built, %d satisfy all five properties, %d match the dual transcription, "
                    "%d forms rejected as InvalidForm",
                    built, good, dual_ok, rejected)};
}

Outcome witness_structure() {
    int total = 0, ok = 0;
    for (std::uint32_t pv : {3u, 5u})
        for (int seed = 0; seed < 70; ++seed) {
            Prime p(pv);
            Rng rng(seed, 1100 + pv);
            const std::size_t n = 2 + seed % 3, m = n == 2 ? 1 : n == 3 ? 2 : 1 + seed % 2;
            auto g = random_tensor(p, m, n, seed + 1200);
            auto sg = form_with_ff(g, seed);
            if (!sg) continue;
            FpMatrix n0 = random_invertible(p, n, rng), m0 = random_invertible(p, m, rng);
            auto h = transform(g, n0, m0);
            auto sh = build_semi_canonical_form(h, derive_image_tuple(g, sg->tuple, n0, m0));
            auto fg = build_ff(*sg), fh = build_ff(sh);
            auto s = skew_tuple_isometry(fg.mats, fh.mats);
            ++total;
            ok += s && witness_structure_violation(*s, fg, fh).empty();
        }
    return {total >= 100 && ok == total, fmt("%d/%d backend witnesses have the restricted structure", ok, total)};
}

Outcome transform_laws() {
    int total = 0, ok = 0;
    for (std::uint32_t pv : {3u, 5u, 7u})
        for (int trial = 0; trial < 180; ++trial) {
            Prime p(pv);
            Rng rng(trial, 1300 + pv);
            const std::size_t n = 2 + trial % 3, m = 1 + trial % 3;
            auto g = random_tensor(p, m, n, rng.next(), false);
            FpMatrix l1 = random_invertible(p, n, rng), l2 = random_invertible(p, n, rng);
            FpMatrix r1 = random_invertible(p, m, rng), r2 = random_invertible(p, m, rng);
            ++total;
            ok += transform(g, FpMatrix::identity(p, n), FpMatrix::identity(p, m)) == g &&
                  transform(g, l1 * l2, r1 * r2) == transform(transform(g, l2, r2), l1, r1);
        }
    return {total >= 500 && ok == total, fmt("%d/%d triples satisfy identity and composition", ok, total)};
}

Outcome individualization() {
    Prime p(3);
    const std::size_t k = 3;
    IndividualizationOptions opts;
    opts.constant = 1.0;
    int verified = 0, built = 0;
    std::size_t t = 0;
    for (int seed = 0; seed < 100; ++seed) {
        // Resample until every nonzero element has rank at least k.
        Rng rng(seed, 1400);
        MatrixSpace s(p, 6, 6);
        for (;;) {
            s = random_space(p, 3, 6, 6, false, rng);
            bool low = s.dim() < 3;
            brute::each_element(s, [&](const FpMatrix& a) { low = low || (!a.is_zero() && rank(a) < k); });
            if (!low) break;
        }
        ++built;
        auto ip = sample_individualization(s, k, seed, opts);
        t = ip.t;
        verified += ip.verified && individualization_holds(s, k, ip.L, ip.R);
    }
    const double rate = verified / double(built);
    return {rate >= 0.5, fmt("success rate %.2f over %d seeds (t = %zu, k = %zu, 6x6 spaces of dim 3)", rate, built, t,
                             k)};
}

Outcome negative_path() {
    Prime p(3);
    int runs = 0, bad = 0, inconclusive = 0;
    FpMatrix j = FpMatrix(p, 2, 2, {0, 1, 2, 0});
    FpMatrix heis2(p, 4, 4), pert(p, 4, 4);
    heis2.set_block(0, 0, j), heis2.set_block(2, 2, j);
    pert.set_block(0, 0, j);
    std::vector<std::pair<SkewTensor, SkewTensor>> pairs = {
        {SkewTensor::from_slices({heis2}), SkewTensor::from_slices({pert})}};
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto g = random_tensor(p, 2, 4, seed + 40);
        for (std::uint64_t k = 1;; ++k) {
            auto h = random_tensor(p, 2, 4, seed + 1000 * k);
            if (rank_profile(g) != rank_profile(h)) {
                pairs.emplace_back(g, h);
                break;
            }
        }
    }
    for (auto& [g, h] : pairs)
        for (std::uint64_t seed = 0; seed < 2; ++seed) {
            IsometryConfig c;
            c.mode = IsoMode::Enumerate;
            c.bounds = Bounds{1, 1, 0, 0};
            c.invariants = false;
            c.seed = seed;
            c.budget = 2000;
            c.semic_budget = 200;
            auto r = tensor_isometry(g, h, c);
            ++runs;
            bad += r.verdict == Verdict::Isometric;
            inconclusive += r.verdict == Verdict::Inconclusive;
        }
    return {bad == 0, fmt("%d enumerate runs, %d Isometric, %d Inconclusive", runs, bad, inconclusive)};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"oracle agreement, spaces", spaces_vs_oracle},
        {"oracle agreement, groups", groups_vs_oracle},
        {"Baer round trip", baer_round_trip},
        {"kernel equivalence", kernels_vs_oracle},
        {"zero-block guarantees", zero_blocks},
        {"kernel-fixedness", kernel_fixedness},
        {"FF structural suite", ff_suite},
        {"witness structure", witness_structure},
        {"transform laws", transform_laws},
        {"individualization sampling", individualization},
        {"negative-path coverage", negative_path},
    };
    int failed = 0, idx = 0;
    for (const auto& [name, run] : criteria) {
        ++idx;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", idx, name, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
