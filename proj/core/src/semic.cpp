#include "pgiso/semic.hpp"

#include "pgiso/rng.hpp"

namespace pgiso {

TupleAnalysis analyze_tuple(const SkewTensor& g, const FpMatrix& ls, const FpMatrix& l, const AttributeSet& lambda) {
    if (ls.cols() != g.n() || l.cols() != g.m() || lambda.ambient() != g.n())
        throw Error(ErrorCode::InvalidTuple, "tuple component shapes do not match the tensor");
    TupleAnalysis a;
    FpMatrix lst = ls.transpose();
    a.zero_x = zero_subspace(g.x_space(), ls, lst);
    a.zero_y = zero_subspace(span_from_generators(g.prime(), g.m(), g.n(), g.y_slices()), l, lst);
    a.ker_skew = kernel_skew(a.zero_x, lambda);
    a.ker_general = kernel_general(a.zero_y, lambda);
    return a;
}

std::string tuple_violation(const SkewTensor& g, const CharacterizationTuple& t) {
    if (t.Ls.cols() != g.n()) return "L_skew has the wrong number of columns";
    if (t.L.cols() != g.m()) return "L has the wrong number of columns";
    if (t.lambda.ambient() != g.n()) return "attribute set lives in the wrong ambient space";
    if (t.Cs.cols() != g.n() || t.C.cols() != g.m()) return "complementary matrix width";
    auto a = analyze_tuple(g, t.Ls, t.L, t.lambda);
    if (!is_complementary_for(a.ker_skew, t.lambda, t.Cs, true)) return "C_skew is not complementary";
    if (!is_complementary_for(a.ker_general, t.lambda, t.C, false)) return "C is not complementary";
    return {};
}

bool tuple_valid(const SkewTensor& g, const CharacterizationTuple& t) { return tuple_violation(g, t).empty(); }

CharacterizationTuple make_tuple(const SkewTensor& g, const FpMatrix& ls, const FpMatrix& l, const AttributeSet& lambda) {
    auto a = analyze_tuple(g, ls, l, lambda);
    CharacterizationTuple t{ls, l, lambda, complementary_matrix(a.zero_x, lambda, true),
                            complementary_matrix(a.zero_y, lambda, false)};
    return t;
}

CharacterizationTuple identity_tuple(const SkewTensor& g) {
    return make_tuple(g, FpMatrix::identity(g.prime(), g.n()), FpMatrix::identity(g.prime(), g.m()),
                      AttributeSet::empty(g.prime(), g.n()));
}

CharacterizationTuple recipe_tuple(const SkewTensor& g, const TupleRecipe& recipe) {
    Rng rng(recipe.seed, 0x7u);
    const Prime p = g.prime();
    FpMatrix ls = random_matrix(p, recipe.ls_rows, g.n(), rng);
    FpMatrix l = random_matrix(p, recipe.l_rows, g.m(), rng);
    AttributeSet lambda = AttributeSet::empty(p, g.n());
    if (recipe.attribute_search) {
        auto a = analyze_tuple(g, ls, l, lambda);
        AttributeSearchOptions o;
        o.seed = recipe.seed;
        o.skew = true;
        FpMatrix gen = find_attribute_set(a.zero_x, o).lambda.vectors;
        o.skew = false;
        gen = vstack(gen, find_attribute_set(a.zero_y, o).lambda.vectors);
        lambda = AttributeSet(row_basis(gen));
    }
    return make_tuple(g, ls, l, lambda);
}

CharacterizationTuple derive_image_tuple(const CharacterizationTuple& t, const FpMatrix& n0, const FpMatrix& m0) {
    FpMatrix ni = invert(n0), mi = invert(m0);
    CharacterizationTuple out;
    out.Ls = t.Ls * ni;
    out.L = t.L * mi;
    out.lambda = AttributeSet(t.lambda.vectors * n0.transpose());
    out.Cs = t.Cs * ni;
    out.C = t.C * mi;
    return out;
}

CharacterizationTuple derive_image_tuple(const SkewTensor& g, const CharacterizationTuple& t, const FpMatrix& n0,
                                         const FpMatrix& m0) {
    CharacterizationTuple out = derive_image_tuple(t, n0, m0);
    std::string why = tuple_violation(transform(g, n0, m0), out);
    if (!why.empty()) throw Error(ErrorCode::InvalidTuple, "transported tuple invalid: " + why);
    return out;
}

bool kernel_pattern_holds(const SkewTensor& sc, const FormParams& q) {
    const std::size_t mp = q.m_prime(), np = q.n_prime();
    for (std::size_t i = 0; i < mp; ++i)
        for (std::size_t j = 0; j < np; ++j)
            for (std::size_t k = 0; k < np; ++k) {
                bool must_vanish = i < q.ax || j < q.ay || k < q.ay;
                if (must_vanish && sc(i, j, k) != 0) return false;
            }
    return true;
}

bool kernels_equal(const SemiCanonicalForm& a, const SemiCanonicalForm& b) {
    if (!(a.params == b.params)) return false;
    const std::size_t mp = a.params.m_prime(), np = a.params.n_prime();
    for (std::size_t i = 0; i < mp; ++i)
        for (std::size_t j = 0; j < np; ++j)
            for (std::size_t k = 0; k < np; ++k)
                if (a.tensor(i, j, k) != b.tensor(i, j, k)) return false;
    return true;
}

namespace {

std::vector<FpMatrix> combos(const std::vector<FpMatrix>& slices, const FpMatrix& coeffs) {
    std::vector<FpMatrix> out;
    for (std::size_t r = 0; r < coeffs.rows(); ++r) {
        FpMatrix acc(slices[0].prime(), slices[0].rows(), slices[0].cols());
        for (std::size_t j = 0; j < slices.size(); ++j) acc.add_scaled(slices[j], coeffs(r, j));
        out.push_back(acc);
    }
    return out;
}

FpMatrix coefficient_rows(const MatrixSpace& space, const std::vector<FpMatrix>& mats) {
    FpMatrix out(space.prime(), mats.size(), space.dim());
    for (std::size_t r = 0; r < mats.size(); ++r) {
        auto c = space.coords(mats[r]);
        for (std::size_t j = 0; j < c.size(); ++j) out.at(r, j) = c[j];
    }
    return out;
}

}  // namespace

SemiCanonicalForm build_semi_canonical_form(const SkewTensor& g, const CharacterizationTuple& t,
                                            const SemiCanonicalOptions& opts) {
    std::string why = tuple_violation(g, t);
    if (!why.empty()) throw Error(ErrorCode::InvalidTuple, why);
    if (!g.non_degenerate()) throw Error(ErrorCode::Degenerate, "semi-canonical forms need a non-degenerate tensor");
    const Prime p = g.prime();
    auto a = analyze_tuple(g, t.Ls, t.L, t.lambda);
    FpMatrix lst = t.Ls.transpose();

    // X_{G,ker}: slices combined along ker(zero_y, Λ).
    std::vector<FpMatrix> xk = combos(g.x_slices(), a.ker_general);
    MatrixSpace xks = MatrixSpace::from_basis(p, g.n(), g.n(), xk);
    SemiCanonicalOptions ox = opts;
    ox.seed = Rng::mix(opts.seed ^ 0x11);
    std::vector<FpMatrix> scx = semi_canonical_basis(xks, t.Ls, lst, ox);

    // Y_{G,ker_skew}: slices combined along ker_skew(zero_x, Λ).
    std::vector<FpMatrix> ys = g.y_slices();
    std::vector<FpMatrix> yk = combos(ys, a.ker_skew);
    MatrixSpace yks;
    try {
        yks = MatrixSpace::from_basis(p, g.m(), g.n(), yk);
    } catch (const Error&) {
        throw Error(ErrorCode::Degenerate, "Y-slices are dependent");
    }
    SemiCanonicalOptions oy = opts;
    oy.seed = Rng::mix(opts.seed ^ 0x22);
    std::vector<FpMatrix> scy = semi_canonical_basis(yks, t.L, lst, oy);

    SemiCanonicalForm sc;
    sc.tuple = t;
    sc.params.ax = zero_subspace(xks, t.Ls, lst).dim();
    sc.params.bx = xks.dim() - sc.params.ax;
    sc.params.ay = zero_subspace(yks, t.L, lst).dim();
    sc.params.by = yks.dim() - sc.params.ay;

    sc.M = vstack(coefficient_rows(g.x_space(), scx), t.C);
    sc.N = vstack(coefficient_rows(g.y_space(), scy), t.Cs);
    if (!is_invertible(sc.M) || !is_invertible(sc.N))
        throw Error(ErrorCode::ConstructionFailed, "stacked N or M rows are not invertible");
    sc.tensor = transform(g, sc.N, sc.M);
    if (!kernel_pattern_holds(sc.tensor, sc.params))
        throw Error(ErrorCode::ConstructionFailed, "kernel zero-pattern violated");
    return sc;
}

}  // namespace pgiso
