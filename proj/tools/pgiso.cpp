#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgiso/group.hpp"
#include "pgiso/isometry.hpp"
#include "pgiso/oracle.hpp"
#include "pgiso/reduction.hpp"
#include "pgiso/rng.hpp"
#include "pgiso/text_io.hpp"

using namespace pgiso;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { Yes = 0, No = 1, Undecided = 2, Failed = 3, Internal = 4 };

std::string fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json matrix_json(const FpMatrix& a) {
    json rows = json::array();
    for (std::size_t r = 0; r < a.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(a(r, c));
        rows.push_back(row);
    }
    return rows;
}

Bounds parse_bounds(const std::string& s) {
    Bounds b;
    std::size_t* dst[4] = {&b.l1, &b.l2, &b.l3, &b.l4};
    std::stringstream in(s);
    std::string part;
    int i = 0;
    while (std::getline(in, part, ',')) {
        if (i == 4) throw Error(ErrorCode::InvalidArgument, "--bounds takes four values");
        long long v = std::stoll(part);
        if (v <= 0) throw Error(ErrorCode::InvalidArgument, "bounds must be positive");
        *dst[i++] = static_cast<std::size_t>(v);
    }
    if (i != 4) throw Error(ErrorCode::InvalidArgument, "--bounds takes four values");
    return b;
}

struct IsomArgs {
    std::string kind = "tensor", a, b, mode = "guided", bounds, format = "text", transport, witness_out;
    std::uint64_t seed = 0, budget = 50'000;
    bool timings = false, strict = false, no_invariants = false;
};

struct Report {
    Verdict verdict = Verdict::Inconclusive;
    std::string reason;
    std::optional<FpMatrix> n, m;
    json counters = json::object();
};

int exit_for(Verdict v) {
    switch (v) {
        case Verdict::Isometric: return Yes;
        case Verdict::NotIsometric: return No;
        default: return Undecided;
    }
}

SkewTensor load_tensor(const std::string& kind, const std::string& path) {
    std::string text = read_file(path);
    if (kind == "space") return tensor_from_space(parse_space(text));
    return parse_tensor(text);
}

Report run_tensor(const IsomArgs& args, const SkewTensor& g, const SkewTensor& h) {
    Report rep;
    if (g.p() != h.p() || g.m() != h.m() || g.n() != h.n())
        throw Error(ErrorCode::ShapeMismatch, "inputs differ in (p, m, n)");
    if (args.mode == "oracle") {
        auto s = space_isometry_bruteforce(space_of(g), space_of(h), args.budget * 1000);
        if (s) {
            auto m = slice_change(g, h, *s);
            if (!m) throw Error(ErrorCode::ConstructionFailed, "oracle witness does not verify");
            rep.verdict = Verdict::Isometric;
            rep.n = *s;
            rep.m = *m;
        } else {
            rep.verdict = Verdict::NotIsometric;
        }
        return rep;
    }
    IsometryConfig cfg;
    cfg.mode = args.mode == "enumerate" ? IsoMode::Enumerate : IsoMode::Guided;
    cfg.seed = args.seed;
    cfg.budget = args.budget;
    cfg.strict = args.strict;
    cfg.invariants = !args.no_invariants;
    if (!args.bounds.empty()) cfg.bounds = parse_bounds(args.bounds);
    if (!args.transport.empty()) cfg.transport = parse_witness(read_file(args.transport));
    IsometryResult r = tensor_isometry(g, h, cfg);
    rep.verdict = r.verdict;
    rep.reason = r.reason;
    rep.n = r.N;
    rep.m = r.M;
    rep.counters = {{"tuples", r.counters.tuples},
                    {"semic_calls", r.counters.semic_calls},
                    {"gl_candidates", r.counters.gl_candidates},
                    {"retries", r.counters.retries}};
    return rep;
}

Report run_group(const IsomArgs& args, const CayleyTable& g, const CayleyTable& h) {
    Report rep;
    GroupIsoConfig cfg;
    cfg.branch = args.mode == "oracle" ? GroupBranch::Oracle : GroupBranch::Pipeline;
    cfg.iso.mode = args.mode == "enumerate" ? IsoMode::Enumerate : IsoMode::Guided;
    cfg.iso.seed = args.seed;
    cfg.iso.budget = args.budget;
    cfg.iso.strict = args.strict;
    cfg.iso.invariants = !args.no_invariants;
    if (!args.bounds.empty()) cfg.iso.bounds = parse_bounds(args.bounds);
    GroupIsoResult r = group_isomorphism(g, h, cfg);
    rep.verdict = r.verdict;
    rep.reason = r.reason;
    rep.counters = {{"tuples", r.tensor.counters.tuples},
                    {"semic_calls", r.tensor.counters.semic_calls},
                    {"gl_candidates", r.tensor.counters.gl_candidates},
                    {"oracle", r.used_oracle}};
    return rep;
}

int cmd_isom(const IsomArgs& args) {
    auto t0 = std::chrono::steady_clock::now();
    std::string ta = read_file(args.a), tb = read_file(args.b);
    Report rep;
    if (args.kind == "group") {
        rep = run_group(args, parse_cayley(ta), parse_cayley(tb));
    } else {
        SkewTensor g = load_tensor(args.kind, args.a), h = load_tensor(args.kind, args.b);
        rep = run_tensor(args, g, h);
        if (rep.n && !verify_witness(g, h, *rep.n, *rep.m))
            throw Error(ErrorCode::ConstructionFailed, "witness failed re-verification");
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (rep.n && !args.witness_out.empty()) write_file(args.witness_out, write_witness(*rep.n, *rep.m));

    if (args.format == "structured") {
        json out;
        out["decision"] = verdict_name(rep.verdict);
        if (!rep.reason.empty()) out["reason"] = rep.reason;
        if (rep.n) out["witness"] = {{"N", matrix_json(*rep.n)}, {"M", matrix_json(*rep.m)}};
        out["counters"] = rep.counters;
        out["provenance"] = {{"inputs", {fnv1a(ta), fnv1a(tb)}},
                             {"kind", args.kind},
                             {"mode", args.mode},
                             {"seed", args.seed},
                             {"version", kVersion}};
        if (args.timings) out["timings"] = {{"total_seconds", secs}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "decision: " << verdict_name(rep.verdict) << "\n";
        if (!rep.reason.empty()) std::cout << "reason: " << rep.reason << "\n";
        if (rep.n) std::cout << "witness N:\n" << write_matrix(*rep.n) << "witness M:\n" << write_matrix(*rep.m);
        for (auto& [k, v] : rep.counters.items()) std::cout << k << ": " << v.dump() << "\n";
        if (args.timings) std::cout << "seconds: " << secs << "\n";
    }
    return exit_for(rep.verdict);
}

struct GenArgs {
    std::string kind = "tensor", out;
    std::uint32_t p = 3;
    std::size_t n = 2, m = 1;
    std::uint64_t seed = 0, budget = 50'000'000;
    bool non_isometric = false, allow_radical = false;
};

void emit(const std::string& path, const std::string& text) {
    if (path.empty())
        std::cout << text;
    else
        write_file(path, text);
}

int cmd_gen(const GenArgs& args) {
    Prime p(args.p);
    if (args.kind == "tensor") {
        emit(args.out, write_tensor(random_tensor(p, args.m, args.n, args.seed)));
        return Yes;
    }
    if (args.kind == "group") {
        GroupBuildOptions opts;
        opts.allow_radical = args.allow_radical;
        emit(args.out, write_cayley(group_from_tensor(random_tensor(p, args.m, args.n, args.seed, !args.allow_radical), opts)));
        return Yes;
    }
    if (args.out.empty()) throw Error(ErrorCode::InvalidArgument, "gen pair needs --out PREFIX");
    SkewTensor g = random_tensor(p, args.m, args.n, args.seed);
    if (!args.non_isometric) {
        Rng rng(args.seed, 1);
        FpMatrix n = random_invertible(p, args.n, rng), m = random_invertible(p, args.m, rng);
        write_file(args.out + "_a.tensor", write_tensor(g));
        write_file(args.out + "_b.tensor", write_tensor(transform(g, n, m)));
        write_file(args.out + ".witness", write_witness(n, m));
        return Yes;
    }
    auto pg = rank_profile(g);
    for (std::uint64_t k = 1; k <= 64; ++k) {
        SkewTensor h = random_tensor(p, args.m, args.n, Rng::mix(args.seed + k));
        bool certified = pg && rank_profile(h) != pg;
        if (!certified) certified = !space_isometry_bruteforce(space_of(g), space_of(h), args.budget).has_value();
        if (certified) {
            write_file(args.out + "_a.tensor", write_tensor(g));
            write_file(args.out + "_b.tensor", write_tensor(h));
            return Yes;
        }
    }
    throw Error(ErrorCode::BudgetExceeded, "no certified non-isometric partner found for these parameters");
}

int cmd_verify(const std::string& kind, const std::string& a, const std::string& b, const std::string& witness) {
    SkewTensor g = load_tensor(kind, a), h = load_tensor(kind, b);
    auto [n, m] = parse_witness(read_file(witness));
    bool ok = verify_witness(g, h, n, m);
    std::cout << (ok ? "witness verified" : "witness rejected") << "\n";
    return ok ? Yes : No;
}

int cmd_dump_ff(const std::string& path, std::uint64_t seed) {
    SkewTensor g = split_radical(parse_tensor(read_file(path))).reduced;
    TupleRecipe rc;
    rc.seed = seed;
    SemiCanonicalForm sc = build_semi_canonical_form(g, recipe_tuple(g, rc));
    FFTuple ff = build_ff(sc);
    std::cout << write_tuple(ff.mats);
    return Yes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isometry of skew tensors and isomorphism of class-2 exponent-p groups"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    IsomArgs ia;
    auto* isom = app.add_subcommand("isom", "decide whether two inputs are isometric / isomorphic");
    isom->add_option("a", ia.a)->required()->check(CLI::ExistingFile);
    isom->add_option("b", ia.b)->required()->check(CLI::ExistingFile);
    isom->add_option("--kind", ia.kind)->check(CLI::IsMember({"tensor", "space", "group"}));
    isom->add_option("--mode", ia.mode)->check(CLI::IsMember({"guided", "enumerate", "oracle"}));
    isom->add_option("--seed", ia.seed);
    isom->add_option("--bounds", ia.bounds, "l1,l2,l3,l4");
    isom->add_option("--budget", ia.budget);
    isom->add_option("--format", ia.format)->check(CLI::IsMember({"text", "structured"}));
    isom->add_option("--transport", ia.transport, "witness file (N, M) for guided mode")->check(CLI::ExistingFile);
    isom->add_option("--witness-out", ia.witness_out);
    isom->add_flag("--timings", ia.timings);
    isom->add_flag("--strict", ia.strict, "fail when bounds are below the defaults");
    isom->add_flag("--no-invariants", ia.no_invariants);

    GenArgs ga;
    auto* gen = app.add_subcommand("gen", "generate a tensor, a group, or a tensor pair");
    gen->add_option("kind", ga.kind)->check(CLI::IsMember({"tensor", "group", "pair"}));
    gen->add_option("--p", ga.p);
    gen->add_option("--n", ga.n);
    gen->add_option("--m", ga.m);
    gen->add_option("--seed", ga.seed);
    gen->add_option("--budget", ga.budget);
    gen->add_option("--out", ga.out, "output file, or prefix for pairs");
    gen->add_flag("--non-isometric", ga.non_isometric);
    gen->add_flag("--allow-radical", ga.allow_radical);

    std::string vkind = "tensor", va, vb, vw;
    auto* ver = app.add_subcommand("verify", "check a witness file against two inputs");
    ver->add_option("a", va)->required()->check(CLI::ExistingFile);
    ver->add_option("b", vb)->required()->check(CLI::ExistingFile);
    ver->add_option("--verify", vw, "witness file")->required()->check(CLI::ExistingFile);
    ver->add_option("--kind", vkind)->check(CLI::IsMember({"tensor", "space"}));

    std::string dpath;
    std::uint64_t dseed = 0;
    auto* dump = app.add_subcommand("dump-ff", "print the FF tuple of a tensor's semi-canonical form");
    dump->add_option("tensor", dpath)->required()->check(CLI::ExistingFile);
    dump->add_option("--seed", dseed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : Failed;
    }
    try {
        if (*isom) return cmd_isom(ia);
        if (*gen) return cmd_gen(ga);
        if (*ver) return cmd_verify(vkind, va, vb, vw);
        if (*dump) return cmd_dump_ff(dpath, dseed);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Failed;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return Internal;
    }
    return Failed;
}
