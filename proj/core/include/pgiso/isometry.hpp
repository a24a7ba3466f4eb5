#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "pgiso/reduction.hpp"

namespace pgiso {

enum class Verdict { Isometric, NotIsometric, Inconclusive };
const char* verdict_name(Verdict v);

enum class IsoMode { Guided, Enumerate };

// ℓ1: rows of L_skew, ℓ2: rows of L, ℓ3: |Λ|, ℓ4: kernel co-dimension slack.
struct Bounds {
    std::size_t l1 = 1, l2 = 1, l3 = 0, l4 = 0;
    friend bool operator==(const Bounds&, const Bounds&) = default;
};
// ⌈(m+n)·log2 p / n^0.2⌉, ⌈n·log2 p / n^0.2⌉, ⌈n^0.4⌉, ⌈n^0.8⌉
Bounds default_bounds(std::size_t n, std::size_t m, std::uint32_t p);

struct IsometryConfig {
    IsoMode mode = IsoMode::Guided;
    std::uint64_t seed = 0;
    std::optional<Bounds> bounds;  // enumerate mode; defaults from default_bounds
    bool strict = false;           // BoundsTooSmall when bounds are below the defaults
    bool invariants = true;        // radical dimension and rank-profile prefilter
    std::uint64_t budget = 50'000;  // characterization-tuple candidates
    std::uint64_t semic_budget = 2'000;
    std::size_t retries = 8;         // fresh recipe tuples when a build fails
    TupleOptions tuple;
    TupleRecipe recipe;  // seed is overridden by `seed`
    // Guided hints: a transport (N0, M0) with transform(G, N0, M0) = H, or
    // explicit tuples for both sides.
    std::optional<std::pair<FpMatrix, FpMatrix>> transport;
    std::optional<CharacterizationTuple> tuple_g, tuple_h;
};

struct IsometryCounters {
    std::uint64_t tuples = 0;         // characterization tuples built or enumerated
    std::uint64_t semic_calls = 0;
    std::uint64_t gl_candidates = 0;  // tuple-backend candidates
    std::uint64_t retries = 0;
};

struct IsometryResult {
    Verdict verdict = Verdict::Inconclusive;
    std::optional<FpMatrix> N, M;
    IsometryCounters counters;
    std::string reason;
};

IsometryResult tensor_isometry(const SkewTensor& g, const SkewTensor& h, const IsometryConfig& cfg = {});

bool verify_witness(const SkewTensor& g, const SkewTensor& h, const FpMatrix& n, const FpMatrix& m);
// The M with transform(g, n, M) = h, when n carries span(g) onto span(h).
std::optional<FpMatrix> slice_change(const SkewTensor& g, const SkewTensor& h, const FpMatrix& n);

// rank -> number of nonzero elements of the space with that rank; nullopt over budget.
std::optional<std::map<std::size_t, std::uint64_t>> rank_profile(const SkewTensor& g, std::uint64_t budget = 1'000'000);

// Splits off the radical: P·X_i·Pᵀ = diag(X'_i, 0) with P = [complement; radical].
struct RadicalSplit {
    SkewTensor reduced;
    FpMatrix P;
    std::size_t radical_dim = 0;
};
RadicalSplit split_radical(const SkewTensor& g);

}  // namespace pgiso
