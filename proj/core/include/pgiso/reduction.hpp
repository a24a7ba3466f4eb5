#pragma once

#include <array>
#include <optional>
#include <string>

#include "pgiso/semic.hpp"
#include "pgiso/tuple_algebra.hpp"

namespace pgiso {

// Skew tuple of dimension 3+n+m' encoding the surface of a semi-canonical form.
struct FFTuple {
    Prime p;
    std::size_t n = 0, mp = 0;
    FormParams params;
    MatrixTuple mats;
    std::array<std::size_t, 7> marks{};  // t1..t7
    std::size_t t = 0;

    std::size_t dim() const { return 3 + n + mp; }
    FpMatrix a_block(std::size_t l) const { return mats[l].block(0, 0, 3 + n, 3 + n); }
    FpMatrix b_block(std::size_t l) const { return mats[l].block(0, 3 + n, 3 + n, mp); }
};

FFTuple build_ff(const SemiCanonicalForm& sc);
// Empty when all structural properties hold, else the first failure.
std::string ff_violation(const FFTuple& ff);

enum class FFType { Type1, Type2 };
FFType classify(const FFTuple& ff, std::size_t l);

struct BlockDecomposedS {
    FpMatrix Q, R, V, W;
};
BlockDecomposedS decompose(const FpMatrix& s, std::size_t n3);
FpMatrix reassemble(const BlockDecomposedS& b);

std::optional<FpMatrix> repair_block_diagonal(const FpMatrix& s, const FFTuple& g, const FFTuple& h);

struct Normalized {
    FpMatrix J, K;
    FpMatrix Qp, Rp, Wp, Vp;  // S' = (Qp 0 / 0 Rp / 0 Wp / Vp 0)
    std::size_t q = 0;
    std::size_t rewrites = 0;
    FpMatrix s_prime() const;
};
Normalized normalize_S(const FpMatrix& s, const FFTuple& g, const FFTuple& h);

// Checks the block structure of a witness S: Φ-diagonal entries ±γ with γ² = 1,
// zero top-right of the first three rows, and the bottom-left annihilation.
std::string witness_structure_violation(const FpMatrix& s, const FFTuple& g, const FFTuple& h);
// Indices (0-based) of the set Φ.
std::vector<std::size_t> phi_indices(const FFTuple& ff);

struct NormalizedOutcome {
    bool equivalent = false;          // the lower-block tuples are equivalent
    std::optional<FpMatrix> s_block;  // block-diagonal isometry built from the equivalence, if it verifies
};
// normalize_S followed by the equivalence test on (V'·B_l·R'^T) vs their transposes.
NormalizedOutcome resolve_normalized(const FpMatrix& s, const FFTuple& g, const FFTuple& h, const TupleOptions& opts = {});

enum class SemicPath { ParamsDiffer, NoTupleIsometry, Repaired, Normalized, NoEquivalence };

struct SemicDecision {
    bool isometric = false;
    SemicPath path = SemicPath::ParamsDiffer;
    std::optional<FpMatrix> s;        // witness from the tuple backend
    std::optional<FpMatrix> s_block;  // block-diagonal witness
    // trans_{N,M}(scG) = scH, verified; absent if extraction failed.
    std::optional<FpMatrix> N, M;
    TupleStats stats;
};

SemicDecision semic_isometry(const SemiCanonicalForm& g, const SemiCanonicalForm& h, const TupleOptions& opts = {});

// Recover (N, M) from a block-diagonal FF isometry; nullopt if it does not verify.
std::optional<std::pair<FpMatrix, FpMatrix>> extract_witness(const FpMatrix& s_block, const SemiCanonicalForm& g,
                                                             const SemiCanonicalForm& h);

}  // namespace pgiso
