#pragma once

#include <cstdint>
#include <vector>

#include "pgiso/cayley.hpp"
#include "pgiso/isometry.hpp"

namespace pgiso {

struct PGroupData {
    Prime p;
    std::size_t k = 0;  // order = p^k
    std::vector<std::uint32_t> center, commutator_subgroup;  // sorted element lists
    std::vector<std::uint32_t> coset_reps;                    // basis of G/Z(G)
    std::vector<std::uint32_t> commutator_basis;              // basis of [G,G]
    std::size_t n = 0, m = 0;
    SkewTensor tensor;  // X_l[i][j] = l-th coordinate of [coset_reps[i], coset_reps[j]]
};

PGroupData verify_class2_exp_p(const CayleyTable& g);

struct GroupBuildOptions {
    bool allow_radical = false;  // permit a tensor radical (center larger than F_p^m)
    std::uint64_t max_order = 2187;
};

// Product (u, w)(u', w') = (u + u', w + w' + b(u, u')/2) on F_p^n x F_p^m.
// Element index: u digits first (most significant), then w.
CayleyTable group_from_tensor(const SkewTensor& g, const GroupBuildOptions& opts = {});
std::uint32_t encode_element(const std::vector<std::uint32_t>& u, const std::vector<std::uint32_t>& w, std::uint32_t p);

enum class GroupBranch { Auto, Oracle, Pipeline };

struct GroupIsoConfig {
    GroupBranch branch = GroupBranch::Auto;
    IsometryConfig iso;
    std::uint64_t oracle_budget = 50'000'000;
};

struct GroupIsoResult {
    Verdict verdict = Verdict::Inconclusive;
    bool used_oracle = false;
    std::string reason;
    IsometryResult tensor;  // pipeline branch only
};

GroupIsoResult group_isomorphism(const CayleyTable& g, const CayleyTable& h, const GroupIsoConfig& cfg = {});

}  // namespace pgiso
