#pragma once

#include <cstdint>
#include <optional>

#include "pgiso/cayley.hpp"
#include "pgiso/fp_matrix.hpp"
#include "pgiso/matrix_space.hpp"

namespace pgiso {

// S with span{S·A_i·Sᵀ} = B, searched over GL(n) row by row.
std::optional<FpMatrix> space_isometry_bruteforce(const MatrixSpace& a, const MatrixSpace& b,
                                                  std::uint64_t budget = 50'000'000);

// Tries every image of a greedy generating set; extensions are propagated along
// the Cayley graph and rejected at the first inconsistent edge.
std::optional<std::vector<std::uint32_t>> group_isom_bruteforce(const CayleyTable& g, const CayleyTable& h,
                                                                std::uint64_t budget = 50'000'000);

// Span of all v with <v·A> inside <Λ> (and v orthogonal to Λ when skew), by enumeration.
// Λ is given as a matrix with one vector per row. Returns the RREF basis.
FpMatrix kernel_bruteforce(const MatrixSpace& s, const FpMatrix& lambda, bool skew, std::uint64_t budget = 10'000'000);

}  // namespace pgiso
