#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pgiso {

// Multiplication table with 0-based element indices; element 0 is the identity.
class CayleyTable {
public:
    CayleyTable() = default;
    // Validates the group axioms; throws NotAGroup naming the failed axiom.
    CayleyTable(std::size_t order, std::vector<std::uint32_t> mul);

    std::size_t order() const { return order_; }
    std::uint32_t identity() const { return 0; }
    std::uint32_t operator()(std::uint32_t a, std::uint32_t b) const { return mul_[a * order_ + b]; }
    std::uint32_t inverse(std::uint32_t a) const { return inv_[a]; }
    std::uint32_t power(std::uint32_t a, std::uint64_t e) const;
    std::uint64_t element_order(std::uint32_t a) const;
    std::uint32_t commutator(std::uint32_t a, std::uint32_t b) const;
    bool is_abelian() const;
    const std::vector<std::uint32_t>& table() const { return mul_; }

    // Same group with elements renamed by perm (old index i becomes perm[i]); perm[0] must be 0.
    CayleyTable relabeled(const std::vector<std::uint32_t>& perm) const;

    friend bool operator==(const CayleyTable& a, const CayleyTable& b) {
        return a.order_ == b.order_ && a.mul_ == b.mul_;
    }

private:
    std::size_t order_ = 0;
    std::vector<std::uint32_t> mul_, inv_;
};

// Orders up to 512 check every triple; larger tables use Light's test on a generating set.
void check_associative(std::size_t order, const std::vector<std::uint32_t>& mul);

// "order" then order rows of 1-based indices.
CayleyTable parse_cayley(const std::string& text);
std::string write_cayley(const CayleyTable& g);

// Greedy generating set: the first element (by index) outside the subgroup so far.
std::vector<std::uint32_t> generating_set(const CayleyTable& g);
// Subgroup generated by gens, sorted.
std::vector<std::uint32_t> subgroup_closure(const CayleyTable& g, const std::vector<std::uint32_t>& gens);

}  // namespace pgiso
