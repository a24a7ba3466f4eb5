#include "pgiso/cayley.hpp"

#include <algorithm>
#include <sstream>

#include "pgiso/error.hpp"

namespace pgiso {

namespace {

std::string triple(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    return "(" + std::to_string(a + 1) + ", " + std::to_string(b + 1) + ", " + std::to_string(c + 1) + ")";
}

std::vector<std::uint32_t> right_closure(std::size_t order, const std::vector<std::uint32_t>& mul,
                                         const std::vector<std::uint32_t>& gens) {
    std::vector<char> seen(order, 0);
    std::vector<std::uint32_t> out{0}, queue{0};
    seen[0] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (auto g : gens) {
            std::uint32_t x = mul[queue[i] * order + g];
            if (!seen[x]) {
                seen[x] = 1;
                queue.push_back(x);
                out.push_back(x);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

void check_associative(std::size_t order, const std::vector<std::uint32_t>& mul) {
    auto at = [&](std::uint32_t a, std::uint32_t b) { return mul[a * order + b]; };
    std::vector<std::uint32_t> mids;
    if (order <= 512) {
        mids.resize(order);
        for (std::uint32_t i = 0; i < order; ++i) mids[i] = i;
    } else {
        std::vector<char> in(order, 0);
        std::vector<std::uint32_t> cur = right_closure(order, mul, mids);
        for (auto x : cur) in[x] = 1;
        for (std::uint32_t g = 0; g < order; ++g) {
            if (in[g]) continue;
            mids.push_back(g);
            for (auto x : right_closure(order, mul, mids)) in[x] = 1;
        }
    }
    for (std::uint32_t a = 0; a < order; ++a)
        for (auto b : mids)
            for (std::uint32_t c = 0; c < order; ++c)
                if (at(at(a, b), c) != at(a, at(b, c)))
                    throw Error(ErrorCode::NotAGroup, "associativity fails at " + triple(a, b, c));
}

CayleyTable::CayleyTable(std::size_t order, std::vector<std::uint32_t> mul) : order_(order), mul_(std::move(mul)) {
    if (order == 0) throw Error(ErrorCode::NotAGroup, "empty table");
    if (mul_.size() != order * order) throw Error(ErrorCode::NotAGroup, "table is not order x order");
    for (std::size_t i = 0; i < mul_.size(); ++i)
        if (mul_[i] >= order)
            throw Error(ErrorCode::NotAGroup, "closure fails: entry " + std::to_string(mul_[i] + 1) + " out of range");
    for (std::uint32_t a = 0; a < order; ++a)
        if ((*this)(0, a) != a || (*this)(a, 0) != a)
            throw Error(ErrorCode::NotAGroup, "element 1 is not an identity (fails at " + std::to_string(a + 1) + ")");
    inv_.assign(order, order);
    for (std::uint32_t a = 0; a < order; ++a) {
        std::vector<char> row(order, 0), col(order, 0);
        for (std::uint32_t b = 0; b < order; ++b) {
            if (row[(*this)(a, b)]++ || col[(*this)(b, a)]++)
                throw Error(ErrorCode::NotAGroup, "inverse law fails: element " + std::to_string(a + 1) +
                                                      " repeats a product");
            if ((*this)(a, b) == 0) inv_[a] = b;
        }
        if ((*this)(inv_[a], a) != 0)
            throw Error(ErrorCode::NotAGroup, "left and right inverses differ for " + std::to_string(a + 1));
    }
    check_associative(order_, mul_);
}

std::uint32_t CayleyTable::power(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 0;
    for (std::uint64_t i = 0; i < e; ++i) r = (*this)(r, a);
    return r;
}

std::uint64_t CayleyTable::element_order(std::uint32_t a) const {
    std::uint64_t k = 1;
    for (std::uint32_t x = a; x != 0; x = (*this)(x, a)) ++k;
    return k;
}

std::uint32_t CayleyTable::commutator(std::uint32_t a, std::uint32_t b) const {
    return (*this)((*this)(inverse(a), inverse(b)), (*this)(a, b));
}

bool CayleyTable::is_abelian() const {
    for (std::uint32_t a = 0; a < order_; ++a)
        for (std::uint32_t b = a + 1; b < order_; ++b)
            if ((*this)(a, b) != (*this)(b, a)) return false;
    return true;
}

CayleyTable CayleyTable::relabeled(const std::vector<std::uint32_t>& perm) const {
    if (perm.size() != order_ || perm[0] != 0) throw Error(ErrorCode::InvalidArgument, "bad relabeling");
    std::vector<std::uint32_t> mul(order_ * order_);
    for (std::uint32_t a = 0; a < order_; ++a)
        for (std::uint32_t b = 0; b < order_; ++b) mul[perm[a] * order_ + perm[b]] = perm[(*this)(a, b)];
    return CayleyTable(order_, std::move(mul));
}

CayleyTable parse_cayley(const std::string& text) {
    std::istringstream in(text);
    long long order;
    if (!(in >> order) || order <= 0) throw Error(ErrorCode::ParseError, "expected a positive order");
    std::vector<std::uint32_t> mul(order * order);
    for (auto& x : mul) {
        long long v;
        if (!(in >> v)) throw Error(ErrorCode::ParseError, "table truncated");
        if (v < 1 || v > order) throw Error(ErrorCode::NotAGroup, "closure fails: entry " + std::to_string(v));
        x = static_cast<std::uint32_t>(v - 1);
    }
    std::string extra;
    if (in >> extra) throw Error(ErrorCode::ParseError, "trailing data after table");
    return CayleyTable(order, std::move(mul));
}

std::string write_cayley(const CayleyTable& g) {
    std::ostringstream out;
    out << g.order() << "\n";
    for (std::uint32_t a = 0; a < g.order(); ++a) {
        for (std::uint32_t b = 0; b < g.order(); ++b) out << (b ? " " : "") << g(a, b) + 1;
        out << "\n";
    }
    return out.str();
}

std::vector<std::uint32_t> subgroup_closure(const CayleyTable& g, const std::vector<std::uint32_t>& gens) {
    return right_closure(g.order(), g.table(), gens);
}

std::vector<std::uint32_t> generating_set(const CayleyTable& g) {
    std::vector<std::uint32_t> gens;
    std::vector<char> in(g.order(), 0);
    in[0] = 1;
    for (std::uint32_t x = 0; x < g.order(); ++x) {
        if (in[x]) continue;
        gens.push_back(x);
        for (auto y : subgroup_closure(g, gens)) in[y] = 1;
    }
    return gens;
}

}  // namespace pgiso
