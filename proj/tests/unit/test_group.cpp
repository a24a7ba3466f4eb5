#include <doctest.h>

#include <cstdio>
#include <numeric>

#include "pgiso/error.hpp"
#include "pgiso/group.hpp"
#include "pgiso/rng.hpp"

using namespace pgiso;

namespace {

CayleyTable cyclic(std::size_t k) {
    std::vector<std::uint32_t> mul(k * k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) mul[a * k + b] = static_cast<std::uint32_t>((a + b) % k);
    return CayleyTable(k, mul);
}

CayleyTable z3xz3() {
    std::vector<std::uint32_t> mul(81);
    for (std::uint32_t a = 0; a < 9; ++a)
        for (std::uint32_t b = 0; b < 9; ++b) mul[a * 9 + b] = ((a / 3 + b / 3) % 3) * 3 + (a % 3 + b % 3) % 3;
    return CayleyTable(9, mul);
}

SkewTensor heisenberg(Prime p) { return SkewTensor::from_slices({FpMatrix(p, 2, 2, {0, 1, -1, 0})}); }

std::vector<std::uint32_t> scramble(std::size_t order, std::uint64_t seed) {
    std::vector<std::uint32_t> perm(order);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(seed);
    for (std::size_t i = order - 1; i > 1; --i) std::swap(perm[i], perm[1 + rng.below(i)]);
    return perm;
}

}  // namespace

TEST_CASE("cayley tables") {
    auto one = CayleyTable(1, {0});
    CHECK(one.order() == 1);
    auto z3 = cyclic(3);
    CHECK(z3.is_abelian());
    CHECK(z3.inverse(1) == 2);
    CHECK(z3.element_order(1) == 3);
    CHECK(parse_cayley(write_cayley(z3)) == z3);
    CHECK(parse_cayley("3\n1 2 3\n2 3 1\n3 1 2\n") == z3);
    CHECK_THROWS_AS(parse_cayley("2\n1 2\n2 3\n"), Error);
    CHECK_THROWS_AS(parse_cayley("2\n1 2\n"), Error);
}

TEST_CASE("swapped entries are rejected with a witness") {
    auto g = cyclic(8);
    const std::size_t k = g.order();
    std::vector<std::uint32_t> mul = g.table();
    auto at = [&](std::size_t a, std::size_t b) { return mul[a * k + b]; };
    // A 2×2 subsquare {x y / y x} away from the identity; swapping x and y keeps a Latin square.
    bool found = false;
    for (std::size_t a = 1; a < k && !found; ++a)
        for (std::size_t a2 = a + 1; a2 < k && !found; ++a2)
            for (std::size_t b = 1; b < k && !found; ++b)
                for (std::size_t b2 = b + 1; b2 < k && !found; ++b2)
                    if (at(a, b) == at(a2, b2) && at(a, b2) == at(a2, b) && at(a, b) != 0 && at(a, b2) != 0) {
                        std::swap(mul[a * k + b], mul[a * k + b2]);
                        std::swap(mul[a2 * k + b], mul[a2 * k + b2]);
                        found = true;
                    }
    REQUIRE(found);
    try {
        CayleyTable bad(k, mul);
        FAIL("table accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotAGroup);
        const std::string msg = e.what();
        CHECK(msg.find("associativity") != std::string::npos);
        unsigned x = 0, y = 0, z = 0;
        REQUIRE(std::sscanf(msg.c_str() + msg.find('('), "(%u, %u, %u)", &x, &y, &z) == 3);
        CHECK(at(at(x - 1, y - 1), z - 1) != at(x - 1, at(y - 1, z - 1)));
    }
}

TEST_CASE("Heisenberg from its tensor") {
    Prime p(3);
    auto g = group_from_tensor(heisenberg(p));
    CHECK(g.order() == 27);
    CHECK_FALSE(g.is_abelian());
    for (std::uint32_t a = 1; a < 27; ++a) CHECK(g.element_order(a) == 3);
    auto d = verify_class2_exp_p(g);
    CHECK(d.n == 2);
    CHECK(d.m == 1);
    CHECK(d.k == 3);
    CHECK(d.center.size() == 3);
    const FpMatrix& x = d.tensor.x_slice(0);
    CHECK(x(0, 0) == 0);
    CHECK(x(0, 1) != 0);
    CHECK(x(1, 0) == p.neg(x(0, 1)));
    CHECK(encode_element({1, 0}, {0}, 3) == 9);
}

TEST_CASE("product formula") {
    for (std::uint32_t pv : {3u, 5u}) {
        Prime p(pv);
        auto t = heisenberg(p);
        auto g = group_from_tensor(t);
        const std::uint32_t half = (pv + 1) / 2;
        for (std::uint32_t u1 = 0; u1 < pv; ++u1)
            for (std::uint32_t u2 = 0; u2 < pv; ++u2)
                for (std::uint32_t v1 = 0; v1 < pv; ++v1)
                    for (std::uint32_t v2 = 0; v2 < pv; ++v2) {
                        std::uint32_t w = p.mul(half, p.sub(p.mul(u1, v2), p.mul(u2, v1)));
                        CHECK(g(encode_element({u1, u2}, {0}, pv), encode_element({v1, v2}, {0}, pv)) ==
                              encode_element({p.add(u1, v1), p.add(u2, v2)}, {w}, pv));
                    }
    }
}

TEST_CASE("verification errors") {
    auto check = [](const CayleyTable& g, ErrorCode code) {
        try {
            verify_class2_exp_p(g);
            FAIL("accepted");
        } catch (const Error& e) {
            CHECK(e.code() == code);
        }
    };
    check(cyclic(9), ErrorCode::WrongExponent);
    check(z3xz3(), ErrorCode::NotClass2);
    check(cyclic(6), ErrorCode::NotPPower);
    check(CayleyTable(1, {0}), ErrorCode::NotClass2);
}

TEST_CASE("construction errors") {
    Prime p(3);
    CHECK_THROWS_AS(group_from_tensor(SkewTensor::from_slices({FpMatrix(p, 2, 2)})), Error);
    FpMatrix x(p, 3, 3, {0, 1, 0, 2, 0, 0, 0, 0, 0});
    auto rad = SkewTensor::from_slices({x});
    CHECK_THROWS_AS(group_from_tensor(rad), Error);
    GroupBuildOptions o;
    o.allow_radical = true;
    auto g = group_from_tensor(rad, o);
    CHECK(g.order() == 81);
    CHECK(verify_class2_exp_p(g).n == 2);
    o.max_order = 27;
    CHECK_THROWS_AS(group_from_tensor(rad, o), Error);
}

TEST_CASE("group_isomorphism branches") {
    Prime p(3);
    auto g = group_from_tensor(heisenberg(p));
    GroupIsoConfig oracle, pipeline;
    oracle.branch = GroupBranch::Oracle;
    pipeline.branch = GroupBranch::Pipeline;
    for (auto cfg : {oracle, pipeline}) {
        CHECK(group_isomorphism(g, g, cfg).verdict == Verdict::Isometric);
        auto h = g.relabeled(scramble(27, 5));
        CHECK(group_isomorphism(g, h, cfg).verdict == Verdict::Isometric);
    }
    CHECK(group_isomorphism(g, g, oracle).used_oracle);
    CHECK_FALSE(group_isomorphism(g, g, pipeline).used_oracle);
    CHECK(group_isomorphism(g, g).used_oracle);

    auto other = group_from_tensor(SkewTensor::from_slices({FpMatrix(p, 2, 2, {0, 2, 1, 0})}));
    CHECK(group_isomorphism(g, other, pipeline).verdict == Verdict::Isometric);
    CHECK(group_isomorphism(g, other, oracle).verdict == Verdict::Isometric);

    GroupBuildOptions o;
    o.allow_radical = true;
    auto big = group_from_tensor(SkewTensor::from_slices({FpMatrix(p, 3, 3, {0, 1, 0, 2, 0, 0, 0, 0, 0})}), o);
    CHECK(group_isomorphism(g, big).verdict == Verdict::NotIsometric);
}
