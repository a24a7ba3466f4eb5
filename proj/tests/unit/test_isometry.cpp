#include <doctest.h>

#include "pgiso/error.hpp"
#include "pgiso/isometry.hpp"
#include "pgiso/oracle.hpp"
#include "pgiso/rng.hpp"

using namespace pgiso;

namespace {

IsometryConfig with_transport(const FpMatrix& n0, const FpMatrix& m0) {
    IsometryConfig c;
    c.transport = std::make_pair(n0, m0);
    return c;
}

// Slices of different rank profile, found by sampling.
std::pair<SkewTensor, SkewTensor> profile_pair(Prime p, std::size_t m, std::size_t n, std::uint64_t seed) {
    auto g = random_tensor(p, m, n, seed);
    for (std::uint64_t k = 1;; ++k) {
        auto h = random_tensor(p, m, n, seed + 1000 * k);
        if (rank_profile(g) != rank_profile(h)) return {g, h};
    }
}

}  // namespace

TEST_CASE("guided with transport") {
    for (std::uint32_t pv : {3u, 5u})
        for (int seed = 0; seed < 15; ++seed) {
            Prime p(pv);
            Rng rng(seed, pv);
            const std::size_t n = 2 + seed % 3, m = n == 2 ? 1 : 2;
            auto g = random_tensor(p, m, n, seed);
            FpMatrix n0 = random_invertible(p, n, rng), m0 = random_invertible(p, m, rng);
            auto h = transform(g, n0, m0);
            auto r = tensor_isometry(g, h, with_transport(n0, m0));
            CHECK(r.verdict == Verdict::Isometric);
            REQUIRE(r.N);
            CHECK(verify_witness(g, h, *r.N, *r.M));
            CHECK(transform(g, *r.N, *r.M) == h);
        }
}

TEST_CASE("G vs G") {
    Prime p(3);
    auto g = random_tensor(p, 2, 4, 3);
    auto r = tensor_isometry(g, g);
    CHECK(r.verdict == Verdict::Isometric);
    REQUIRE(r.N);
    CHECK(*r.N == FpMatrix::identity(p, 4));
    CHECK(*r.M == FpMatrix::identity(p, 2));
}

TEST_CASE("rank profiles decide non-isometry") {
    Prime p(3);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto [g, h] = profile_pair(p, 2, 4, seed);
        auto r = tensor_isometry(g, h);
        CHECK(r.verdict == Verdict::NotIsometric);
        CHECK_FALSE(r.N);
        CHECK_FALSE(space_isometry_bruteforce(space_of(g), space_of(h)));
    }
}

TEST_CASE("radical dimensions") {
    Prime p(3);
    FpMatrix r2(p, 4, 4), r4(p, 4, 4, {0, 1, 0, 0, 2, 0, 0, 0, 0, 0, 0, 1, 0, 0, 2, 0});
    r2.at(0, 1) = 1, r2.at(1, 0) = 2;
    auto g = SkewTensor::from_slices({r2}), h = SkewTensor::from_slices({r4});
    auto split = split_radical(g);
    CHECK(split.radical_dim == 2);
    CHECK(split.reduced.n() == 2);
    FpMatrix img = split.P * r2 * split.P.transpose();
    CHECK(img.block(0, 0, 2, 2) == split.reduced.x_slice(0));
    CHECK(img.block(2, 0, 2, 4).is_zero());
    CHECK(tensor_isometry(g, h).verdict == Verdict::NotIsometric);
    CHECK(split_radical(h).radical_dim == 0);
}

TEST_CASE("shape mismatch") {
    Prime p(3);
    CHECK_THROWS_AS(tensor_isometry(random_tensor(p, 1, 2, 0), random_tensor(p, 2, 3, 0)), Error);
    CHECK_THROWS_AS(tensor_isometry(random_tensor(p, 1, 2, 0), random_tensor(Prime(5), 1, 2, 0)), Error);
}

TEST_CASE("slice_change") {
    Prime p(5);
    Rng rng(8);
    auto g = random_tensor(p, 2, 4, 8);
    FpMatrix n0 = random_invertible(p, 4, rng), m0 = random_invertible(p, 2, rng);
    auto h = transform(g, n0, m0);
    auto m = slice_change(g, h, n0);
    REQUIRE(m);
    CHECK(*m == m0);
    CHECK_FALSE(slice_change(g, random_tensor(p, 2, 4, 99), FpMatrix::identity(p, 4)));
}

TEST_CASE("enumerate mode") {
    Prime p(3);
    for (int seed = 0; seed < 5; ++seed) {
        Rng rng(seed, 4);
        auto g = random_tensor(p, 1, 2, seed);
        auto h = transform(g, random_invertible(p, 2, rng), random_invertible(p, 1, rng));
        IsometryConfig c;
        c.mode = IsoMode::Enumerate;
        auto r = tensor_isometry(g, h, c);
        CHECK(r.verdict == Verdict::Isometric);
        REQUIRE(r.N);
        CHECK(verify_witness(g, h, *r.N, *r.M));
    }
}

TEST_CASE("strict bounds") {
    Prime p(3);
    auto g = random_tensor(p, 2, 4, 1);
    IsometryConfig c;
    c.mode = IsoMode::Enumerate;
    c.strict = true;
    c.bounds = Bounds{1, 1, 0, 0};
    CHECK(default_bounds(4, 2, 3) != *c.bounds);
    CHECK_THROWS_AS(tensor_isometry(g, g, c), Error);
    c.bounds = default_bounds(4, 2, 3);
    c.budget = 10;
    CHECK_NOTHROW(tensor_isometry(g, g, c));
}

TEST_CASE("non-isometric pairs are never Isometric without invariants") {
    Prime p(3);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        auto [g, h] = profile_pair(p, 2, 4, seed + 20);
        IsometryConfig c;
        c.mode = IsoMode::Enumerate;
        c.invariants = false;
        c.budget = 2000;
        c.semic_budget = 200;
        auto r = tensor_isometry(g, h, c);
        CHECK(r.verdict != Verdict::Isometric);
    }
}

TEST_CASE("tensor and space isometry agree at p = 3") {
    Prime p(3);
    for (int seed = 0; seed < 10; ++seed) {
        Rng rng(seed, 12);
        const std::size_t n = 2 + seed % 2, m = n == 2 ? 1 : 2;
        auto g = random_tensor(p, m, n, seed + 60), h = random_tensor(p, m, n, seed + 160);
        auto s = space_isometry_bruteforce(space_of(g), space_of(h));
        REQUIRE(s);
        auto m0 = slice_change(g, h, *s);
        REQUIRE(m0);
        auto r = tensor_isometry(g, h, with_transport(*s, *m0));
        CHECK(r.verdict == Verdict::Isometric);
    }
}
