#include "doctest.h"

#include "ncm/expand_oracle.hpp"
#include "ncm/free_moments.hpp"
#include "ncm/text.hpp"

#include <random>

using namespace ncm;

namespace {

std::vector<Expr> generic(std::size_t n) {
    std::vector<Expr> a;
    for (std::size_t i = 1; i <= n; ++i) a.push_back(Expr::a(static_cast<std::uint32_t>(i)));
    return a;
}

}  // namespace

TEST_CASE("consecutivity") {
    auto d = consecutivity({1, 2, 2, 1, 1, 3, 1});
    REQUIRE(d.blocks.size() == 5);
    CHECK(d.blocks[1].begin == 1);
    CHECK(d.blocks[1].end == 3);
    CHECK(d.blocks[2].begin == 3);
    CHECK(d.blocks[2].end == 5);
    CHECK_FALSE(d.nonstammering);
    CHECK(consecutivity({1}).nonstammering);
    auto e = consecutivity({1, 2, 1});
    CHECK(e.blocks.size() == 3);
    CHECK(e.nonstammering);
}

TEST_CASE("alternating moments") {
    CHECK(am({Expr::a(1)}) == parse("w(a1)"));
    CHECK(am(generic(2)) == parse("w(a1) w(a2)"));
    // a1 a2 a3 with a1, a3 in the same algebra
    CHECK(am({1, 2, 1}, generic(3)) == parse("w(a1 a3) w(a2)"));
    CHECK(am(generic(3)) == parse("w(a1) w(a2) w(a3)"));

    std::vector<Expr> c;
    for (std::uint32_t i = 1; i <= 4; ++i) c.push_back(centered(FunctionalKind::Omega, Expr::a(i)));
    CHECK(am({1, 2, 1, 2}, c).is_zero());
    CHECK(am(c).is_zero());
}

TEST_CASE("general moments") {
    CHECK(gm({1}, {Expr::a(1)}) == parse("w(a1)"));
    CHECK(gm({1, 1}, generic(2)) == parse("w(a1 a2)"));
    CHECK(gm({3, 3, 3}, generic(3)) == parse("w(a1 a2 a3)"));
    CHECK(gm({1, 2, 1}, generic(3)) == am({1, 2, 1}, generic(3)));
    CHECK(joint_moment({1, 2, 2}, generic(3)) == parse("w(a1) w(a2 a3)"));
    CHECK(gm({1, 2, 1, 2}, generic(4)) ==
          parse("w(a1 a3) w(a2) w(a4) + w(a1) w(a3) w(a2 a4) - w(a1) w(a2) w(a3) w(a4)"));
    CHECK_THROWS_AS(gm({1, 2}, generic(3)), std::invalid_argument);
}

TEST_CASE("general moments agree with the rewriting oracle") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::uint32_t> id(1, 4);
    for (int i = 0; i < 200; ++i) {
        std::vector<Expr> a;
        for (int k = 0; k < 3; ++k) a.push_back(Expr::a(id(rng)) * (id(rng) == 1 ? Expr::a(id(rng)) : Expr::one()));
        CHECK(gm({1, 2, 1}, a) == oracle::expand_free({1, 2, 1}, a));
    }
    std::uniform_int_distribution<unsigned> idx(1, 3);
    for (int i = 0; i < 200; ++i) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
        IndexTuple iota;
        for (std::size_t k = 0; k < n; ++k) iota.push_back(idx(rng));
        auto a = generic(n);
        CHECK_MESSAGE(gm(iota, a) == oracle::expand_free(iota, a), n);
    }
}
