#include "doctest.h"

#include "ncm/expand_oracle.hpp"
#include "ncm/liberation.hpp"
#include "ncm/text.hpp"

#include <sstream>

using namespace ncm;
using namespace ncm::oracle;

TEST_CASE("free expansion") {
    CHECK(expand_free({1}, {Expr::a(1)}) == parse("w(a1)"));
    std::vector<Expr> c{centered(FunctionalKind::Omega, Expr::a(1)), centered(FunctionalKind::Omega, Expr::a(2)),
                        centered(FunctionalKind::Omega, Expr::a(3))};
    CHECK(expand_free({1, 2, 1}, c).is_zero());
    CHECK(expand_free({1, 2}, {Expr::a(1), Expr::a(2)}) == parse("w(a1) w(a2)"));
    CHECK(expand_free({2, 2}, {Expr::a(1), Expr::a(2)}) == parse("w(a1 a2)"));
    CHECK_THROWS_AS(expand_free({1}, {}), std::invalid_argument);
}

TEST_CASE("right liberation expansion") {
    CHECK(expand_right_lib(RWord{{Expr::b(0)}, {}}) == Expr::b(0));
    CHECK(expand_right_lib(RWord::generic(1)) == parse("b0 r(a1) b1"));
    CHECK(expand_right_lib(RWord::generic(2)) == lm(RWord::generic(2)));
    CHECK(expand_right_lib(RWord::generic(3)) == lm(RWord::generic(3)));
}

TEST_CASE("left and strong expansion") {
    CHECK(expand_left_lib(LWord::generic(1)) == parse("v(b1) a0 a1"));
    CHECK(expand_left_lib(LWord::generic(2)) == left_moment(MomentKind::LeftL, LWord::generic(2)));
    CHECK(expand_strong_right(RWord::generic(1)) == parse("b0 R(a1) b1"));
    // R-centered first letter, nu-centered interior b's
    RWord x = RWord::generic(2);
    x.a[0] = x.a[0] - cap_r(x.a[0]);
    x.b[1] = centered(FunctionalKind::Nu, x.b[1]);
    // vanishes once R is idempotent
    std::string s = canonical_text(expand_strong_right(x));
    for (std::size_t k; (k = s.find("R(R(a1))")) != std::string::npos;) s.replace(k, 8, "R(a1)");
    CHECK(parse(s).is_zero());
    CHECK(expand_strong_right(RWord::generic(3)) == strong_right_moment(MomentKind::StrongL, RWord::generic(3)));
}

TEST_CASE("dilation expansion") {
    CHECK(expand_dilation(TimedWord{{0}, {Expr::a(1)}}) == Expr::a(1));
    CHECK(expand_dilation(TimedWord{{2}, {Expr::a(1)}}) == parse("p[2](a1)"));
    CHECK(expand_dilation(TimedWord{{1, 0, 1}, {Expr::a(1), Expr::a(2), Expr::a(3)}}) ==
          parse("p[1](a1) a2 p[1](a3) + w(a2) * (p[1](a1 a3) - p[1](a1) p[1](a3))"));
    CHECK(expand_dilation(TimedWord{{1, 1}, {Expr::a(1), Expr::a(2)}}) == parse("p[1](a1 a2)"));
    CHECK_THROWS_AS(expand_dilation(TimedWord{{-1}, {Expr::a(1)}}), std::invalid_argument);
}

TEST_CASE("mutual agreement with the recursions") {
    std::mt19937_64 rng(2718);
    for (int i = 0; i < 500; ++i) {
        RWord x = random_rword(rng, 4);
        CHECK_MESSAGE(expand_right_lib(x) == lm(x), to_text(x));
    }
    for (int i = 0; i < 300; ++i) {
        LWord y = random_lword(rng, 3);
        CHECK_MESSAGE(expand_left_lib(y) == left_moment(MomentKind::LeftL, y), to_text(y));
        RWord x = random_rword(rng, 3);
        CHECK_MESSAGE(expand_strong_right(x) == strong_right_moment(MomentKind::StrongL, x), to_text(x));
    }
}

TEST_CASE("randomized scheduling") {
    RWord x = RWord::generic(3);
    LWord y = LWord::generic(3);
    TimedWord tw{{1, 0, 2, 0, 1}, {Expr::a(1), Expr::a(2), Expr::a(3), Expr::a(4), Expr::a(5)}};
    Expr rx = expand_right_lib(x), ry = expand_left_lib(y), rs = expand_strong_right(x), rt = expand_dilation(tw);
    Expr rf = expand_free({1, 2, 1, 3, 1}, {Expr::a(1), Expr::a(2), Expr::a(3), Expr::a(4), Expr::a(5)});
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Options opt;
        opt.schedule_seed = seed;
        CHECK(expand_right_lib(x, opt) == rx);
        CHECK(expand_left_lib(y, opt) == ry);
        CHECK(expand_strong_right(x, opt) == rs);
        CHECK(expand_dilation(tw, opt) == rt);
        CHECK(expand_free({1, 2, 1, 3, 1}, {Expr::a(1), Expr::a(2), Expr::a(3), Expr::a(4), Expr::a(5)}, opt) == rf);
    }
}

TEST_CASE("step guard and trace") {
    Options opt;
    opt.max_steps = 5;
    CHECK_THROWS_AS(expand_right_lib(RWord::generic(3), opt), NonTermination);

    RewriteTrace trace;
    Options topt;
    topt.trace = &trace;
    Expr r = expand_right_lib(RWord::generic(2), topt);
    CHECK(trace.result == r);
    REQUIRE_FALSE(trace.steps.empty());
    CHECK(trace.steps.front().before == RWord::generic(2).product());
    for (const auto& s : trace.steps) {
        bool known = s.rule == "center-b" || s.rule == "standard-form" || s.rule == "center-a" || s.rule == "vanish" ||
                     s.rule == "type-II" || s.rule == "type-I" || s.rule == "uncenter" || s.rule == "extract";
        CHECK_MESSAGE(known, s.rule);
    }
    std::ostringstream os;
    trace.dump_jsonl(os);
    std::string first = os.str().substr(0, os.str().find('\n'));
    CHECK(first.find("\"rule\":\"center-b\"") != std::string::npos);

    RewriteTrace ft;
    Options fopt;
    fopt.trace = &ft;
    expand_free({1, 2}, {Expr::a(1), Expr::a(2)}, fopt);
    CHECK(ft.steps.size() >= 3);
}
