#include <doctest.h>

#include <cmath>

#include "support/instances.hpp"
#include "switchopt/rootfind.hpp"

using namespace switchopt;
using namespace testsup;

TEST_CASE("linear and quadratic roots") {
    const double r1 = find_root_bracketed([](double x) { return x - 2.0; },
                                          0.0, 10.0);
    CHECK(std::fabs(r1 - 2.0) < 1e-12);

    const double r2 = find_root_bracketed([](double x) { return x * x - 2.0; },
                                          1.0, 2.0);
    CHECK(std::fabs(r2 - std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("switch-in boundary equation of the hand-solved instance") {
    const auto ctx = Context::make(canonical_i2());
    auto e = [&](double a) {
        return weighted_integral(IntegralKind::M, ctx.roots, ctx.data.payoff,
                                 0.0, a, -1.0);
    };
    const double alpha = find_root_bracketed(e, 1.1, 10.0);
    CHECK(std::fabs(alpha - 2.0) < 1e-12);
}

TEST_CASE("kinked map via interval splitting") {
    // continuous with a kink at 1.5; root at 1.75
    auto f = [](double x) {
        return x < 1.5 ? x - 2.0 : 2.0 * x - 3.5;
    };
    const double r = find_root_split(f, 0.1, 3.0, {1.5});
    CHECK(std::fabs(r - 1.75) < 1e-12);

    // root exactly at the split point
    auto g = [](double x) { return x < 1.5 ? x - 1.5 : 3.0 * (x - 1.5); };
    CHECK(std::fabs(find_root_split(g, 0.1, 3.0, {1.5}) - 1.5) < 1e-12);
}

TEST_CASE("unbracketed input is rejected") {
    CHECK_THROWS_AS(
        find_root_bracketed([](double x) { return x * x + 1.0; }, 0.0, 1.0),
        RootNotBracketed);
}

TEST_CASE("geometric bracket expansion") {
    auto f = [](double x) { return x - 300.0; };
    const double lo = 1.0;
    const double hi = bracket_up(f, lo, f(lo), "test");
    CHECK(f(hi) > 0.0);
    CHECK(std::fabs(find_root_bracketed(f, lo, hi) - 300.0) < 1e-10);

    auto g = [](double x) { return 0.01 - x; };
    const double anchor = 4.0;
    const double down = bracket_down(g, anchor, g(anchor), "test");
    CHECK(g(down) > 0.0);
    CHECK(std::fabs(find_root_bracketed(g, down, anchor) - 0.01) < 1e-12);

    // expansion budget exhausted
    CHECK_THROWS_AS(bracket_up([](double) { return -1.0; }, 1.0, -1.0, "never"),
                    RootNotBracketed);
}

TEST_CASE("endpoint roots returned directly") {
    auto f = [](double x) { return x - 1.0; };
    CHECK(find_root_bracketed(f, 1.0, 5.0) == 1.0);
    CHECK(find_root_bracketed(f, 0.2, 1.0) == 1.0);
}
