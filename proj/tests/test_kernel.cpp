#include "doctest.h"

#include "abvp/kernel.hpp"

using namespace abvp;

TEST_CASE("green point values") {
    CHECK(green(0.5, 0.5) == 0.25);
    CHECK(green(0.75, 0.25) == 0.0625);  // s <= t branch: 0.25 * 0.25
    for (double s : {0.0, 0.1, 0.5, 0.9, 1.0}) {
        CHECK(green(0.0, s) == 0.0);
        CHECK(green(1.0, s) == 0.0);
    }
    CHECK_THROWS_AS(green(-0.1, 0.5), ValidationError);
    CHECK_THROWS_AS(green(0.5, 1.1), ValidationError);
}

TEST_CASE("green_diag values") {
    CHECK(green_diag(0.5) == 0.25);
    CHECK(green_diag(0.0) == 0.0);
    CHECK(green_diag(0.25) == 0.1875);
    CHECK_THROWS_AS(green_diag(2.0), ValidationError);
}

TEST_CASE("exhaustive 101x101 grid: symmetry, positivity, both bounds") {
    constexpr int n = 101;
    for (int i = 0; i < n; ++i) {
        const double t = i / 100.0;
        for (int j = 0; j < n; ++j) {
            const double s = j / 100.0;
            const double g = green(t, s);
            CHECK(g == green(s, t));  // exact symmetry
            CHECK(g <= green_diag(s));
            if (t > 0.0 && t < 1.0 && s > 0.0 && s < 1.0)
                CHECK(g > 0.0);
            if (t >= 0.25 && t <= 0.75)
                CHECK(g >= 0.25 * green_diag(s));
        }
    }
}

TEST_CASE("branches agree exactly on the diagonal") {
    for (int i = 0; i <= 100; ++i) {
        const double t = i / 100.0;
        CHECK(green(t, t) == green_diag(t));
    }
}
