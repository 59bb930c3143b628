#include "doctest.h"

#include <cmath>
#include <random>

#include "abvp/reduction.hpp"
#include "abvp/solver.hpp"

using namespace abvp;

namespace {

AnnularProblem n3_unit_forcing() {
    return {3, 1.0, 2.0, Expr::parse("1", vars_ru)};
}

} // namespace

TEST_CASE("N=3, r1=1, r2=2: constants and weight by hand substitution") {
    ReducedBVP bvp = reduce(n3_unit_forcing());
    REQUIRE(bvp.A.has_value());
    REQUIRE(bvp.B.has_value());
    CHECK(*bvp.A == 2.0);
    CHECK(*bvp.B == 2.0);
    CHECK(bvp.q(0.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(bvp.q(1.0) == doctest::Approx(4.0).epsilon(1e-15));
    // independent closed form 4/(2-t)^4 across the grid
    for (int i = 0; i <= 100; ++i) {
        const double t = i / 100.0;
        const double d = 2.0 - t;
        CHECK(bvp.q(t) == doctest::Approx(4.0 / (d * d * d * d)).epsilon(1e-14));
    }
    CHECK(bvp.provenance == "annulus(3,1,2)");
}

TEST_CASE("N=2, r1=1, r2=e: q(t) = e^{2(1-t)}") {
    AnnularProblem p{2, 1.0, std::exp(1.0), Expr::parse("u", vars_ru)};
    ReducedBVP bvp = reduce(p);
    CHECK_FALSE(bvp.A.has_value());
    CHECK(bvp.q(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bvp.q(0.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
    for (int i = 0; i <= 20; ++i) {
        const double t = i / 20.0;
        CHECK(bvp.q(t) == doctest::Approx(std::exp(2.0 * (1.0 - t))).epsilon(1e-13));
    }
}

TEST_CASE("coordinate maps: endpoints exact, pinned interior values") {
    AnnularProblem p3 = n3_unit_forcing();
    CHECK(map_t_to_r(0.0, p3) == 1.0);
    CHECK(map_t_to_r(1.0, p3) == 2.0);
    CHECK(map_t_to_r(0.5, p3) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(map_r_to_t(4.0 / 3.0, p3) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(map_r_to_t(1.0, p3) == 0.0);
    CHECK(map_r_to_t(2.0, p3) == 1.0);

    AnnularProblem p2{2, 1.0, std::exp(1.0), Expr::parse("u", vars_ru)};
    CHECK(map_t_to_r(0.0, p2) == 1.0);
    CHECK(map_t_to_r(1.0, p2) == std::exp(1.0));
    CHECK(map_r_to_t(std::sqrt(std::exp(1.0)), p2) == doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS_AS(map_t_to_r(1.5, p3), ValidationError);
    CHECK_THROWS_AS(map_r_to_t(0.5, p3), ValidationError);
}

TEST_CASE("round trip map_r_to_t(map_t_to_r(t)) = t on a 1001 grid") {
    for (AnnularProblem p : {n3_unit_forcing(),
                             AnnularProblem{2, 0.5, 3.0, Expr::parse("u", vars_ru)},
                             AnnularProblem{5, 2.0, 7.0, Expr::parse("u", vars_ru)}}) {
        for (int i = 0; i <= 1000; ++i) {
            const double t = i / 1000.0;
            CHECK(map_r_to_t(map_t_to_r(t, p), p) == doctest::Approx(t).epsilon(1e-12));
        }
    }
}

TEST_CASE("map monotonicity on a 1001 grid") {
    for (AnnularProblem p : {n3_unit_forcing(),
                             AnnularProblem{2, 1.0, 4.0, Expr::parse("u", vars_ru)},
                             AnnularProblem{7, 0.3, 1.1, Expr::parse("u", vars_ru)}}) {
        double prev = map_t_to_r(0.0, p);
        for (int i = 1; i <= 1000; ++i) {
            const double r = map_t_to_r(i / 1000.0, p);
            CHECK(r > prev);
            prev = r;
        }
    }
}

TEST_CASE("randomized problems: q positive and bounded on the sample grid") {
    std::mt19937 rng(777u);
    std::uniform_int_distribution<int> dim(2, 9);
    std::uniform_real_distribution<double> inner(0.1, 5.0), gap(0.1, 5.0);
    for (int trial = 0; trial < 25; ++trial) {
        const double r1 = inner(rng);
        AnnularProblem p{dim(rng), r1, r1 + gap(rng), Expr::parse("u", vars_ru)};
        ReducedBVP bvp = reduce(p);  // reduce() itself samples q > 0 and finite
        double qmin = 1e300, qmax = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double q = bvp.q(i / 1000.0);
            qmin = std::min(qmin, q);
            qmax = std::max(qmax, q);
        }
        CHECK(qmin > 0.0);
        CHECK(std::isfinite(qmax));
    }
}

TEST_CASE("invalid annular problems are rejected") {
    Expr h = Expr::parse("u", vars_ru);
    CHECK_THROWS_AS(reduce(AnnularProblem{1, 1.0, 2.0, h}), ValidationError);
    CHECK_THROWS_AS(reduce(AnnularProblem{3, 2.0, 1.0, h}), ValidationError);
    CHECK_THROWS_AS(reduce(AnnularProblem{3, 0.0, 1.0, h}), ValidationError);
}

TEST_CASE("interval mode rejects a sign-violating nonlinearity") {
    // f(t,0) = -1 < 0 breaks the standing sign assumptions
    CHECK_THROWS_AS(make_interval_bvp(Expr::parse("1", vars_t), Expr::parse("u-1", vars_tu)),
                    ValidationError);
    // and a weight that dips to zero is rejected
    CHECK_THROWS_AS(make_interval_bvp(Expr::parse("t", vars_t), Expr::parse("u", vars_tu)),
                    ValidationError);
}

TEST_CASE("reduction consistency: transported interval solve matches a radial solve") {
    // N=3, r1=1, r2=2, lambda=1, h == 1. Definitional oracle: integrate
    // v'' + (2/r) v' + 1 = 0 with v(1) = v(2) = 0 directly in r by RK4
    // shooting on v'(1), independently of the library solver.
    AnnularProblem p = n3_unit_forcing();
    ReducedBVP bvp = reduce(p);

    auto radial_end = [](double slope) {
        const int steps = 8192;
        const double h = 1.0 / steps;
        double v = 0.0, w = slope;
        auto acc = [](double r, double wv) { return -(2.0 / r) * wv - 1.0; };
        for (int i = 0; i < steps; ++i) {
            const double r = 1.0 + i * h;
            const double k1v = w, k1w = acc(r, w);
            const double k2v = w + 0.5 * h * k1w, k2w = acc(r + 0.5 * h, w + 0.5 * h * k1w);
            const double k3v = w + 0.5 * h * k2w, k3w = acc(r + 0.5 * h, w + 0.5 * h * k2w);
            const double k4v = w + h * k3w, k4w = acc(r + h, w + h * k3w);
            v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        }
        return v;
    };
    double lo = 0.0, hi = 2.0;
    REQUIRE(radial_end(lo) < 0.0);
    REQUIRE(radial_end(hi) > 0.0);
    for (int i = 0; i < 90; ++i) {
        const double mid = 0.5 * (lo + hi);
        (radial_end(mid) > 0.0 ? hi : lo) = mid;
    }
    const double slope = 0.5 * (lo + hi);

    auto radial_solution = [slope](double r_target) {
        const int steps = 8192;
        const double h = (r_target - 1.0) / steps;
        if (h == 0.0) return 0.0;
        double v = 0.0, w = slope;
        auto acc = [](double r, double wv) { return -(2.0 / r) * wv - 1.0; };
        for (int i = 0; i < steps; ++i) {
            const double r = 1.0 + i * h;
            const double k1v = w, k1w = acc(r, w);
            const double k2v = w + 0.5 * h * k1w, k2w = acc(r + 0.5 * h, w + 0.5 * h * k1w);
            const double k3v = w + 0.5 * h * k2w, k3w = acc(r + 0.5 * h, w + 0.5 * h * k2w);
            const double k4v = w + h * k3w, k4w = acc(r + h, w + h * k3w);
            v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        }
        return v;
    };

    auto reports = shoot_solve(bvp, 1.0);
    REQUIRE(reports.size() == 1);
    const GridFunction& u = reports[0].u;

    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double r = 1.0 + i / 200.0;
        const double t = map_r_to_t(r, p);
        worst = std::max(worst, std::fabs(u.interp(t) - radial_solution(r)));
    }
    CHECK(worst <= 1e-6);

    // Sanity of the oracle itself: v(r) = -r^2/6 + 7/6 - 1/r in closed form.
    for (double r : {1.0, 1.3, 1.7, 2.0}) {
        const double closed = -r * r / 6.0 + 7.0 / 6.0 - 1.0 / r;
        CHECK(radial_solution(r) == doctest::Approx(closed).epsilon(1e-9));
    }
}
