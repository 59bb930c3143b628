#include "doctest.h"

#include <cmath>

#include "abvp/quadrature.hpp"

using namespace abvp;

namespace {

// Oracle for the convergence study: int_0^1 s(1-s) e^s ds = 3 - e exactly
// (antiderivative (-s^2 + 3s - 3) e^s).
const double kWeightedExp = 3.0 - std::exp(1.0);

} // namespace

TEST_CASE("kernel weight integrals hit the closed forms") {
    auto one = [](double) { return 1.0; };
    CHECK(kernel_weight_integral(one, 0.0, 1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(kernel_weight_integral(one, 0.25, 0.75) ==
          doctest::Approx(11.0 / 96.0).epsilon(1e-14));
    auto two = [](double) { return 2.0; };
    CHECK(kernel_weight_integral(two, 0.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("empty interval integrates to zero") {
    auto g = [](double s) { return std::exp(s); };
    CHECK(integrate(g, 0.3, 0.3) == 0.0);
}

TEST_CASE("linearity in the integrand") {
    auto g = [](double s) { return s * s + 0.5; };
    const double base = integrate(g, 0.0, 1.0);
    for (double alpha : {0.0, 1.0, 2.0}) {
        auto scaled = [alpha, &g](double s) { return alpha * g(s); };
        CHECK(integrate(scaled, 0.0, 1.0) == doctest::Approx(alpha * base).epsilon(1e-15));
    }
}

TEST_CASE("convergence order: halving panels gains the full Gauss rate") {
    auto g = [](double s) { return s * (1.0 - s) * std::exp(s); };
    for (int pts : {2, 3}) {
        const double required = std::pow(2.0, 2 * pts - 1) / 2.0;
        double prev_err = -1.0;
        for (int panels : {1, 2, 4, 8, 16}) {
            const double err =
                std::fabs(integrate(g, 0.0, 1.0, {panels, pts}) - kWeightedExp);
            if (prev_err > 0.0 && prev_err > 1e-13) {
                CAPTURE(pts);
                CAPTURE(panels);
                CHECK(prev_err / err >= required);
            }
            prev_err = err;
        }
    }
}

TEST_CASE("apply_kernel_row closed forms") {
    auto one = [](double) { return 1.0; };
    // int_0^1 G(t,s) ds = t(1-t)/2
    CHECK(apply_kernel_row(0.5, one) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(apply_kernel_row(0.0, one) == 0.0);
    auto zero = [](double) { return 0.0; };
    CHECK(apply_kernel_row(0.37, zero) == 0.0);
}

TEST_CASE("split at the kink: polynomial integrand matches the antiderivative") {
    // g(s) = 1 + 2s + 3s^2. With P(x) = int_0^x s g(s) ds and
    // Q(x) = int_0^x (1-s) g(s) ds:
    auto P = [](double x) {
        return x * x / 2.0 + 2.0 * x * x * x / 3.0 + 3.0 * x * x * x * x / 4.0;
    };
    auto Q = [&P](double x) {
        const double G = x + x * x + x * x * x;  // int_0^x g
        return G - P(x);
    };
    auto g = [](double s) { return 1.0 + 2.0 * s + 3.0 * s * s; };
    for (double t : {0.0, 0.1, 0.25, 0.4999, 0.5, 0.75, 0.999, 1.0}) {
        const double expected = (1.0 - t) * P(t) + t * (Q(1.0) - Q(t));
        CHECK(apply_kernel_row(t, g) == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("non-finite samples are reported with the node") {
    auto bad = [](double s) { return 1.0 / (s - 0.5); };
    CHECK_THROWS_AS(integrate(bad, 0.0, 1.0, {1, 1}), NumericError);
}

TEST_CASE("rule validation") {
    auto g = [](double) { return 1.0; };
    CHECK_THROWS_AS(integrate(g, 0.0, 1.0, {0, 5}), ValidationError);
    CHECK_THROWS_AS(integrate(g, 0.0, 1.0, {4, 11}), ValidationError);
    CHECK_THROWS_AS(integrate(g, 1.0, 0.0, {4, 5}), ValidationError);
    CHECK_THROWS_AS(kernel_weight_integral(g, -0.5, 1.0), ValidationError);
}

TEST_CASE("gauss nodes: each count integrates monomials to its exactness degree") {
    for (int pts = 1; pts <= 10; ++pts) {
        for (int deg = 0; deg <= 2 * pts - 1; ++deg) {
            auto mono = [deg](double s) { return std::pow(s, deg); };
            const double exact = 1.0 / (deg + 1);
            CHECK(integrate(mono, 0.0, 1.0, {1, pts}) ==
                  doctest::Approx(exact).epsilon(1e-13));
        }
    }
}
