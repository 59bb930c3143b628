#include "doctest.h"

#include <cmath>

#include "abvp/expr.hpp"
#include "abvp/verify.hpp"

using namespace abvp;

namespace {

ReducedBVP interval(const char* q_src, const char* f_src) {
    return make_interval_bvp(Expr::parse(q_src, vars_t), Expr::parse(f_src, vars_tu));
}

const CheckResult& find_check(const VerificationReport& rep, const std::string& name) {
    for (const auto& c : rep.checks)
        if (c.name == name) return c;
    throw std::runtime_error("check not found: " + name);
}

SolveReport fake_report(double sup, double lambda) {
    GridFunction u = GridFunction::sample(
        65, [sup](double t) { return 4.0 * sup * t * (1.0 - t); });
    const double minq = u.min_on(0.25, 0.75);
    return SolveReport{std::move(u), sup,  minq, SolveMethod::Picard, lambda,
                       1,            true, 0.0,  0.0};
}

} // namespace

TEST_CASE("the zero function verifies and is flagged trivial") {
    ReducedBVP bvp = interval("1", "u/(1+u)");
    VerificationReport rep = verify_solution(GridFunction::zeros(33), 7.0, bvp);
    CHECK(rep.overall);
    CHECK(rep.trivial);
}

TEST_CASE("a numerically-zero iterate is trivial and gated absolutely") {
    // A superlinear f below its window makes Picard collapse toward u = 0;
    // the leftover iterate is smooth noise at the stop-tolerance scale.
    ReducedBVP bvp = interval("1", "u^3+u/2");
    SolveReport rep = picard_solve(bvp, 5.0, {});
    REQUIRE(rep.converged);
    REQUIRE(rep.sup_norm > 0.0);
    REQUIRE(rep.sup_norm <= 1e-8);
    VerificationReport ver = verify_solution(rep.u, rep.lambda, bvp);
    CHECK(ver.trivial);
    CHECK(ver.overall);
    CHECK(find_check(ver, "ode_residual").note == "trivial solution: absolute gate");
}

TEST_CASE("closed-form solution passes every check with tiny residuals") {
    ReducedBVP bvp = interval("1", "1");
    GridFunction u = GridFunction::sample(513, [](double t) { return t * (1.0 - t) / 2.0; });
    VerificationReport rep = verify_solution(u, 1.0, bvp);
    CHECK(rep.overall);
    CHECK_FALSE(rep.trivial);
    CHECK(find_check(rep, "integral_residual").measured <= 1e-10);
    CHECK(find_check(rep, "ode_residual").measured <= 1e-10);
    CHECK(find_check(rep, "quarter_bound").pass);
}

TEST_CASE("a function violating u(1)=0 fails the boundary check with measured 1") {
    ReducedBVP bvp = interval("1", "1");
    GridFunction u = GridFunction::sample(65, [](double t) { return t; });
    VerificationReport rep = verify_solution(u, 1.0, bvp);
    CHECK_FALSE(rep.overall);
    const CheckResult& boundary = find_check(rep, "boundary_zeros");
    CHECK_FALSE(boundary.pass);
    CHECK(boundary.measured == 1.0);
}

TEST_CASE("negative dip fails nonnegativity; shallow quarter fails the cone bound") {
    ReducedBVP bvp = interval("1", "1");
    GridFunction dip = GridFunction::sample(
        65, [](double t) { return t * (1.0 - t) - 0.3 * std::sin(2.0 * M_PI * t); });
    VerificationReport rep = verify_solution(dip, 1.0, bvp);
    CHECK_FALSE(find_check(rep, "nonnegativity").pass);

    // Boundary-peaked profile: positive, zero ends, but min on [1/4,3/4]
    // far below sup/4.
    GridFunction peaked = GridFunction::sample(257, [](double t) {
        const double bump = std::sin(M_PI * t);
        return bump * bump * (1.0 + 30.0 * std::exp(-80.0 * (t - 0.08) * (t - 0.08)));
    });
    VerificationReport rep2 = verify_solution(peaked, 1.0, bvp);
    CHECK_FALSE(find_check(rep2, "quarter_bound").pass);
}

TEST_CASE("check_conclusion: in-range and norm comparisons") {
    LambdaRange t13{Theorem::T1_3, 384.0 / 11.0, std::nullopt, {}, "||u|| >= r"};
    t13.inputs.radius_r = 0.0108;

    SolveReport rep = fake_report(0.5, 35.0);
    ConclusionCheck ok = check_conclusion(rep, t13);
    CHECK(ok.pass);
    CHECK(ok.lambda_in_range);
    CHECK(ok.lambda_margin == doctest::Approx(35.0 - 384.0 / 11.0));
    CHECK(ok.norm_margin == doctest::Approx(0.5 - 0.0108));

    SolveReport low = fake_report(0.5, 30.0);
    ConclusionCheck out = check_conclusion(low, t13);
    CHECK_FALSE(out.pass);
    CHECK_FALSE(out.lambda_in_range);
    CHECK(out.lambda_margin == doctest::Approx(30.0 - 384.0 / 11.0));  // negative distance

    LambdaRange t11{Theorem::T1_1, 10.0, std::nullopt, {}, "sup u <= R"};
    t11.inputs.radius_R = 0.5;
    SolveReport exact = fake_report(0.5, 20.0);
    ConclusionCheck boundary = check_conclusion(exact, t11);
    CHECK(boundary.pass);  // sup == R passes: the conclusion is non-strict
    CHECK(boundary.norm_margin == 0.0);

    SolveReport unconverged = fake_report(0.5, 20.0);
    unconverged.converged = false;
    CHECK_THROWS_AS(check_conclusion(unconverged, t11), ValidationError);
}

TEST_CASE("check_conclusion: open interval endpoints are strict") {
    LambdaRange t41{Theorem::T4_1, 5.0, 10.0, {}, "positive solution"};
    CHECK_FALSE(check_conclusion(fake_report(1.0, 5.0), t41).lambda_in_range);
    CHECK_FALSE(check_conclusion(fake_report(1.0, 10.0), t41).lambda_in_range);
    CHECK(check_conclusion(fake_report(1.0, 7.0), t41).pass);
}
