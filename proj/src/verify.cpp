#include "abvp/verify.hpp"

#include <cmath>
#include <limits>

namespace abvp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

} // namespace

VerificationReport verify_solution(const GridFunction& u, double lambda,
                                   const ReducedBVP& bvp, const VerifyTolerances& tols) {
    VerificationReport report;
    const std::size_t n = u.size();
    const double sup = u.sup_norm();
    const double scale = std::max(1.0, sup);
    report.trivial = sup <= tols.trivial_sup;

    {
        const double measured = std::max(std::fabs(u[0]), std::fabs(u[n - 1]));
        const double tol = tols.boundary * scale;
        report.checks.push_back({"boundary_zeros", measured <= tol, measured, tol, ""});
    }
    {
        const double measured = std::max(0.0, -u.min_value());
        const double tol = tols.nonneg * scale;
        report.checks.push_back({"nonnegativity", measured <= tol, measured, tol, ""});
    }
    {
        CheckResult check{"integral_residual", false, kNaN, tols.integral * scale, ""};
        try {
            GridFunction tu = apply_T(u, lambda, bvp, tols.gauss_points);
            double measured = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                measured = std::max(measured, std::fabs(u[i] - tu[i]));
            check.measured = measured;
            check.pass = measured <= check.tolerance;
        } catch (const Error& e) {
            check.note = e.what();
        }
        report.checks.push_back(std::move(check));
    }
    {
        CheckResult check{"ode_residual", false, kNaN, kNaN, ""};
        try {
            OdeResidual r = ode_residual(u, lambda, bvp);
            check.measured = r.residual;
            check.tolerance = tols.ode * lambda * r.qf_sup;
            if (report.trivial && check.tolerance < tols.ode) {
                // Numerically-zero solution: sup|qf| collapses with it and
                // would gate on nothing; judge |D2 u| absolutely instead.
                check.tolerance = tols.ode;
                check.note = "trivial solution: absolute gate";
            }
            check.pass = r.residual <= check.tolerance;
        } catch (const Error& e) {
            check.note = e.what();
        }
        report.checks.push_back(std::move(check));
    }
    {
        const double min_q = u.min_on(0.25, 0.75);
        const double bound = 0.25 * sup - tols.quarter_slack;
        report.checks.push_back({"quarter_bound", min_q >= bound, min_q, bound,
                                 "requires min over [1/4,3/4] >= ||u||/4 - slack"});
    }

    report.overall = true;
    for (const CheckResult& c : report.checks)
        report.overall = report.overall && c.pass;
    if (report.trivial) {
        report.checks.push_back({"trivial_solution", true, sup, tols.trivial_sup,
                                 "numerically the trivial fixed point"});
    }
    return report;
}

ConclusionCheck check_conclusion(const SolveReport& report, const LambdaRange& range) {
    if (!report.converged)
        throw ValidationError("check_conclusion: report did not converge");

    ConclusionCheck out;
    const double lambda = report.lambda;

    out.lambda_in_range = true;
    double margin = std::numeric_limits<double>::infinity();
    if (range.lower) {
        out.lambda_in_range = out.lambda_in_range && lambda > *range.lower;
        margin = std::min(margin, lambda - *range.lower);
    }
    if (range.upper) {
        out.lambda_in_range = out.lambda_in_range && lambda < *range.upper;
        margin = std::min(margin, *range.upper - lambda);
    }
    out.lambda_margin = margin;

    switch (range.theorem) {
        case Theorem::T1_1:
        case Theorem::T1_2: {
            const double R = range.inputs.radius_R.value_or(kNaN);
            out.norm_margin = R - report.sup_norm;
            out.norm_ok = report.sup_norm <= R;  // non-strict
            out.detail = "sup u <= R";
            break;
        }
        case Theorem::T1_3:
        case Theorem::T1_4: {
            const double r = range.inputs.radius_r.value_or(kNaN);
            out.norm_margin = report.sup_norm - r;
            out.norm_ok = report.sup_norm >= r;
            out.detail = "||u|| >= r";
            break;
        }
        case Theorem::T4_1:
        case Theorem::T4_2:
            out.norm_margin = report.sup_norm;
            out.norm_ok = report.sup_norm > 0.0;
            out.detail = "positive solution";
            break;
    }
    out.pass = out.lambda_in_range && out.norm_ok;
    return out;
}

} // namespace abvp
