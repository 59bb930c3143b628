#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abvp/certify.hpp"
#include "abvp/solver.hpp"

namespace abvp {

struct VerifyTolerances {
    double boundary = 1e-12;      // * max(1, ||u||)
    double nonneg = 1e-9;         // * max(1, ||u||)
    double integral = 1e-8;       // * max(1, ||u||)
    double ode = 1e-4;            // * lambda * sup|q f|
    double quarter_slack = 1e-8;  // absolute slack on min u >= ||u||/4
    double trivial_sup = 1e-8;    // sup at or below this is the zero solution
    int gauss_points = 5;
};

struct CheckResult {
    std::string name;
    bool pass;
    double measured;
    double tolerance;
    std::string note;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool overall;  // conjunction of all checks
    bool trivial;  // ||u|| <= trivial_sup: numerically the zero solution
};

/// Structural checks of a candidate solution: boundary zeros, nonnegativity,
/// integral residual ||u - Tu||, ODE residual by centered second differences,
/// and the concavity quarter bound min_{[1/4,3/4]} u >= ||u||/4 - slack.
/// Failures are report entries, never exceptions.
VerificationReport verify_solution(const GridFunction& u, double lambda,
                                   const ReducedBVP& bvp, const VerifyTolerances& tols = {});

/// Did a solve land inside a certified range and satisfy its conclusion?
/// sup comparisons are non-strict; lambda endpoints are strict (open range).
struct ConclusionCheck {
    bool pass;
    bool lambda_in_range;
    double lambda_margin;  // distance to the nearest endpoint; negative if outside
    bool norm_ok;
    double norm_margin;    // R - sup (upper conclusions) or sup - r (lower ones)
    std::string detail;
};

ConclusionCheck check_conclusion(const SolveReport& report, const LambdaRange& range);

} // namespace abvp
