#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abvp/eigen.hpp"
#include "abvp/ratio_bounds.hpp"
#include "abvp/reduction.hpp"

namespace abvp {

enum class Theorem { T1_1, T1_2, T1_3, T1_4, T4_1, T4_2 };
const char* theorem_name(Theorem t);

enum class Hypothesis {
    H1,         // f(t,u) <= b(t) u for u in (0, delta)
    H2,         // f(t,u) >= c b(t) u for u >= R
    H3,         // f(t,u) <= b(t) u for u >= R
    H4,         // f(t,u) >= c b(t) u for u in (0, delta)
    F0_Zero,    // lim_{u->0+} f/u = 0
    F0_Inf,     // lim_{u->0+} f/u = inf
    FInf_Zero,  // lim_{u->inf} f/u = 0
    FInf_Inf,   // lim_{u->inf} f/u = inf
};
const char* hypothesis_name(Hypothesis h);

/// Sampled evidence for a hypothesis or limit condition. A failed check
/// carries a concrete counterexample point (worst_t, worst_u). These are
/// heuristic reports over finite samples, never proofs.
struct HypothesisReport {
    Hypothesis id;
    bool holds;
    double worst_t;
    double worst_u;
    double margin;  // signed; negative means violated at the witness
    std::optional<double> limit_estimate;
    int samples;
    std::string note;
};

struct LambdaRangeInputs {
    std::optional<double> radius_R;
    std::optional<double> radius_r;
    std::optional<double> ratio_used;      // the m or M the threshold used
    std::optional<double> ratio_computed;  // grid value, always reported
    bool ratio_overridden = false;
    std::optional<double> weight_integral;  // I = int G(s,s) q(s) ds
    double weight_lo = 0.0;
    double weight_hi = 1.0;
    std::optional<double> lambda1_qb;
    std::optional<double> c;
    std::optional<double> delta;
};

/// A certified open lambda-interval or half-line with the inputs that
/// produced it. Both endpoints, when present, are strict bounds.
struct LambdaRange {
    Theorem theorem;
    std::optional<double> lower;
    std::optional<double> upper;
    LambdaRangeInputs inputs;
    std::string conclusion;  // "sup u <= R" | "||u|| >= r" | "positive solution"
};

struct Certification {
    LambdaRange range;
    std::vector<HypothesisReport> hypotheses;
};

struct CertifyOptions {
    RatioGrid grid{};
    std::optional<double> u_min;  // ratio scan cutoff; defaults to 1e-8 * U
    QuadratureRule rule{};
    ShootEigenConfig eigen{};
};

/// lambda > 16 / (m_R I[1/4,3/4]) guarantees a positive solution with
/// sup u <= R. m_R may be overridden to reproduce stated arithmetic; the
/// computed grid value is reported alongside either way.
Certification certify_T11(double R, std::optional<double> m_override, const ReducedBVP& bvp,
                          const CertifyOptions& opts = {});

/// lambda < 1 / (M_R I[0,1]), conclusion sup u <= R.
Certification certify_T12(double R, std::optional<double> M_override, const ReducedBVP& bvp,
                          const CertifyOptions& opts = {});

/// lambda > 4 / (m_r I[1/4,3/4]), conclusion ||u|| >= r.
Certification certify_T13(double r, std::optional<double> m_override, const ReducedBVP& bvp,
                          const CertifyOptions& opts = {});

/// lambda < 1 / (M_r I[0,1]), conclusion ||u|| >= r.
Certification certify_T14(double r, std::optional<double> M_override, const ReducedBVP& bvp,
                          const CertifyOptions& opts = {});

/// Eigenvalue window (lambda_1,qb / c, lambda_1,qb) under H1 (f <= b u near 0)
/// and H2 (f >= c b u beyond R, sampled on [R, 10R]).
Certification certify_T41(const ScalarFn& b, double c, double delta, double R,
                          const ReducedBVP& bvp, const CertifyOptions& opts = {});

/// Mirror window under H3 (f <= b u beyond R) and H4 (f >= c b u near 0).
Certification certify_T42(const ScalarFn& b, double c, double delta, double R,
                          const ReducedBVP& bvp, const CertifyOptions& opts = {});

/// Empirical trend of f(t,u)/u on geometric u-ladders (10^-1..10^-12 toward 0,
/// 10^1..10^8 toward infinity) across a t-grid of [t_lo, t_hi].
HypothesisReport check_limit_condition(Hypothesis which, const BivariateFn& f,
                                       double t_lo = 0.0, double t_hi = 1.0);

} // namespace abvp
