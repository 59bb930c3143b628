#include "abvp/certify.hpp"

#include <cmath>

#include "abvp/quadrature.hpp"

namespace abvp {

namespace {

constexpr double kZeroLimit = 1e-6;  // ratio at the ladder end counts as -> 0
constexpr double kInfLimit = 1e6;    // and counts as -> infinity

std::string short_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// t sample grid staying strictly inside (t_lo, t_hi): the hypotheses are
// "uniformly in t" on the open interval.
std::vector<double> interior_grid(double t_lo, double t_hi, int n) {
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j)
        out[j] = t_lo + (t_hi - t_lo) * (j + 0.5) / n;
    return out;
}

std::vector<double> geometric_ladder(double lo, double hi, int n) {
    std::vector<double> out(n);
    const double ratio = std::pow(hi / lo, 1.0 / (n - 1));
    for (int i = 0; i < n; ++i)
        out[i] = lo * std::pow(ratio, i);
    out.back() = hi;
    return out;
}

// Worst-margin scan of `margin(t,u) >= 0` over a t-grid x u-ladder.
HypothesisReport sample_inequality(Hypothesis id, const std::vector<double>& ts,
                                   const std::vector<double>& us,
                                   const std::function<double(double, double)>& margin,
                                   std::string note) {
    double worst = 0.0, worst_t = ts.front(), worst_u = us.front();
    bool first = true;
    for (double u : us) {
        for (double t : ts) {
            const double m = margin(t, u);
            if (!std::isfinite(m))
                throw NumericError("hypothesis sampling: non-finite margin at t=" +
                                   std::to_string(t) + ", u=" + std::to_string(u));
            if (first || m < worst) {
                worst = m;
                worst_t = t;
                worst_u = u;
                first = false;
            }
        }
    }
    return HypothesisReport{id,
                            worst >= 0.0,
                            worst_t,
                            worst_u,
                            worst,
                            std::nullopt,
                            static_cast<int>(ts.size() * us.size()),
                            std::move(note)};
}

double weight_integral(const ReducedBVP& bvp, double lo, double hi,
                       const QuadratureRule& rule) {
    return kernel_weight_integral(bvp.q, lo, hi, rule);
}

void require_positive_ratio(double value, const char* which) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw NumericError(std::string("certify: threshold unbounded, ") + which +
                           " = " + std::to_string(value) + " is not positive and finite");
}

LambdaRangeInputs ratio_inputs(double radius, bool is_R, double used, double computed,
                               bool overridden, double I, double lo, double hi) {
    LambdaRangeInputs in;
    (is_R ? in.radius_R : in.radius_r) = radius;
    in.ratio_used = used;
    in.ratio_computed = computed;
    in.ratio_overridden = overridden;
    in.weight_integral = I;
    in.weight_lo = lo;
    in.weight_hi = hi;
    return in;
}

} // namespace

const char* theorem_name(Theorem t) {
    switch (t) {
        case Theorem::T1_1: return "1.1";
        case Theorem::T1_2: return "1.2";
        case Theorem::T1_3: return "1.3";
        case Theorem::T1_4: return "1.4";
        case Theorem::T4_1: return "4.1";
        case Theorem::T4_2: return "4.2";
    }
    return "?";
}

const char* hypothesis_name(Hypothesis h) {
    switch (h) {
        case Hypothesis::H1: return "H1: f(t,u) <= b(t) u on (0,delta)";
        case Hypothesis::H2: return "H2: f(t,u) >= c b(t) u for u >= R";
        case Hypothesis::H3: return "H3: f(t,u) <= b(t) u for u >= R";
        case Hypothesis::H4: return "H4: f(t,u) >= c b(t) u on (0,delta)";
        case Hypothesis::F0_Zero: return "(5): lim_{u->0+} f/u = 0";
        case Hypothesis::F0_Inf: return "(6): lim_{u->0+} f/u = inf";
        case Hypothesis::FInf_Zero: return "(7): lim_{u->inf} f/u = 0";
        case Hypothesis::FInf_Inf: return "(8): lim_{u->inf} f/u = inf";
    }
    return "?";
}

HypothesisReport check_limit_condition(Hypothesis which, const BivariateFn& f,
                                       double t_lo, double t_hi) {
    const bool toward_zero_u =
        which == Hypothesis::F0_Zero || which == Hypothesis::F0_Inf;
    const bool expect_zero =
        which == Hypothesis::F0_Zero || which == Hypothesis::FInf_Zero;
    if (!toward_zero_u && which != Hypothesis::FInf_Zero && which != Hypothesis::FInf_Inf)
        throw ValidationError("check_limit_condition: not a limit condition id");

    const std::vector<double> ts = interior_grid(t_lo, t_hi, 21);
    std::vector<double> ladder;
    if (toward_zero_u)
        for (int k = 1; k <= 12; ++k) ladder.push_back(std::pow(10.0, -k));
    else
        for (int k = 1; k <= 8; ++k) ladder.push_back(std::pow(10.0, k));

    // Uniformity over t: a ->0 condition is judged by the max over t, a ->inf
    // condition by the min.
    std::vector<double> extremal(ladder.size());
    std::vector<double> arg_t(ladder.size());
    for (std::size_t k = 0; k < ladder.size(); ++k) {
        const double u = ladder[k];
        double ext = 0.0, at = ts.front();
        bool first = true;
        for (double t : ts) {
            const double v = f(t, u) / u;
            if (!std::isfinite(v))
                throw NumericError("limit check: non-finite ratio at t=" + std::to_string(t) +
                                   ", u=" + std::to_string(u));
            const bool better = first || (expect_zero ? v > ext : v < ext);
            if (better) {
                ext = v;
                at = t;
                first = false;
            }
        }
        extremal[k] = ext;
        arg_t[k] = at;
    }

    const double last = extremal.back();
    bool monotone = true;
    for (std::size_t k = ladder.size() - 4; k + 1 < ladder.size(); ++k)
        if (expect_zero ? extremal[k + 1] > extremal[k] : extremal[k + 1] < extremal[k])
            monotone = false;

    HypothesisReport rep;
    rep.id = which;
    rep.worst_t = arg_t.back();
    rep.worst_u = ladder.back();
    rep.samples = static_cast<int>(ladder.size() * ts.size());
    rep.limit_estimate = last;
    if (expect_zero) {
        rep.holds = last <= kZeroLimit;
        rep.margin = kZeroLimit - last;
    } else {
        rep.holds = last >= kInfLimit;
        rep.margin = last - kInfLimit;
    }
    rep.note = std::string("sampled trend, not a proof; ratio at the ladder end is ") +
               short_num(last) + (monotone ? " (monotone tail)" : " (non-monotone tail)");
    return rep;
}

Certification certify_T11(double R, std::optional<double> m_override, const ReducedBVP& bvp,
                          const CertifyOptions& opts) {
    if (!(R > 0.0))
        throw ValidationError("certify_T11: R must be positive");
    const double I = weight_integral(bvp, 0.25, 0.75, opts.rule);
    const double u_min = opts.u_min.value_or(default_u_min(R));
    const RatioStats stats = min_ratio(bvp.f, 0.25, 0.75, R, u_min, opts.grid);
    const double m = m_override.value_or(stats.value);
    require_positive_ratio(m, "m_R");

    LambdaRange range{Theorem::T1_1, 16.0 / (m * I), std::nullopt,
                      ratio_inputs(R, true, m, stats.value, m_override.has_value(), I, 0.25,
                                   0.75),
                      "sup u <= R"};
    return Certification{std::move(range), {check_limit_condition(Hypothesis::F0_Zero, bvp.f)}};
}

Certification certify_T12(double R, std::optional<double> M_override, const ReducedBVP& bvp,
                          const CertifyOptions& opts) {
    if (!(R > 0.0))
        throw ValidationError("certify_T12: R must be positive");
    const double I = weight_integral(bvp, 0.0, 1.0, opts.rule);
    const double u_min = opts.u_min.value_or(default_u_min(R));
    const RatioStats stats = max_ratio(bvp.f, 0.0, 1.0, R, u_min, opts.grid);
    const double M = M_override.value_or(stats.value);
    require_positive_ratio(M, "M_R");

    LambdaRange range{Theorem::T1_2, std::nullopt, 1.0 / (M * I),
                      ratio_inputs(R, true, M, stats.value, M_override.has_value(), I, 0.0,
                                   1.0),
                      "sup u <= R"};
    return Certification{std::move(range), {check_limit_condition(Hypothesis::F0_Inf, bvp.f)}};
}

Certification certify_T13(double r, std::optional<double> m_override, const ReducedBVP& bvp,
                          const CertifyOptions& opts) {
    if (!(r > 0.0))
        throw ValidationError("certify_T13: r must be positive");
    const double I = weight_integral(bvp, 0.25, 0.75, opts.rule);
    const double u_min = opts.u_min.value_or(default_u_min(r));
    const RatioStats stats = min_ratio(bvp.f, 0.25, 0.75, r, u_min, opts.grid);
    const double m = m_override.value_or(stats.value);
    require_positive_ratio(m, "m_r");

    LambdaRange range{Theorem::T1_3, 4.0 / (m * I), std::nullopt,
                      ratio_inputs(r, false, m, stats.value, m_override.has_value(), I, 0.25,
                                   0.75),
                      "||u|| >= r"};
    return Certification{std::move(range),
                         {check_limit_condition(Hypothesis::FInf_Zero, bvp.f)}};
}

Certification certify_T14(double r, std::optional<double> M_override, const ReducedBVP& bvp,
                          const CertifyOptions& opts) {
    if (!(r > 0.0))
        throw ValidationError("certify_T14: r must be positive");
    const double I = weight_integral(bvp, 0.0, 1.0, opts.rule);
    const double u_min = opts.u_min.value_or(default_u_min(r));
    const RatioStats stats = max_ratio(bvp.f, 0.0, 1.0, r, u_min, opts.grid);
    const double M = M_override.value_or(stats.value);
    require_positive_ratio(M, "M_r");

    LambdaRange range{Theorem::T1_4, std::nullopt, 1.0 / (M * I),
                      ratio_inputs(r, false, M, stats.value, M_override.has_value(), I, 0.0,
                                   1.0),
                      "||u|| >= r"};
    // The superlinear growth condition is stated on an interior band [a,b];
    // the quarter band matches the kernel bound used by the threshold.
    return Certification{std::move(range),
                         {check_limit_condition(Hypothesis::FInf_Inf, bvp.f, 0.25, 0.75)}};
}

namespace {

Certification eigen_window(Theorem which, const ScalarFn& b, double c, double delta,
                           double R, const ReducedBVP& bvp, const CertifyOptions& opts) {
    if (!(c > 1.0))
        throw ValidationError("certify: requires c > 1");
    if (!(delta > 0.0 && delta < R))
        throw ValidationError("certify: requires 0 < delta < R");

    const ScalarFn qb = [&bvp, &b](double t) { return bvp.q(t) * b(t); };
    const EigenResult eig = first_eigen_shoot(qb, opts.eigen);

    LambdaRangeInputs in;
    in.radius_R = R;
    in.delta = delta;
    in.c = c;
    in.lambda1_qb = eig.lambda1;

    LambdaRange range{which, eig.lambda1 / c, eig.lambda1, in, "positive solution"};

    const std::vector<double> ts = interior_grid(0.0, 1.0, 21);
    const std::vector<double> low = geometric_ladder(delta * 1e-8, delta * (1.0 - 1e-9), 48);
    const std::vector<double> high = geometric_ladder(R, 10.0 * R, 48);

    auto below_b = [&](double t, double u) { return b(t) * u - bvp.f(t, u); };
    auto above_cb = [&](double t, double u) { return bvp.f(t, u) - c * b(t) * u; };

    std::vector<HypothesisReport> hyps;
    if (which == Theorem::T4_1) {
        hyps.push_back(sample_inequality(Hypothesis::H1, ts, low, below_b,
                                         "sampled on (0,delta)"));
        hyps.push_back(sample_inequality(Hypothesis::H2, ts, high, above_cb,
                                         "sampled on [R, 10R]"));
    } else {
        hyps.push_back(sample_inequality(Hypothesis::H3, ts, high, below_b,
                                         "sampled on [R, 10R]"));
        hyps.push_back(sample_inequality(Hypothesis::H4, ts, low, above_cb,
                                         "sampled on (0,delta)"));
    }
    return Certification{std::move(range), std::move(hyps)};
}

} // namespace

Certification certify_T41(const ScalarFn& b, double c, double delta, double R,
                          const ReducedBVP& bvp, const CertifyOptions& opts) {
    return eigen_window(Theorem::T4_1, b, c, delta, R, bvp, opts);
}

Certification certify_T42(const ScalarFn& b, double c, double delta, double R,
                          const ReducedBVP& bvp, const CertifyOptions& opts) {
    return eigen_window(Theorem::T4_2, b, c, delta, R, bvp, opts);
}

} // namespace abvp
