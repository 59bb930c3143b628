#include "abvp/reduction.hpp"

#include <cmath>
#include <memory>
#include <string>

namespace abvp {

namespace {

// r^(N-2): exact repeated multiplication for moderate N, logs beyond that
// to dodge intermediate overflow.
double pow_dim(double r, int nm2) {
    if (nm2 <= 20) {
        double acc = 1.0;
        for (int i = 0; i < nm2; ++i) acc *= r;
        return acc;
    }
    return std::exp(static_cast<double>(nm2) * std::log(r));
}

void check_finite(double v, const char* what) {
    if (!std::isfinite(v))
        throw NumericError(std::string("reduce: overflow computing ") + what);
}

// Sampled sanity checks of the ReducedBVP invariants: q positive and finite
// on [0,1], f(t,0) >= 0 wherever it evaluates.
void validate_bvp(const ReducedBVP& bvp) {
    constexpr int kSamples = 1001;
    for (int i = 0; i < kSamples; ++i) {
        const double t = static_cast<double>(i) / (kSamples - 1);
        const double qv = bvp.q(t);
        if (!std::isfinite(qv) || qv <= 0.0)
            throw ValidationError("reduced BVP: q(t) must be positive and finite, got q(" +
                                  std::to_string(t) + ") = " + std::to_string(qv));
        try {
            const double f0 = bvp.f(t, 0.0);
            if (std::isfinite(f0) && f0 < 0.0)
                throw ValidationError("reduced BVP: f(t,0) < 0 at t = " + std::to_string(t));
        } catch (const EvalError&) {
            // f may be singular at u = 0 (e.g. u^-1); that is allowed.
        }
    }
}

} // namespace

void AnnularProblem::validate() const {
    if (N < 2)
        throw ValidationError("AnnularProblem: N must be >= 2");
    if (!(r1 > 0.0))
        throw ValidationError("AnnularProblem: r1 must be positive");
    if (!(r2 > r1))
        throw ValidationError("AnnularProblem: requires r1 < r2");
}

ReducedBVP reduce(const AnnularProblem& p) {
    p.validate();
    ReducedBVP out;
    {
        char buf[96];
        std::snprintf(buf, sizeof buf, "annulus(%d,%g,%g)", p.N, p.r1, p.r2);
        out.provenance = buf;
    }
    const auto h = std::make_shared<Expr>(p.h);

    if (p.N == 2) {
        const double r1 = p.r1, r2 = p.r2;
        const double lg = std::log(r2 / r1);
        auto radius = [r1, r2](double t) { return r2 * std::pow(r1 / r2, t); };
        out.q = [radius, lg](double t) {
            const double v = radius(t) * lg;
            return v * v;
        };
        out.f = [h, radius](double t, double u) { return h->eval(Bindings::at_ru(radius(t), u)); };
    } else {
        const int nm2 = p.N - 2;
        const double p1 = pow_dim(p.r1, nm2);
        const double p2 = pow_dim(p.r2, nm2);
        check_finite(p1, "r1^(N-2)");
        check_finite(p2, "r2^(N-2)");
        const double A = p1 * p2 / (p2 - p1);
        const double B = p2 / (p2 - p1);
        check_finite(A, "A");
        check_finite(B, "B");
        out.A = A;
        out.B = B;

        const double inv_nm2 = 1.0 / static_cast<double>(nm2);
        const double q_scale = inv_nm2 * inv_nm2 * std::pow(A, 2.0 * inv_nm2);
        check_finite(q_scale, "A^(2/(N-2))");
        const double q_expo = 2.0 * (p.N - 1) * inv_nm2;
        auto radius = [A, B, inv_nm2](double t) { return std::pow(A / (B - t), inv_nm2); };

        out.q = [q_scale, q_expo, B](double t) {
            return q_scale / std::pow(B - t, q_expo);
        };
        out.f = [h, radius](double t, double u) { return h->eval(Bindings::at_ru(radius(t), u)); };
    }
    validate_bvp(out);
    return out;
}

ReducedBVP make_interval_bvp(const Expr& q, const Expr& f) {
    ReducedBVP out;
    out.provenance = "direct";
    const auto qe = std::make_shared<Expr>(q);
    const auto fe = std::make_shared<Expr>(f);
    out.q = [qe](double t) { return qe->eval(Bindings::at_t(t)); };
    out.f = [fe](double t, double u) { return fe->eval(Bindings::at_tu(t, u)); };
    validate_bvp(out);
    return out;
}

double map_t_to_r(double t, const AnnularProblem& p) {
    p.validate();
    if (!(t >= 0.0 && t <= 1.0))
        throw ValidationError("map_t_to_r: t must lie in [0,1]");
    if (t == 0.0) return p.r1;
    if (t == 1.0) return p.r2;
    if (p.N == 2)
        return p.r1 * std::pow(p.r2 / p.r1, t);
    const int nm2 = p.N - 2;
    const double p1 = pow_dim(p.r1, nm2);
    const double p2 = pow_dim(p.r2, nm2);
    const double A = p1 * p2 / (p2 - p1);
    const double B = p2 / (p2 - p1);
    return std::pow(A / (B - t), 1.0 / nm2);
}

double map_r_to_t(double r, const AnnularProblem& p) {
    p.validate();
    if (!(r >= p.r1 && r <= p.r2))
        throw ValidationError("map_r_to_t: r must lie in [r1,r2]");
    if (r == p.r1) return 0.0;
    if (r == p.r2) return 1.0;
    if (p.N == 2)
        return std::log(r / p.r1) / std::log(p.r2 / p.r1);
    const int nm2 = p.N - 2;
    const double p1 = pow_dim(p.r1, nm2);
    const double p2 = pow_dim(p.r2, nm2);
    const double A = p1 * p2 / (p2 - p1);
    const double B = p2 / (p2 - p1);
    return B - A / pow_dim(r, nm2);
}

} // namespace abvp
