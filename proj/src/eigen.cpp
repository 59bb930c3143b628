#include "abvp/eigen.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace abvp {

namespace {

void validate_weight(const ScalarFn& m) {
    constexpr int kSamples = 1001;
    int positive = 0;
    for (int i = 0; i < kSamples; ++i) {
        const double t = static_cast<double>(i) / (kSamples - 1);
        const double v = m(t);
        if (!std::isfinite(v))
            throw ValidationError("eigen: weight m non-finite at t = " + std::to_string(t));
        if (v < 0.0)
            throw ValidationError("eigen: weight m negative at t = " + std::to_string(t));
        if (v > 0.0) ++positive;
    }
    if (positive == 0)
        throw ValidationError("eigen: weight m vanishes identically (degenerate)");
}

struct Trajectory {
    std::vector<double> u;   // u at the n+1 grid nodes
    bool vanished_inside;    // u hit <= 0 strictly before t = 1
    double u_end;
    double sup;
};

// RK4 on (u, v)' = (v, -lambda m u) from u(0)=0, v(0)=1.
Trajectory integrate_linear(const ScalarFn& m, double lambda, int steps) {
    Trajectory out;
    out.u.resize(steps + 1);
    out.u[0] = 0.0;
    out.vanished_inside = false;
    out.sup = 0.0;
    const double h = 1.0 / steps;
    double u = 0.0, v = 1.0;
    for (int i = 0; i < steps; ++i) {
        const double t = i * h;
        const double m0 = m(t);
        const double mh = m(t + 0.5 * h);
        const double m1 = m(t + h);
        const double k1u = v;
        const double k1v = -lambda * m0 * u;
        const double k2u = v + 0.5 * h * k1v;
        const double k2v = -lambda * mh * (u + 0.5 * h * k1u);
        const double k3u = v + 0.5 * h * k2v;
        const double k3v = -lambda * mh * (u + 0.5 * h * k2u);
        const double k4u = v + h * k3v;
        const double k4v = -lambda * m1 * (u + h * k3u);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        out.u[i + 1] = u;
        if (i + 1 < steps && u <= 0.0) out.vanished_inside = true;
        const double a = std::fabs(u);
        if (a > out.sup) out.sup = a;
    }
    out.u_end = u;
    return out;
}

double centered_residual(const std::vector<double>& phi, const ScalarFn& m, double lambda) {
    const std::size_t n = phi.size();
    const double h = 1.0 / static_cast<double>(n - 1);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double t = static_cast<double>(i) * h;
        const double d2 = (phi[i - 1] - 2.0 * phi[i] + phi[i + 1]) / (h * h);
        const double r = std::fabs(d2 + lambda * m(t) * phi[i]);
        if (r > worst) worst = r;
    }
    return worst;
}

GridFunction normalized_phi(std::vector<double> u) {
    double sup = 0.0;
    for (double v : u) sup = std::max(sup, std::fabs(v));
    if (sup <= 0.0)
        throw NumericError("eigen: eigenfunction collapsed to zero");
    for (double& v : u) v /= sup;
    u.front() = 0.0;
    u.back() = 0.0;
    return GridFunction(std::move(u));
}

// Tridiagonal solve for the fixed matrix (1/h^2) tridiag(-1, 2, -1),
// prefactored Thomas sweeps.
class Laplacian1D {
public:
    explicit Laplacian1D(int n, double h) : n_(n), h2_(h * h), cprime_(n) {
        double denom = 2.0;
        cprime_[0] = -1.0 / denom;
        for (int i = 1; i < n_; ++i) {
            denom = 2.0 + cprime_[i - 1];
            cprime_[i] = -1.0 / denom;
        }
    }

    // Solves (1/h^2) tridiag(-1,2,-1) x = b.
    void solve(const std::vector<double>& b, std::vector<double>& x) const {
        std::vector<double>& d = scratch_;
        d.resize(n_);
        d[0] = h2_ * b[0] / 2.0;
        for (int i = 1; i < n_; ++i) {
            const double denom = 2.0 + cprime_[i - 1];
            d[i] = (h2_ * b[i] + d[i - 1]) / denom;
        }
        x.resize(n_);
        x[n_ - 1] = d[n_ - 1];
        for (int i = n_ - 2; i >= 0; --i)
            x[i] = d[i] - cprime_[i] * x[i + 1];
    }

private:
    int n_;
    double h2_;
    std::vector<double> cprime_;
    mutable std::vector<double> scratch_;
};

// Smallest generalized eigenvalue of A u = lambda M u on n interior nodes.
double fd_smallest(const ScalarFn& m, int n, std::vector<double>* phi_out) {
    const double h = 1.0 / (n + 1);
    std::vector<double> mw(n);
    bool any_positive = false;
    for (int i = 0; i < n; ++i) {
        const double t = (i + 1) * h;
        mw[i] = m(t);
        if (!std::isfinite(mw[i]))
            throw ValidationError("eigen: weight m non-finite at t = " + std::to_string(t));
        if (mw[i] < 0.0)
            throw ValidationError("eigen: weight m negative at t = " + std::to_string(t));
        if (mw[i] > 0.0) any_positive = true;
    }
    if (!any_positive)
        throw ValidationError("eigen: weight m vanishes at every grid node (degenerate)");

    Laplacian1D A(n, h);
    std::vector<double> x(n), y, b(n);
    for (int i = 0; i < n; ++i)
        x[i] = std::sin(M_PI * (i + 1) * h);

    double lambda = 0.0, prev = -1.0;
    constexpr int kMaxSweeps = 10000;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        for (int i = 0; i < n; ++i) b[i] = mw[i] * x[i];
        A.solve(b, y);
        // Rayleigh quotient lambda = (y^T A y)/(y^T M y); A y = M x by construction.
        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) {
            num += y[i] * b[i];
            den += y[i] * mw[i] * y[i];
        }
        if (den <= 0.0)
            throw NumericError("eigen: inverse iteration hit a degenerate Rayleigh quotient");
        lambda = num / den;
        double sup = 0.0;
        for (double v : y) sup = std::max(sup, std::fabs(v));
        for (int i = 0; i < n; ++i) x[i] = y[i] / sup;
        if (prev > 0.0 && std::fabs(lambda - prev) <= 1e-14 * lambda)
            break;
        prev = lambda;
    }
    if (sweep == kMaxSweeps)
        throw NumericError("eigen: inverse power iteration failed to converge in 10^4 sweeps");

    if (phi_out) {
        // Sign-normalize positive (the Perron vector has one sign).
        double s = 0.0;
        for (double v : x) s += v;
        if (s < 0.0)
            for (double& v : x) v = -v;
        *phi_out = std::move(x);
    }
    return lambda;
}

} // namespace

EigenResult first_eigen_shoot(const ScalarFn& m, const ShootEigenConfig& cfg) {
    if (cfg.rk4_steps < 2048)
        throw ValidationError("first_eigen_shoot: rk4_steps must be >= 2048");
    if (!(cfg.bracket_lo > 0.0) || !(cfg.bracket_hi > cfg.bracket_lo))
        throw ValidationError("first_eigen_shoot: requires 0 < lo < hi");
    validate_weight(m);

    // P(lambda): the solution's first zero lies at or before t = 1. Monotone
    // in lambda, so bisection on P converges to lambda_1 regardless of how
    // many eigenvalues the initial bracket contains.
    auto crossed = [&](double lambda) {
        Trajectory tr = integrate_linear(m, lambda, cfg.rk4_steps);
        return tr.vanished_inside || tr.u_end <= 0.0;
    };

    double lo = cfg.bracket_lo, hi = cfg.bracket_hi;
    int expand = 0;
    while (crossed(lo)) {
        lo *= 0.5;
        if (++expand > 60)
            throw NumericError("first_eigen_shoot: bracket expansion exhausted (low side)");
    }
    expand = 0;
    while (!crossed(hi)) {
        hi *= 2.0;
        if (++expand > 60)
            throw NumericError("first_eigen_shoot: bracket expansion exhausted (high side)");
    }

    constexpr double kLambdaEps = 4.0 * 2.220446049250313e-16;
    for (int iter = 0; iter < 200 && (hi - lo) > kLambdaEps * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (crossed(mid) ? hi : lo) = mid;
    }
    const double lambda1 = 0.5 * (lo + hi);

    Trajectory tr = integrate_linear(m, lambda1, cfg.rk4_steps);
    if (std::fabs(tr.u_end) > cfg.tol * std::max(1.0, tr.sup))
        throw NumericError("first_eigen_shoot: |u(1)| = " + std::to_string(tr.u_end) +
                           " did not meet tolerance");

    EigenResult out{lambda1, normalized_phi(tr.u), EigenResult::Method::Pruefer, 0.0,
                    cfg.rk4_steps + 1};
    out.residual = centered_residual(out.phi.values(), m, lambda1);
    return out;
}

EigenResult first_eigen_fd(const ScalarFn& m, int n) {
    if (n < 16)
        throw ValidationError("first_eigen_fd: n must be >= 16");

    const double coarse = fd_smallest(m, n, nullptr);
    // The doubled grid takes 2n+1 interior nodes so the mesh width halves
    // exactly (1/(n+1) -> 1/(2n+2)) and the second-order Richardson factor
    // (4 fine - coarse)/3 cancels the h^2 term cleanly.
    std::vector<double> phi_inner;
    const double fine = fd_smallest(m, 2 * n + 1, &phi_inner);
    const double lambda1 = (4.0 * fine - coarse) / 3.0;

    std::vector<double> phi(phi_inner.size() + 2, 0.0);
    for (std::size_t i = 0; i < phi_inner.size(); ++i)
        phi[i + 1] = phi_inner[i];

    EigenResult out{lambda1, normalized_phi(std::move(phi)), EigenResult::Method::FdMatrix,
                    0.0, 2 * n + 3};
    out.residual = centered_residual(out.phi.values(), m, lambda1);
    return out;
}

} // namespace abvp
