#include "abvp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "abvp/quadrature.hpp"

namespace abvp {

namespace {

constexpr double kSlopeEps = 4.0 * 2.220446049250313e-16;  // bisect to this relative width

double sampled_g(const ReducedBVP& bvp, double s, double u_value) {
    double g;
    try {
        g = bvp.q(s) * bvp.f(s, u_value);
    } catch (const EvalError& e) {
        throw EvalError(std::string(e.what()) + " while sampling q*f at node s=" +
                            std::to_string(s),
                        "q(s)*f(s,u(s))");
    }
    if (!std::isfinite(g))
        throw NumericError("apply_T: q*f non-finite at node s=" + std::to_string(s));
    return g;
}

GridFunction default_start(std::size_t n, double sup) {
    return GridFunction::sample(n, [sup](double t) { return sup * 4.0 * t * (1.0 - t); });
}

double quarter_min(const GridFunction& u) { return u.min_on(0.25, 0.75); }

// RK4 trajectory of u'' = -lambda q(t) f(t, max(u, 0)), u(0) = 0, u'(0) = slope.
struct Trajectory {
    std::vector<double> u;
    double u_end;
    double sup;
    double min_interior;
};

Trajectory integrate_shoot(const ReducedBVP& bvp, double lambda, double slope, int steps,
                           bool keep) {
    const double h = 1.0 / steps;
    auto accel = [&](double t, double u) {
        return -lambda * sampled_g(bvp, t, u > 0.0 ? u : 0.0);
    };
    Trajectory tr;
    if (keep) {
        tr.u.resize(steps + 1);
        tr.u[0] = 0.0;
    }
    tr.sup = 0.0;
    tr.min_interior = 0.0;
    double u = 0.0, v = slope;
    for (int i = 0; i < steps; ++i) {
        const double t = i * h;
        const double k1u = v, k1v = accel(t, u);
        const double k2u = v + 0.5 * h * k1v, k2v = accel(t + 0.5 * h, u + 0.5 * h * k1u);
        const double k3u = v + 0.5 * h * k2v, k3v = accel(t + 0.5 * h, u + 0.5 * h * k2u);
        const double k4u = v + h * k3v, k4v = accel(t + h, u + h * k3u);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (!std::isfinite(u) || !std::isfinite(v))
            throw NumericError("shoot: non-finite state at t=" + std::to_string(t + h));
        if (keep) tr.u[i + 1] = u;
        if (std::fabs(u) > tr.sup) tr.sup = std::fabs(u);
        if (i + 1 < steps && u < tr.min_interior) tr.min_interior = u;
    }
    tr.u_end = u;
    return tr;
}

} // namespace

GridFunction apply_T(const GridFunction& u, double lambda, const ReducedBVP& bvp,
                     int gauss_points) {
    const std::size_t n = u.size();
    const double sup = u.sup_norm();
    for (std::size_t i = 0; i < n; ++i)
        if (u[i] < -1e-6 * std::max(1.0, sup))
            throw ValidationError("apply_T: input leaves the cone (u < 0 at node " +
                                  std::to_string(i) + ")");

    auto [nodes, weights] = gauss_legendre(gauss_points);
    const double h = 1.0 / static_cast<double>(n - 1);

    // Per grid interval j: moments of g(s) = q(s) f(s, u_lin(s)) against s
    // and (1-s). Prefix/suffix sums then assemble
    //   (Tu)(t) = lambda [ (1-t) \int_0^t s g + t \int_t^1 (1-s) g ].
    std::vector<double> mom_s(n - 1, 0.0), mom_1ms(n - 1, 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double t0 = static_cast<double>(j) * h;
        const double uj = std::max(u[j], 0.0);
        const double uj1 = std::max(u[j + 1], 0.0);
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const double frac = 0.5 + 0.5 * nodes[k];
            const double s = t0 + h * frac;
            const double w = 0.5 * h * weights[k];
            const double g = sampled_g(bvp, s, uj + frac * (uj1 - uj));
            mom_s[j] += w * s * g;
            mom_1ms[j] += w * (1.0 - s) * g;
        }
    }

    std::vector<double> prefix(n, 0.0), suffix(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
        prefix[i] = prefix[i - 1] + mom_s[i - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        suffix[i] = suffix[i + 1] + mom_1ms[i];

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * h;
        out[i] = lambda * ((1.0 - t) * prefix[i] + t * suffix[i]);
    }
    out.front() = 0.0;
    out.back() = 0.0;
    return GridFunction(std::move(out));
}

OdeResidual ode_residual(const GridFunction& u, double lambda, const ReducedBVP& bvp) {
    const std::size_t n = u.size();
    const double h = 1.0 / static_cast<double>(n - 1);
    double worst = 0.0, qf_sup = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double t = static_cast<double>(i) * h;
        const double qf = bvp.q(t) * bvp.f(t, std::max(u[i], 0.0));
        const double d2 = (u[i - 1] - 2.0 * u[i] + u[i + 1]) / (h * h);
        worst = std::max(worst, std::fabs(d2 + lambda * qf));
        qf_sup = std::max(qf_sup, std::fabs(qf));
    }
    return {worst, qf_sup};
}

SolveReport picard_solve(const ReducedBVP& bvp, double lambda, const GridFunction& u0,
                         const PicardConfig& cfg) {
    if (!(cfg.damping > 0.0 && cfg.damping <= 1.0))
        throw ValidationError("picard_solve: damping must lie in (0, 1]");
    if (!(lambda > 0.0))
        throw ValidationError("picard_solve: lambda must be positive");

    GridFunction u = u0;
    const std::size_t n = u.size();
    int iterations = 0;
    bool converged = false;
    double residual = 0.0;

    for (;;) {
        GridFunction tu = apply_T(u, lambda, bvp, cfg.gauss_points);
        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            residual = std::max(residual, std::fabs(u[i] - tu[i]));
        if (residual <= cfg.tol * std::max(1.0, u.sup_norm())) {
            converged = true;
            break;
        }
        if (iterations >= cfg.max_iter)
            break;  // non-convergence is a result, not an error
        for (std::size_t i = 0; i < n; ++i)
            u[i] = (1.0 - cfg.damping) * u[i] + cfg.damping * tu[i];
        ++iterations;
    }

    OdeResidual ode = ode_residual(u, lambda, bvp);
    const double sup = u.sup_norm();
    const double minq = quarter_min(u);
    return SolveReport{std::move(u), sup,        minq,     SolveMethod::Picard, lambda,
                       iterations,   converged,  residual, ode.residual};
}

SolveReport picard_solve(const ReducedBVP& bvp, double lambda, const PicardConfig& cfg) {
    return picard_solve(bvp, lambda, default_start(cfg.grid_n, cfg.u0_sup), cfg);
}

std::vector<SolveReport> shoot_solve(const ReducedBVP& bvp, double lambda,
                                     const ShootConfig& cfg) {
    if (!(cfg.slope_lo > 0.0) || !(cfg.slope_hi > cfg.slope_lo))
        throw ValidationError("shoot_solve: requires 0 < slope_lo < slope_hi");
    if (cfg.n_scan < 2)
        throw ValidationError("shoot_solve: n_scan must be >= 2");
    if (!(lambda > 0.0))
        throw ValidationError("shoot_solve: lambda must be positive");

    auto end_value = [&](double s) {
        return integrate_shoot(bvp, lambda, s, cfg.rk4_steps, false).u_end;
    };

    // Geometric slope scan.
    const double ratio = std::pow(cfg.slope_hi / cfg.slope_lo,
                                  1.0 / static_cast<double>(cfg.n_scan - 1));
    std::vector<double> slopes(cfg.n_scan), ends(cfg.n_scan);
    for (int i = 0; i < cfg.n_scan; ++i) {
        slopes[i] = cfg.slope_lo * std::pow(ratio, i);
        ends[i] = end_value(slopes[i]);
    }

    struct Root {
        double slope;
        int iterations;
    };
    std::vector<Root> roots;
    for (int i = 0; i < cfg.n_scan; ++i) {
        if (ends[i] == 0.0) {
            roots.push_back({slopes[i], 0});
            continue;
        }
        if (i + 1 < cfg.n_scan && ends[i + 1] != 0.0 && (ends[i] > 0.0) != (ends[i + 1] > 0.0)) {
            double a = slopes[i], b = slopes[i + 1];
            double fa = ends[i];
            int iters = 0;
            while (b - a > kSlopeEps * b && iters < 200) {
                const double mid = 0.5 * (a + b);
                const double fm = end_value(mid);
                ++iters;
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if ((fm > 0.0) == (fa > 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            roots.push_back({0.5 * (a + b), iters});
        }
    }

    std::vector<SolveReport> reports;
    const int fine_steps = cfg.rk4_steps * std::max(1, cfg.report_refine);
    for (Root root : roots) {
        // Re-bracket on the refined grid and polish the slope there so the
        // reported trajectory satisfies the boundary condition on its own grid.
        double s = root.slope;
        if (cfg.report_refine > 1) {
            auto fine_end = [&](double x) {
                return integrate_shoot(bvp, lambda, x, fine_steps, false).u_end;
            };
            double width = 1e-9 * s;
            double a = s - width, b = s + width;
            double fa = fine_end(a), fb = fine_end(b);
            for (int widen = 0; widen < 6 && fa != 0.0 && fb != 0.0 &&
                                (fa > 0.0) == (fb > 0.0);
                 ++widen) {
                width *= 10.0;
                a = s - width;
                b = s + width;
                if (a <= 0.0) a = s * 0.5;
                fa = fine_end(a);
                fb = fine_end(b);
            }
            if (fa == 0.0) {
                s = a;
            } else if (fb == 0.0) {
                s = b;
            } else if ((fa > 0.0) != (fb > 0.0)) {
                int iters = 0;
                while (b - a > kSlopeEps * b && iters < 200) {
                    const double mid = 0.5 * (a + b);
                    const double fm = fine_end(mid);
                    ++iters;
                    if (fm == 0.0) {
                        a = b = mid;
                        break;
                    }
                    if ((fm > 0.0) == (fa > 0.0)) {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                root.iterations += iters;
                s = 0.5 * (a + b);
            }
            // else: keep the coarse slope; the convergence check below decides.
        }

        Trajectory tr = integrate_shoot(bvp, lambda, s, fine_steps, true);
        const bool converged = std::fabs(tr.u_end) <= cfg.tol * std::max(1.0, tr.sup);
        // Positivity of the accepted trajectory: transient dips below zero at
        // rounding scale are tolerated, genuinely negative arcs are not ours.
        if (tr.min_interior < -1e-9 * std::max(1.0, tr.sup))
            continue;

        tr.u.front() = 0.0;
        tr.u.back() = 0.0;
        GridFunction u(std::move(tr.u));
        OdeResidual ode = ode_residual(u, lambda, bvp);
        GridFunction tu = apply_T(u, lambda, bvp, cfg.gauss_points);
        double res_int = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i)
            res_int = std::max(res_int, std::fabs(u[i] - tu[i]));

        const double sup = u.sup_norm();
        const double minq = quarter_min(u);
        reports.push_back(SolveReport{std::move(u), sup, minq, SolveMethod::Shoot, lambda,
                                      root.iterations, converged, res_int, ode.residual, s});
    }
    return reports;
}

double shoot_end_value(const ReducedBVP& bvp, double lambda, double slope, int rk4_steps) {
    return integrate_shoot(bvp, lambda, slope, rk4_steps, false).u_end;
}

std::vector<SweepRow> sweep(const ReducedBVP& bvp, const std::vector<double>& lambdas,
                            const SweepConfig& cfg) {
    for (double l : lambdas)
        if (!std::isfinite(l) || l <= 0.0)
            throw ValidationError("sweep: lambdas must be finite and positive");

    std::vector<SweepRow> rows;
    rows.reserve(lambdas.size());
    for (double l : lambdas) {
        SweepRow row{l, 0, {}, {}, ""};
        try {
            if (cfg.method == SolveMethod::Shoot) {
                for (const SolveReport& rep : shoot_solve(bvp, l, cfg.shoot)) {
                    if (!rep.converged) continue;
                    row.sup_norms.push_back(rep.sup_norm);
                    row.min_quarters.push_back(rep.min_on_quarter);
                }
            } else {
                SolveReport rep = picard_solve(bvp, l, cfg.picard);
                if (rep.converged) {
                    row.sup_norms.push_back(rep.sup_norm);
                    row.min_quarters.push_back(rep.min_on_quarter);
                } else {
                    row.error = "picard did not converge";
                }
            }
            row.n_solutions = static_cast<int>(row.sup_norms.size());
        } catch (const Error& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace abvp
