#pragma once

#include <string>
#include <vector>

#include "abvp/grid_function.hpp"
#include "abvp/reduction.hpp"

namespace abvp {

enum class SolveMethod { Picard, Shoot };

/// One computed solution candidate of u'' + lambda q f(t,u) = 0 with its
/// diagnostics. Non-convergence is a reported outcome, not an error.
struct SolveReport {
    GridFunction u;
    double sup_norm;
    double min_on_quarter;   // min over grid nodes with t in [1/4, 3/4]
    SolveMethod method;
    double lambda;
    int iterations;
    bool converged;
    double residual_integral;  // ||u - Tu||_inf on the report grid
    double residual_ode;       // max_i |D2 u_i + lambda q(t_i) f(t_i, u_i)|
    double initial_slope = 0;  // u'(0) found by shooting; 0 for Picard
};

/// The integral operator (Tu)(t) = lambda \int_0^1 G(t,s) q(s) f(s, u(s)) ds
/// evaluated at every node of u's grid. u is interpolated piecewise-linearly
/// between nodes; the quadrature panels are aligned with the grid intervals,
/// which places both the kink of G at s = t and the interpolation kinks on
/// panel boundaries. The output vanishes exactly at both endpoints.
GridFunction apply_T(const GridFunction& u, double lambda, const ReducedBVP& bvp,
                     int gauss_points = 5);

struct PicardConfig {
    // The grid must resolve the centered-difference ODE residual to
    // 1e-4 * lambda * sup|qf|; that bound scales like h^2 lambda^2, and 8193
    // nodes keep it for lambda up to a few hundred. apply_T costs O(n), so
    // the finer default is cheap.
    std::size_t grid_n = 8193;
    double damping = 0.5;     // in (0, 1]
    double tol = 1e-10;       // stop when ||u - Tu|| <= tol * max(1, ||u||)
    int max_iter = 1000;
    double u0_sup = 1.0;      // sup norm of the default start u0_sup * 4t(1-t)
    int gauss_points = 5;
};

/// Damped fixed-point iteration u <- (1-d) u + d Tu starting from u0.
SolveReport picard_solve(const ReducedBVP& bvp, double lambda, const GridFunction& u0,
                         const PicardConfig& cfg = {});

/// Same, starting from the default positive cap u0_sup * 4 t (1-t); a
/// positive start is needed because u = 0 is a fixed point whenever
/// f(t,0) = 0, and its size picks which basin a non-contractive f lands in.
SolveReport picard_solve(const ReducedBVP& bvp, double lambda, const PicardConfig& cfg = {});

struct ShootConfig {
    double slope_lo = 1e-4;
    double slope_hi = 1e4;
    int n_scan = 64;          // geometric slope scan points
    double tol = 1e-10;       // accept root when |u(1)| <= tol * max(1, ||u||)
    int rk4_steps = 4096;
    int report_refine = 8;    // final reported trajectory uses steps*refine
    int gauss_points = 5;
};

/// Shooting: integrates u'' = -lambda q f(t, max(u,0)) from u(0)=0, u'(0)=s
/// with classical RK4, scans slopes geometrically, brackets the sign changes
/// of u(1) and bisects each to a root. Each accepted root is re-integrated on
/// a refined grid and checked for positivity; roots whose trajectory leaves
/// the cone are discarded. Returns the roots in increasing slope order;
/// an empty list means no sign change was found (not an error).
std::vector<SolveReport> shoot_solve(const ReducedBVP& bvp, double lambda,
                                     const ShootConfig& cfg = {});

/// u(1) of the shooting initial value problem at one slope; the quantity the
/// scan brackets on.
double shoot_end_value(const ReducedBVP& bvp, double lambda, double slope,
                       int rk4_steps = 4096);

struct SweepConfig {
    SolveMethod method = SolveMethod::Shoot;
    PicardConfig picard;
    ShootConfig shoot;
};

struct SweepRow {
    double lambda;
    int n_solutions;
    std::vector<double> sup_norms;     // one per solution, slope order
    std::vector<double> min_quarters;
    std::string error;                 // nonempty if this row failed
};

/// Independent solves per lambda; row order equals input order and per-row
/// failures are recorded in the row, never aborting the sweep.
std::vector<SweepRow> sweep(const ReducedBVP& bvp, const std::vector<double>& lambdas,
                            const SweepConfig& cfg = {});

/// Max over interior nodes of |D2 u_i + lambda q(t_i) f(t_i, u_i)| together
/// with the scale sup_i |q(t_i) f(t_i, u_i)| used for its tolerance.
struct OdeResidual {
    double residual;
    double qf_sup;
};
OdeResidual ode_residual(const GridFunction& u, double lambda, const ReducedBVP& bvp);

} // namespace abvp
