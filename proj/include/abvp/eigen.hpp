#pragma once

#include "abvp/grid_function.hpp"
#include "abvp/quadrature.hpp"

namespace abvp {

/// First eigenpair of -u'' = lambda m(t) u, u(0) = u(1) = 0.
/// phi is sup-normalized to 1, vanishes exactly at the grid endpoints and is
/// positive at every interior node (the first eigenfunction has no interior
/// zeros); its forward difference at 0 is positive and its backward
/// difference at 1 negative.
struct EigenResult {
    enum class Method { Pruefer, FdMatrix };

    double lambda1;
    GridFunction phi;
    Method method;
    double residual;  // max_i |D2 phi_i + lambda1 m(t_i) phi_i|
    int grid_n;
};

struct ShootEigenConfig {
    double tol = 1e-10;          // accept when |u(1)| <= tol * ||u||
    double bracket_lo = 0.1;
    double bracket_hi = 100.0;
    int rk4_steps = 4096;        // >= 2048
};

/// Shooting solve: integrates u'' = -lambda m u, u(0)=0, u'(0)=1 with RK4 and
/// bisects on lambda for the first vanishing point of u landing at t = 1
/// (the Pruefer angle reaching pi). The bracket is expanded by factors of 2,
/// up to 60 times per side, until it straddles lambda_1.
EigenResult first_eigen_shoot(const ScalarFn& m, const ShootEigenConfig& cfg = {});

/// Independent cross-check: smallest generalized eigenvalue of the 3-point
/// finite-difference discretization on n interior nodes by inverse power
/// iteration, Richardson-extrapolated over n and 2n.
EigenResult first_eigen_fd(const ScalarFn& m, int n);

} // namespace abvp
