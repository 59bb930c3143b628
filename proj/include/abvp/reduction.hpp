#pragma once

#include <functional>
#include <optional>
#include <string>

#include "abvp/expr.hpp"
#include "abvp/quadrature.hpp"

namespace abvp {

using BivariateFn = std::function<double(double, double)>;

/// The PDE-level input: -Laplace(v) = lambda h(|x|, v) on the annulus
/// r1 < |x| < r2 in R^N with zero Dirichlet data.
struct AnnularProblem {
    int N;        // dimension, >= 2
    double r1;    // inner radius, > 0
    double r2;    // outer radius, > r1
    Expr h;       // nonlinearity in (r, u)

    void validate() const;
};

/// The ODE-level object everything operates on:
///   u''(t) + lambda q(t) f(t, u(t)) = 0 on (0,1), u(0) = u(1) = 0.
/// q is kept as a closed-form evaluable so quadrature can sample it anywhere.
struct ReducedBVP {
    ScalarFn q;                 // weight, positive and bounded on [0,1]
    BivariateFn f;              // nonlinearity f(t,u)
    std::string provenance;     // "direct" or "annulus(N,r1,r2)"
    std::optional<double> A;    // present only when N >= 3
    std::optional<double> B;
};

/// Reduces the annular problem to the interval BVP. For N = 2,
///   q(t) = [r2 (r1/r2)^t log(r2/r1)]^2,  f(t,u) = h(r2 (r1/r2)^t, u);
/// for N >= 3, with A = (r1 r2)^(N-2) / (r2^(N-2) - r1^(N-2)) and
/// B = r2^(N-2) / (r2^(N-2) - r1^(N-2)),
///   q(t) = (N-2)^-2 A^(2/(N-2)) / (B-t)^(2(N-1)/(N-2)),
///   f(t,u) = h((A/(B-t))^(1/(N-2)), u).
///
/// Note on orientation: for N = 2 the weight formula above is anchored at
/// the decreasing coordinate r2 (r1/r2)^t, while map_t_to_r below is
/// normalized increasing (r(0)=r1, r(1)=r2). The two coordinates differ by
/// t -> 1-t, under which the BVP is invariant (both boundary values are
/// zero), so solution norms, the kernel-weight integrals and eigenvalues
/// are identical either way.
ReducedBVP reduce(const AnnularProblem& p);

/// Builds a ReducedBVP directly from user expressions q(t) and f(t,u).
ReducedBVP make_interval_bvp(const Expr& q, const Expr& f);

/// Coordinate map t -> r, strictly increasing with r(0) = r1, r(1) = r2.
double map_t_to_r(double t, const AnnularProblem& p);

/// Inverse of map_t_to_r: t(r1) = 0, t(r2) = 1.
double map_r_to_t(double r, const AnnularProblem& p);

} // namespace abvp
