#pragma once

#include <optional>
#include <string>

#include "abvp/eigen.hpp"
#include "abvp/quadrature.hpp"
#include "abvp/reduction.hpp"
#include "abvp/solver.hpp"

namespace abvp {

/// Parsed problem file. JSON with a strict schema: unknown keys are errors.
///
///   mode "annulus":  N (integer >= 2), r1, r2 (numbers), h (expr in r,u)
///   mode "interval": f (expr in t,u), q (expr in t, default "1")
///   common optional: b (expr in t), lambda, c, delta, R, r,
///                    overrides {m, M}, solver {picard{...}, shoot{...},
///                    quadrature{...}, eigen{...}, fd_n}
struct ProblemFile {
    enum class Mode { Annulus, Interval };

    Mode mode;
    std::optional<AnnularProblem> annulus;
    std::optional<Expr> q_expr;  // interval mode
    std::optional<Expr> f_expr;

    std::optional<Expr> b_expr;
    std::optional<double> lambda;
    std::optional<double> c;
    std::optional<double> delta;
    std::optional<double> R;
    std::optional<double> r;
    std::optional<double> m_override;
    std::optional<double> M_override;

    PicardConfig picard;
    ShootConfig shoot;
    QuadratureRule quadrature;
    ShootEigenConfig eigen;
    int fd_n = 1024;

    static ProblemFile parse_text(const std::string& json_text);
    static ProblemFile load(const std::string& path);

    /// The ODE-level object: reduce() for annulus mode, the user's q/f
    /// otherwise.
    ReducedBVP to_bvp() const;

    /// b(t) as an evaluable, defaulting to 1.
    ScalarFn b_fn() const;
};

} // namespace abvp
