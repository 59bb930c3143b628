#pragma once

#include <functional>

#include "abvp/reduction.hpp"

namespace abvp {

/// Extremum of the ratio f(t,u)/u over a rectangle [a,b] x [u_min, U],
/// found by a grid scan plus one golden-section refinement per coordinate
/// around the grid arg-extremum. These ratios scale every lambda threshold.
struct RatioStats {
    enum class Kind { Min, Max };

    double value;      // f(arg_t, arg_u) / arg_u
    double arg_t;
    double arg_u;
    Kind kind;
    double t_lo, t_hi;
    double u_min, u_max;
    int grid_t, grid_u;
    bool refined;
};

struct RatioGrid {
    int n_t = 64;
    int n_u = 256;
};

/// Default lower u cutoff: the ratio divides by u, so u = 0 is excluded.
inline double default_u_min(double U) { return 1e-8 * U; }

RatioStats min_ratio(const BivariateFn& f, double t_lo, double t_hi, double U,
                     double u_min, const RatioGrid& grid = {});

RatioStats max_ratio(const BivariateFn& f, double t_lo, double t_hi, double U,
                     double u_min, const RatioGrid& grid = {});

} // namespace abvp
