#include "abvp/ratio_bounds.hpp"

#include <cmath>
#include <string>

namespace abvp {

namespace {

constexpr double kGolden = 0.6180339887498949;  // 1/phi
constexpr double kRefineTol = 1e-9;

double ratio_at(const BivariateFn& f, double t, double u) {
    const double v = f(t, u) / u;
    if (!std::isfinite(v))
        throw NumericError("ratio f(t,u)/u non-finite at t=" + std::to_string(t) +
                           ", u=" + std::to_string(u));
    return v;
}

// Golden-section minimization of g on [lo,hi]; returns the argmin.
double golden_min(const std::function<double(double)>& g, double lo, double hi) {
    double a = lo, b = hi;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = g(x1), f2 = g(x2);
    while (b - a > kRefineTol * (1.0 + std::fabs(a) + std::fabs(b))) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = g(x2);
        }
    }
    return 0.5 * (a + b);
}

RatioStats scan(const BivariateFn& f, double t_lo, double t_hi, double U,
                double u_min, const RatioGrid& grid, RatioStats::Kind kind) {
    if (!(u_min > 0.0 && u_min < U))
        throw ValidationError("ratio bounds: requires 0 < u_min < U");
    if (!(t_lo < t_hi))
        throw ValidationError("ratio bounds: requires t_lo < t_hi");
    if (grid.n_t < 2 || grid.n_u < 2)
        throw ValidationError("ratio bounds: grid must be at least 2x2");

    // For a minimization view: sign flips the comparison for Kind::Max.
    const double sign = kind == RatioStats::Kind::Min ? 1.0 : -1.0;

    auto t_node = [&](int i) {
        return t_lo + (t_hi - t_lo) * static_cast<double>(i) / (grid.n_t - 1);
    };
    auto u_node = [&](int j) {
        return u_min + (U - u_min) * static_cast<double>(j) / (grid.n_u - 1);
    };

    int best_i = 0, best_j = 0;
    double best = sign * ratio_at(f, t_node(0), u_node(0));
    for (int i = 0; i < grid.n_t; ++i) {
        for (int j = 0; j < grid.n_u; ++j) {
            if (i == 0 && j == 0) continue;
            const double v = sign * ratio_at(f, t_node(i), u_node(j));
            if (v < best) {  // strict: lowest (t,u) index wins ties
                best = v;
                best_i = i;
                best_j = j;
            }
        }
    }

    // One golden-section pass per coordinate around the grid arg-extremum.
    double t_star = t_node(best_i);
    double u_star = u_node(best_j);
    const double ta = t_node(best_i > 0 ? best_i - 1 : 0);
    const double tb = t_node(best_i < grid.n_t - 1 ? best_i + 1 : grid.n_t - 1);
    if (tb > ta)
        t_star = golden_min([&](double t) { return sign * ratio_at(f, t, u_star); }, ta, tb);
    const double ua = u_node(best_j > 0 ? best_j - 1 : 0);
    const double ub = u_node(best_j < grid.n_u - 1 ? best_j + 1 : grid.n_u - 1);
    if (ub > ua)
        u_star = golden_min([&](double u) { return sign * ratio_at(f, t_star, u); }, ua, ub);

    double value = ratio_at(f, t_star, u_star);
    // Keep whichever of grid point and refined point is actually extremal.
    if (sign * value > best) {
        t_star = t_node(best_i);
        u_star = u_node(best_j);
        value = sign * best;
    }

    return RatioStats{value,  t_star, u_star,    kind,      t_lo,
                      t_hi,   u_min,  U,         grid.n_t,  grid.n_u,
                      true};
}

} // namespace

RatioStats min_ratio(const BivariateFn& f, double t_lo, double t_hi, double U,
                     double u_min, const RatioGrid& grid) {
    return scan(f, t_lo, t_hi, U, u_min, grid, RatioStats::Kind::Min);
}

RatioStats max_ratio(const BivariateFn& f, double t_lo, double t_hi, double U,
                     double u_min, const RatioGrid& grid) {
    return scan(f, t_lo, t_hi, U, u_min, grid, RatioStats::Kind::Max);
}

} // namespace abvp
