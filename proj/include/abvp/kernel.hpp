#pragma once

#include "abvp/errors.hpp"

namespace abvp {

/// Dirichlet Green's function of -u'' on (0,1):
///   G(t,s) = s(1-t) for s <= t,  t(1-s) for t <= s.
/// Both branches agree at s = t. Satisfies, for all t,s in [0,1]:
///   0 <= G(t,s) <= G(s,s), and G(t,s) >= G(s,s)/4 for t in [1/4, 3/4].
inline double green(double t, double s) {
    if (!(t >= 0.0 && t <= 1.0 && s >= 0.0 && s <= 1.0))
        throw ValidationError("green: arguments must lie in [0,1]");
    return s <= t ? s * (1.0 - t) : t * (1.0 - s);
}

/// Diagonal G(s,s) = s(1-s).
inline double green_diag(double s) {
    if (!(s >= 0.0 && s <= 1.0))
        throw ValidationError("green_diag: argument must lie in [0,1]");
    return s * (1.0 - s);
}

} // namespace abvp
