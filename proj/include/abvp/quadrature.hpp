#pragma once

#include <functional>
#include <span>
#include <vector>

#include "abvp/errors.hpp"

namespace abvp {

using ScalarFn = std::function<double(double)>;

/// Composite Gauss-Legendre rule: `panel_count` equal panels with
/// `points_per_panel` Gauss nodes each. Exact for polynomials of degree
/// <= 2*points_per_panel - 1 on every panel.
struct QuadratureRule {
    int panel_count = 64;
    int points_per_panel = 5;
};

/// Gauss-Legendre nodes/weights on [-1,1] for n in 1..10, computed once by
/// Newton iteration on the Legendre recurrence and cached.
struct GaussNodes {
    std::span<const double> nodes;
    std::span<const double> weights;
};
GaussNodes gauss_legendre(int points);

/// Integral of g over [a,b] under the composite rule. Throws NumericError
/// naming the node if g produces a non-finite sample.
double integrate(const ScalarFn& g, double a, double b, const QuadratureRule& rule = {});

/// The recurring kernel weight I = \int_a^b s(1-s) q(s) ds on [a,b] within [0,1].
double kernel_weight_integral(const ScalarFn& q, double a, double b,
                              const QuadratureRule& rule = {});

/// \int_0^1 G(t,s) g(s) ds, split at the kink s=t so each piece is smooth.
double apply_kernel_row(double t, const ScalarFn& g, const QuadratureRule& rule = {});

} // namespace abvp
