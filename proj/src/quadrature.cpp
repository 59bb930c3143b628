#include "abvp/quadrature.hpp"

#include <array>
#include <cmath>
#include <string>

#include "abvp/kernel.hpp"

namespace abvp {

namespace {

constexpr int kMaxPoints = 10;

struct NodeTable {
    std::array<std::vector<double>, kMaxPoints + 1> nodes;
    std::array<std::vector<double>, kMaxPoints + 1> weights;

    NodeTable() {
        for (int n = 1; n <= kMaxPoints; ++n) {
            nodes[n].resize(n);
            weights[n].resize(n);
            // Newton iteration on P_n with the three-term recurrence;
            // roots are symmetric so only the lower half is solved.
            int m = (n + 1) / 2;
            for (int i = 1; i <= m; ++i) {
                double z = std::cos(M_PI * (i - 0.25) / (n + 0.5));
                double pp = 0.0;
                for (int iter = 0; iter < 100; ++iter) {
                    double p1 = 1.0, p2 = 0.0;
                    for (int j = 1; j <= n; ++j) {
                        double p3 = p2;
                        p2 = p1;
                        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
                    }
                    pp = n * (z * p1 - p2) / (z * z - 1.0);
                    double z1 = z;
                    z = z1 - p1 / pp;
                    if (std::fabs(z - z1) <= 1e-16)
                        break;
                }
                nodes[n][i - 1] = -z;
                nodes[n][n - i] = z;
                weights[n][i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
                weights[n][n - i] = weights[n][i - 1];
            }
            if (n % 2 == 1)
                nodes[n][n / 2] = 0.0;  // center root exactly
        }
    }
};

const NodeTable& node_table() {
    static const NodeTable table;
    return table;
}

void check_rule(const QuadratureRule& rule) {
    if (rule.panel_count < 1)
        throw ValidationError("quadrature: panel_count must be >= 1");
    if (rule.points_per_panel < 1 || rule.points_per_panel > kMaxPoints)
        throw ValidationError("quadrature: points_per_panel must be in 1..10");
}

} // namespace

GaussNodes gauss_legendre(int points) {
    if (points < 1 || points > kMaxPoints)
        throw ValidationError("gauss_legendre: points must be in 1..10");
    const NodeTable& t = node_table();
    return {t.nodes[points], t.weights[points]};
}

double integrate(const ScalarFn& g, double a, double b, const QuadratureRule& rule) {
    check_rule(rule);
    if (!(a <= b))
        throw ValidationError("integrate: requires a <= b");
    if (a == b)
        return 0.0;

    auto [nodes, weights] = gauss_legendre(rule.points_per_panel);
    const double h = (b - a) / rule.panel_count;
    double total = 0.0;
    for (int p = 0; p < rule.panel_count; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        double panel = 0.0;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const double x = mid + 0.5 * h * nodes[k];
            const double v = g(x);
            if (!std::isfinite(v))
                throw NumericError("integrate: non-finite sample at node x=" +
                                   std::to_string(x));
            panel += weights[k] * v;
        }
        total += 0.5 * h * panel;
    }
    return total;
}

double kernel_weight_integral(const ScalarFn& q, double a, double b,
                              const QuadratureRule& rule) {
    if (!(a >= 0.0 && b <= 1.0))
        throw ValidationError("kernel_weight_integral: [a,b] must lie within [0,1]");
    return integrate([&q](double s) { return s * (1.0 - s) * q(s); }, a, b, rule);
}

double apply_kernel_row(double t, const ScalarFn& g, const QuadratureRule& rule) {
    if (!(t >= 0.0 && t <= 1.0))
        throw ValidationError("apply_kernel_row: t must lie in [0,1]");
    // G(t,s) = s(1-t) below the diagonal, t(1-s) above; the split keeps each
    // integrand smooth so the Gauss rule retains its full order.
    double left = integrate([&](double s) { return s * (1.0 - t) * g(s); }, 0.0, t, rule);
    double right = integrate([&](double s) { return t * (1.0 - s) * g(s); }, t, 1.0, rule);
    return left + right;
}

} // namespace abvp
