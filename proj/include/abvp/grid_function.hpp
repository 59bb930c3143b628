#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "abvp/errors.hpp"

namespace abvp {

/// A function sampled on the uniform grid t_i = i/(n-1), i = 0..n-1.
/// Values are finite; solution candidates additionally satisfy
/// values.front() == values.back() == 0.
class GridFunction {
public:
    explicit GridFunction(std::vector<double> values) : values_(std::move(values)) {
        if (values_.size() < 3)
            throw ValidationError("GridFunction: needs at least 3 nodes");
        for (double v : values_)
            if (!std::isfinite(v))
                throw ValidationError("GridFunction: values must be finite");
    }

    static GridFunction zeros(std::size_t n) {
        return GridFunction(std::vector<double>(n, 0.0));
    }

    static GridFunction sample(std::size_t n, const std::function<double(double)>& fn) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = fn(static_cast<double>(i) / static_cast<double>(n - 1));
        return GridFunction(std::move(v));
    }

    std::size_t size() const noexcept { return values_.size(); }
    double node(std::size_t i) const {
        return static_cast<double>(i) / static_cast<double>(values_.size() - 1);
    }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    const std::vector<double>& values() const noexcept { return values_; }

    /// Piecewise-linear interpolation at x in [0,1].
    double interp(double x) const {
        const std::size_t n = values_.size();
        if (x <= 0.0) return values_.front();
        if (x >= 1.0) return values_.back();
        const double pos = x * static_cast<double>(n - 1);
        auto i = static_cast<std::size_t>(pos);
        if (i >= n - 1) i = n - 2;
        const double frac = pos - static_cast<double>(i);
        return values_[i] + frac * (values_[i + 1] - values_[i]);
    }

    double sup_norm() const {
        double m = 0.0;
        for (double v : values_) {
            const double a = v < 0.0 ? -v : v;
            if (a > m) m = a;
        }
        return m;
    }

    double min_value() const {
        double m = values_.front();
        for (double v : values_)
            if (v < m) m = v;
        return m;
    }

    /// Minimum over grid nodes with t in [a,b].
    double min_on(double a, double b) const {
        const std::size_t n = values_.size();
        double m = 0.0;
        bool seen = false;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = node(i);
            if (t < a || t > b) continue;
            if (!seen || values_[i] < m) m = values_[i];
            seen = true;
        }
        if (!seen)
            throw ValidationError("GridFunction::min_on: no nodes in range");
        return m;
    }

private:
    std::vector<double> values_;
};

} // namespace abvp
