#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "jaudit/errors.hpp"

namespace jaudit {

inline double mean(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

// Population (1/N) variance. The decomposition identities in the audit
// depend on population formulas being used everywhere.
inline double population_variance(std::span<const double> xs) {
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size());
}

inline double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw LengthMismatchError("pearson: length mismatch");
    if (xs.size() < 2)
        throw DegenerateVarianceError("pearson: need at least 2 observations");
    const double mx = mean(xs), my = mean(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw DegenerateVarianceError("pearson: zero variance in one channel");
    return sxy / std::sqrt(sxx * syy);
}

// Linear-interpolation percentile (the numpy default), p in [0,100].
// Sorts a copy; callers pass small replicate vectors.
inline double percentile(std::vector<double> xs, double p) {
    if (xs.empty())
        throw DegenerateInputError("percentile: empty sample");
    std::sort(xs.begin(), xs.end());
    if (xs.size() == 1) return xs[0];
    const double pos = (p / 100.0) * static_cast<double>(xs.size() - 1);
    const double lo = std::floor(pos), hi = std::ceil(pos);
    const auto i = static_cast<std::size_t>(lo);
    const auto j = static_cast<std::size_t>(hi);
    if (i == j) return xs[i];
    return xs[i] + (pos - lo) * (xs[j] - xs[i]);
}

// Indices attaining the maximum, exact equality. Ties are a first-class
// object in this library: no epsilon.
inline std::vector<std::size_t> argmax_set(std::span<const double> xs) {
    std::vector<std::size_t> out;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] > best) {
            best = xs[i];
            out.clear();
            out.push_back(i);
        } else if (xs[i] == best) {
            out.push_back(i);
        }
    }
    return out;
}

// max - second max, counting duplicates (two tied maxima give margin 0).
inline double top1_margin(std::span<const double> xs) {
    double best = -std::numeric_limits<double>::infinity();
    double second = -std::numeric_limits<double>::infinity();
    for (double x : xs) {
        if (x > best) {
            second = best;
            best = x;
        } else if (x > second) {
            second = x;
        }
    }
    return best - second;
}

inline double simple_ols_slope(std::span<const double> xs, std::span<const double> ys,
                               double* intercept_out = nullptr) {
    const double mx = mean(xs), my = mean(ys);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx == 0.0)
        throw DegenerateVarianceError("ols: regressor has zero variance");
    const double slope = sxy / sxx;
    if (intercept_out) *intercept_out = my - slope * mx;
    return slope;
}

} // namespace jaudit
