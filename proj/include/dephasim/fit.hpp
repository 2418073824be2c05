// fit.hpp — Log-linear least squares for exponential decay laws y ≃ A·exp(slope·x)

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "dephasim/errors.hpp"

namespace dephasim {

struct FitResult {
    double slope{0.0};
    double intercept{0.0};
    double std_error{0.0};  // of the slope
    double r_squared{0.0};
    double x_min{0.0};
    double x_max{0.0};
    std::size_t used{0};
    std::size_t excluded{0};  // points with y <= 0 (or non-finite), dropped before fitting
};

/// Ordinary least squares of ln y against x.
inline FitResult fit_exponential(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw PreconditionError("fit_exponential: x and y differ in length");

    std::vector<double> xs, ls;
    FitResult out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (y[i] > 0.0 && std::isfinite(y[i]) && std::isfinite(x[i])) {
            xs.push_back(x[i]);
            ls.push_back(std::log(y[i]));
        } else {
            ++out.excluded;
        }
    }
    const std::size_t n = xs.size();
    if (n < 3) throw FitError("fit_exponential: fewer than 3 usable points (y > 0)");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ls[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ls[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw FitError("fit_exponential: x values are all equal");

    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ls[i] - (out.intercept + out.slope * xs[i]);
        ss_res += r * r;
    }
    out.std_error = n > 2 ? std::sqrt(ss_res / static_cast<double>(n - 2) / sxx) : 0.0;
    out.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    out.x_min = *std::min_element(xs.begin(), xs.end());
    out.x_max = *std::max_element(xs.begin(), xs.end());
    out.used = n;
    return out;
}

inline double fitted_log(const FitResult& fit, double x) { return fit.intercept + fit.slope * x; }

} // namespace dephasim
