// quadrature.hpp — Globally adaptive Gauss–Kronrod (7/15) integration on finite intervals

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <sstream>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "dephasim/errors.hpp"

namespace dephasim {

struct QuadratureSettings {
    double rel_tol{1e-10};
    double abs_tol{1e-14};
    std::size_t max_subdivisions{1000};

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw ValidationError("quadrature tolerances must be > 0");
        if (max_subdivisions < 1)
            throw ValidationError("quadrature max_subdivisions must be >= 1");
    }
};

template <class T>
struct QuadratureResult {
    T value{};
    double abs_error{0.0};
    std::size_t evaluations{0};
    std::size_t subdivisions{0};
};

namespace detail {

// Kronrod abscissae on [-1,1], descending; odd indices are the 7-point Gauss nodes.
inline constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Segment {
    double a;
    double b;
    T value;
    double error;
};

template <class T, class F>
Segment<T> gauss_kronrod_15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const T fc = f(center);
    T kronrod = fc * kWgk[7];
    T gauss = fc * kWg[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const T sum = f(center - dx) + f(center + dx);
        kronrod += sum * kWgk[j];
        if (j % 2 == 1) gauss += sum * kWg[j / 2];
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

} // namespace detail

/// Integrates f over the union of consecutive intervals [edges[i], edges[i+1]].
///
/// The edges seed the initial partition (use them for known kinks or oscillation
/// nodes); refinement then bisects whichever segment carries the largest error
/// estimate until the summed estimate meets max(abs_tol, rel_tol*|I|).
/// Throws QuadratureError once the segment count would exceed max_subdivisions
/// or a non-finite value appears.
template <class F>
auto integrate(F&& f, std::span<const double> edges, const QuadratureSettings& settings)
    -> QuadratureResult<std::decay_t<std::invoke_result_t<F&, double>>> {
    using T = std::decay_t<std::invoke_result_t<F&, double>>;
    if (edges.size() < 2) throw PreconditionError("integrate: need at least two edges");
    if (edges.size() - 1 > settings.max_subdivisions)
        throw QuadratureError("integrate: initial partition exceeds max_subdivisions", INFINITY);

    std::size_t evaluations = 0;
    std::vector<detail::Segment<T>> segments;
    segments.reserve(std::max<std::size_t>(edges.size(), 16));
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i + 1] >= edges[i])) throw PreconditionError("integrate: edges must be non-decreasing");
        segments.push_back(detail::gauss_kronrod_15<T>(f, edges[i], edges[i + 1]));
        evaluations += 15;
    }

    auto totals = [&segments] {
        T value{};
        double error = 0.0;
        for (const auto& s : segments) {
            value += s.value;
            error += s.error;
        }
        return std::pair{value, error};
    };

    auto [value, error] = totals();
    while (true) {
        if (!std::isfinite(std::abs(value)) || !std::isfinite(error))
            throw QuadratureError("integrate: non-finite integrand value", error);
        const double target = std::max(settings.abs_tol, settings.rel_tol * std::abs(value));
        if (error <= target) break;
        if (segments.size() >= settings.max_subdivisions) {
            std::ostringstream msg;
            msg << "integrate: no convergence within " << settings.max_subdivisions
                << " subdivisions (error estimate " << error << ", target " << target << ")";
            throw QuadratureError(msg.str(), error);
        }
        auto worst = std::max_element(segments.begin(), segments.end(),
                                      [](const auto& l, const auto& r) { return l.error < r.error; });
        const double a = worst->a;
        const double b = worst->b;
        const double mid = 0.5 * (a + b);
        if (!(mid > a && mid < b)) {
            throw QuadratureError("integrate: segment width underflow", error);
        }
        *worst = detail::gauss_kronrod_15<T>(f, a, mid);
        segments.push_back(detail::gauss_kronrod_15<T>(f, mid, b));
        evaluations += 30;
        std::tie(value, error) = totals();
    }

    return {value, error, evaluations, segments.size()};
}

template <class F>
auto integrate(F&& f, double a, double b, const QuadratureSettings& settings) {
    const std::array<double, 2> edges{a, b};
    return integrate(std::forward<F>(f), std::span<const double>(edges), settings);
}

} // namespace dephasim
