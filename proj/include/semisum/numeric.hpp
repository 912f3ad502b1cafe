#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "semisum/errors.hpp"

namespace semisum {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

inline GaussRule make_gauss_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double tol = 4.0 * std::numeric_limits<double>::epsilon();
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-like initial guess, refined by Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) <= tol * std::max(1.0, std::abs(x))) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

} // namespace detail

/// Cached Gauss-Legendre rule (n in a small fixed set keeps this allocation-free
/// after first use; thread-safe via static init).
inline const GaussRule& gauss_rule(int n) {
    static const GaussRule g16 = detail::make_gauss_rule(16);
    static const GaussRule g32 = detail::make_gauss_rule(32);
    static const GaussRule g64 = detail::make_gauss_rule(64);
    if (n <= 16) return g16;
    if (n <= 32) return g32;
    return g64;
}

/// Fixed-order Gauss-Legendre on [a, b].
template <class F>
double gauss_panel(F&& f, double a, double b, const GaussRule& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

/// Composite Gauss-Legendre with panel doubling until two successive
/// refinements agree to the requested tolerance. Deterministic; never
/// evaluates at a or b. Refinement stops once it no longer improves (turning
/// point coordinates carry ~1e-13 of bracketing noise, which puts a floor
/// under the attainable agreement; past it, splitting only accumulates
/// endpoint-layer error), returning the best estimate seen.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-12,
                 double abs_tol = 0.0, int max_doublings = 12) {
    if (a == b) return 0.0;
    const GaussRule& rule = gauss_rule(32);
    double prev = gauss_panel(f, a, b, rule);
    double best = prev;
    double best_err = std::numeric_limits<double>::infinity();
    int panels = 2;
    for (int d = 0; d < max_doublings; ++d, panels *= 2) {
        double sum = 0.0;
        const double w = (b - a) / panels;
        for (int p = 0; p < panels; ++p)
            sum += gauss_panel(f, a + p * w, a + (p + 1) * w, rule);
        const double err = std::abs(sum - prev);
        prev = sum;
        if (err <= std::max(abs_tol, rel_tol * std::abs(sum))) return sum;
        if (err < best_err) {
            best_err = err;
            best = sum;
        } else if (d >= 1) {
            return best;
        }
    }
    return best;
}

/// Bisect [lo, hi] (f(lo), f(hi) of opposite sign) down to a coarse bracket,
/// then refine with Newton steps safeguarded by the bracket.
template <class F, class DF>
double refine_root(F&& f, DF&& df, double lo, double hi, double tol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw argument_error("refine_root: endpoints do not bracket a root");
    for (int i = 0; i < 8; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 100; ++i) {
        double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (flo > 0.0)) lo = x; else hi = x;
        double d = df(x);
        double step = (d != 0.0) ? fx / d : 0.0;
        double xn = x - step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) <= tol) return xn;
        x = xn;
    }
    return x;
}

/// Derivative-free bracketed root solve (bisection + secant acceleration).
template <class F>
double solve_bracketed(F&& f, double lo, double hi, double rel_tol = 1e-15,
                       double abs_tol = 0.0) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw argument_error("solve_bracketed: endpoints do not bracket a root");
    double x = lo, fx = flo;
    for (int i = 0; i < 200; ++i) {
        // secant proposal, clipped to the bracket interior
        double xs = hi - fhi * (hi - lo) / (fhi - flo);
        double mid = 0.5 * (lo + hi);
        x = (xs > lo && xs < hi) ? xs : mid;
        // alternate with bisection to guarantee bracket shrinkage
        if ((i & 1) != 0) x = mid;
        fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        if (hi - lo <= std::max(abs_tol, rel_tol * std::max(std::abs(lo), std::abs(hi))))
            return 0.5 * (lo + hi);
    }
    return 0.5 * (lo + hi);
}

/// Central difference first derivative with one Richardson refinement.
template <class F>
double central_derivative(F&& f, double x, double h) {
    auto d = [&](double hh) { return (f(x + hh) - f(x - hh)) / (2.0 * hh); };
    const double d1 = d(h);
    const double d2 = d(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

/// Central third derivative (5-point stencil) with one Richardson refinement.
template <class F>
double central_third_derivative(F&& f, double x, double h) {
    auto d = [&](double hh) {
        return (f(x + 2 * hh) - 2.0 * f(x + hh) + 2.0 * f(x - hh) - f(x - 2 * hh)) /
               (2.0 * hh * hh * hh);
    };
    const double d1 = d(h);
    const double d2 = d(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

/// Trapezoid on a uniform grid.
inline double trapezoid(const std::vector<double>& values, double h) {
    if (values.size() < 2) return 0.0;
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
    return sum * h;
}

/// Trapezoid with one Richardson refinement against the every-other-point rule.
/// Falls back to the plain trapezoid when the grid cannot be halved evenly.
inline double trapezoid_refined(const std::vector<double>& values, double h) {
    const double fine = trapezoid(values, h);
    if (values.size() < 5 || (values.size() - 1) % 2 != 0) return fine;
    std::vector<double> coarse;
    coarse.reserve((values.size() + 1) / 2);
    for (std::size_t i = 0; i < values.size(); i += 2) coarse.push_back(values[i]);
    const double c = trapezoid(coarse, 2.0 * h);
    return (4.0 * fine - c) / 3.0;
}

/// Two-stage Richardson extrapolation of values at spacings h, h/2, h/4
/// assuming an h^2 + h^4 error expansion.
inline double richardson3(double v_h, double v_h2, double v_h4) {
    const double r1 = (4.0 * v_h2 - v_h) / 3.0;
    const double r2 = (4.0 * v_h4 - v_h2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

/// Even-index Bernoulli numbers B_2 .. B_32 (exact rationals evaluated in double).
inline double bernoulli_even(int n) {
    static constexpr std::array<double, 16> table = {
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
        43867.0 / 798.0,
        -174611.0 / 330.0,
        854513.0 / 138.0,
        -236364091.0 / 2730.0,
        8553103.0 / 6.0,
        -23749461029.0 / 870.0,
        8615841276005.0 / 14322.0,
        -7709321041217.0 / 510.0,
    };
    if (n < 2 || n % 2 != 0 || n > 32)
        throw argument_error("bernoulli_even: order out of range");
    return table[static_cast<std::size_t>(n / 2 - 1)];
}

/// Bernoulli polynomial value B_n(1/2) = (2^{1-n} - 1) B_n, used by the
/// midpoint summation rule.
inline double bernoulli_even_half(int n) {
    return (std::pow(2.0, 1.0 - n) - 1.0) * bernoulli_even(n);
}

} // namespace semisum
