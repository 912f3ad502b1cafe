#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "semisum/airy.hpp"
#include "semisum/errors.hpp"
#include "semisum/numeric.hpp"
#include "semisum/potential.hpp"
#include "semisum/precision.hpp"
#include "semisum/wkb.hpp"

namespace semisum {

enum class SpectrumSource { closed_form, airy_zero, grid_solver };

inline const char* to_string(SpectrumSource s) {
    switch (s) {
        case SpectrumSource::closed_form: return "closed_form";
        case SpectrumSource::airy_zero: return "airy_zero";
        case SpectrumSource::grid_solver: return "grid_solver";
    }
    return "?";
}

/// Ordered eigenvalues with provenance and the precision actually attained.
struct Spectrum {
    std::vector<double> eigenvalues;
    SpectrumSource source = SpectrumSource::closed_form;
    int precision_digits = 16;
};

/// lambda = sqrt(2D + 1/4) - 1/2; bound levels are j <= lambda.
inline double pt_lambda(double depth) { return std::sqrt(2.0 * depth + 0.25) - 0.5; }

inline int pt_bound_count(double depth) {
    return static_cast<int>(std::floor(pt_lambda(depth))) + 1;
}

/// Closed-form eigenvalues for box, harmonic and Poschl-Teller.
inline double closed_form_eigenvalue(const Potential& pot, int j) {
    if (j < 0) throw argument_error("level index must be non-negative");
    switch (pot.kind()) {
        case PotentialKind::box: {
            const double L = pot.box_length();
            return M_PI * M_PI * (j + 1.0) * (j + 1.0) / (2.0 * L * L);
        }
        case PotentialKind::harmonic:
            return pot.omega() * (j + 0.5);
        case PotentialKind::poschl_teller: {
            const double lambda = pt_lambda(pot.depth());
            if (j > lambda)
                throw unbound_level_error("poschl_teller holds no bound level " +
                                          std::to_string(j));
            const double d = lambda - j;
            return -0.5 * d * d;
        }
        default:
            throw no_closed_form_error("no closed-form eigenvalues for " +
                                       pot.spec_string());
    }
}

namespace detail {

/// Number of eigenvalues of the symmetric tridiagonal (diag, offdiag) strictly
/// below sigma, via the Sturm sequence of LDL^T pivots.
inline int tridiag_count_below(const std::vector<double>& diag,
                               const std::vector<double>& off, double sigma) {
    int count = 0;
    double q = diag[0] - sigma;
    if (q < 0) ++count;
    for (std::size_t i = 1; i < diag.size(); ++i) {
        if (q == 0.0) q = 1e-300;
        q = (diag[i] - sigma) - off[i - 1] * off[i - 1] / q;
        if (q < 0) ++count;
    }
    return count;
}

/// Lowest `count` eigenvalues of a symmetric tridiagonal matrix by bisection.
inline std::vector<double> tridiag_lowest(const std::vector<double>& diag,
                                          const std::vector<double>& off, int count) {
    double lo = diag[0], hi = diag[0];
    for (std::size_t i = 0; i < diag.size(); ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(off[i - 1]);
        if (i < off.size()) r += std::abs(off[i]);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    std::vector<double> out(count);
    for (int k = 0; k < count; ++k) {
        double a = lo, b = hi;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (a + b);
            if (tridiag_count_below(diag, off, mid) > k) b = mid; else a = mid;
            if (b - a <= 1e-15 * std::max(1.0, std::max(std::abs(a), std::abs(b)))) break;
        }
        out[k] = 0.5 * (a + b);
    }
    return out;
}

struct GridWindow {
    double lo = 0.0;
    double hi = 0.0;
};

/// Hard-wall truncation window: walls where the domain has them, otherwise at
/// the first point past the outermost turning point where either the potential
/// rises 25 Hartree above the top level or the accumulated tunneling action
/// reaches 16 (the 25-Hartree rule alone never fires for bounded wells).
inline GridWindow grid_window(const Potential& pot, double eps_top) {
    GridWindow w;
    const TurningPoints tp = turning_points(pot, eps_top);
    const double t_lo = tp.allowed.front().lo;
    const double t_hi = tp.allowed.back().hi;

    auto extend = [&](double start, int dir) {
        const double h = 0.02 * std::max(1.0, std::abs(start));
        double x = start;
        double action = 0.0;
        for (int i = 0; i < 200000; ++i) {
            const double xn = x + dir * h;
            if (!pot.in_domain(xn)) return x;
            const double dv = pot.value(xn) - eps_top;
            if (dv >= 25.0) return xn;
            if (dv > 0.0) action += std::sqrt(2.0 * dv) * h;
            if (action >= 16.0) return xn;
            x = xn;
        }
        return x;
    };

    w.lo = (pot.boundary_min() == BoundaryKind::hard_wall && t_lo == pot.domain_min())
               ? t_lo
               : extend(t_lo, -1);
    w.hi = (pot.boundary_max() == BoundaryKind::hard_wall && t_hi == pot.domain_max())
               ? t_hi
               : extend(t_hi, +1);
    return w;
}

inline std::vector<double> fd_lowest(const Potential& pot, const GridWindow& w,
                                     int intervals, int count) {
    const double h = (w.hi - w.lo) / intervals;
    const int n = intervals - 1;
    std::vector<double> diag(n), off(n - 1, -0.5 / (h * h));
    for (int i = 0; i < n; ++i)
        diag[i] = 1.0 / (h * h) + pot.value(w.lo + (i + 1) * h);
    return tridiag_lowest(diag, off, count);
}

} // namespace detail

/// Lowest `count` eigenvalues by second-order finite differences on a
/// truncated uniform grid, Richardson-extrapolated over three spacings. The
/// attained precision is estimated from the extrapolation residuals.
inline Spectrum grid_eigenvalues(const Potential& pot, int count,
                                 const PrecisionConfig& prec = {}) {
    prec.validate();
    if (count < 1) throw argument_error("count must be positive");
    if (pot.kind() == PotentialKind::poschl_teller && count > pt_bound_count(pot.depth()))
        throw unbound_level_error("requested more levels than the well binds");

    double eps_top;
    switch (pot.kind()) {
        case PotentialKind::box:
        case PotentialKind::harmonic:
        case PotentialKind::poschl_teller:
            eps_top = closed_form_eigenvalue(pot, count - 1);
            break;
        default:
            eps_top = wkb0_continuous(pot, count - 1.0) *
                      (pot.kind() == PotentialKind::linear_half_well ? 1.02 : 1.05);
    }

    detail::GridWindow w;
    if (pot.kind() == PotentialKind::box) {
        w.lo = 0.0;
        w.hi = pot.box_length();
    } else {
        // marginal top levels (eps -> 0 in a decaying well) have unbounded reach
        if (pot.kind() == PotentialKind::poschl_teller && eps_top > -1e-6)
            throw precision_failure_error(
                "top level too shallow for a truncated-grid oracle");
        w = detail::grid_window(pot, eps_top);
    }

    const double p_max = std::sqrt(2.0 * std::max(eps_top - pot.minimum_value(), 1e-8));
    const double width = w.hi - w.lo;
    int n0 = static_cast<int>(std::ceil(width * p_max * 24.0 / (2.0 * M_PI)));
    n0 = std::max(n0, 256);

    Spectrum out;
    out.source = SpectrumSource::grid_solver;
    out.eigenvalues.resize(count);
    // the base resolution doubles until the extrapolation residuals certify
    // at least 8 digits (the wavelength heuristic is too coarse when long
    // tunneling tails dominate the window width)
    for (int attempt = 0; attempt < 5; ++attempt, n0 *= 2) {
        std::vector<std::vector<double>> levels;
        for (int scale : {1, 2, 4})
            levels.push_back(detail::fd_lowest(pot, w, n0 * scale, count));

        int digits = 15;
        for (int k = 0; k < count; ++k) {
            const double v1 = levels[0][k], v2 = levels[1][k], v3 = levels[2][k];
            const double r1 = (4.0 * v2 - v1) / 3.0;
            const double r2 = (4.0 * v3 - v2) / 3.0;
            const double extrap = (16.0 * r2 - r1) / 15.0;
            out.eigenvalues[k] = extrap;
            const double resid = std::abs(r2 - r1);
            const double scale = std::max(std::abs(extrap), 1e-3);
            const int d = static_cast<int>(std::floor(-std::log10(
                std::max(resid / scale, 1e-15))));
            digits = std::min(digits, std::max(d, 1));
        }
        out.precision_digits = digits;
        if (digits >= 8 || attempt + 1 == 5) break;
    }
    if (out.precision_digits < 6)
        throw precision_failure_error("grid eigenvalue extrapolation unconverged");
    return out;
}

/// Sum of the first N eigenvalues using the best available oracle
/// (closed form > airy > grid), accumulated in index order.
inline double exact_sum(const Potential& pot, int N, const PrecisionConfig& prec = {}) {
    if (N < 1) throw argument_error("N must be positive");
    switch (pot.kind()) {
        case PotentialKind::box:
        case PotentialKind::harmonic:
        case PotentialKind::poschl_teller: {
            if (pot.kind() == PotentialKind::poschl_teller &&
                N > pt_bound_count(pot.depth()))
                throw unbound_level_error("requested more levels than the well binds");
            double sum = 0.0;
            for (int j = 0; j < N; ++j) sum += closed_form_eigenvalue(pot, j);
            return sum;
        }
        case PotentialKind::linear_half_well: {
            PrecisionConfig p = prec;
            p.target_digits = std::min(std::max(p.target_digits, 18), 30);
            p.working_digits = std::max(p.working_digits, p.target_digits + 8);
            return static_cast<double>(airy_eigenvalue_sum_big(N, p));
        }
        case PotentialKind::quartic: {
            const Spectrum s = grid_eigenvalues(pot, N, prec);
            double sum = 0.0;
            for (double e : s.eigenvalues) sum += e;
            return sum;
        }
    }
    throw argument_error("unknown potential kind");
}

} // namespace semisum
