#pragma once

#include <cmath>
#include <limits>

#include "semisum/errors.hpp"
#include "semisum/numeric.hpp"
#include "semisum/potential.hpp"

namespace semisum {

namespace detail {

/// Integrates g(x) over one allowed interval under the substitution
/// x = mid + half*sin(u), which removes inverse-square-root turning-point
/// singularities (the Jacobian supplies a factor of cos u).
template <class G>
double allowed_interval_integral(const AllowedInterval& iv, G&& g, double rel_tol) {
    if (std::isinf(iv.lo) || std::isinf(iv.hi))
        return std::numeric_limits<double>::infinity();
    const double mid = 0.5 * (iv.lo + iv.hi);
    const double half = 0.5 * (iv.hi - iv.lo);
    auto integrand = [&](double u) {
        const double x = mid + half * std::sin(u);
        return g(x) * half * std::cos(u);
    };
    return integrate(integrand, -M_PI / 2, M_PI / 2, rel_tol);
}

} // namespace detail

/// Classical action integral over the allowed region at energy eps.
inline double action_integral(const Potential& pot, double eps, double rel_tol = 1e-13) {
    const TurningPoints tp = turning_points(pot, eps);
    double total = 0.0;
    for (const auto& iv : tp.allowed)
        total += detail::allowed_interval_integral(
            iv, [&](double x) { return pot.classical_momentum(eps, x); }, rel_tol);
    return total;
}

/// dA/deps = integral of dx / p over the allowed region (the classical
/// half-period); finite at smooth turning points after the substitution.
inline double action_energy_derivative(const Potential& pot, double eps,
                                       double rel_tol = 1e-12) {
    const TurningPoints tp = turning_points(pot, eps);
    double total = 0.0;
    for (const auto& iv : tp.allowed)
        total += detail::allowed_interval_integral(
            iv,
            [&](double x) {
                const double p = pot.classical_momentum(eps, x);
                return p > 0.0 ? 1.0 / p : 0.0;
            },
            rel_tol);
    return total;
}

namespace detail {

/// I1(eps) = integral of v'' / p over the allowed region. Its energy
/// derivative enters the second-order quantization correction.
inline double vpp_over_p_integral(const Potential& pot, double eps,
                                  double rel_tol = 1e-12) {
    const TurningPoints tp = turning_points(pot, eps);
    double total = 0.0;
    for (const auto& iv : tp.allowed)
        total += allowed_interval_integral(
            iv,
            [&](double x) {
                const double p = pot.classical_momentum(eps, x);
                return p > 0.0 ? pot.derivative(x, 2) / p : 0.0;
            },
            rel_tol);
    return total;
}

/// Supremum of the bound-state energy range (0 for a potential decaying to
/// zero, +inf for confining potentials).
inline double bound_range_sup(const Potential& pot) {
    switch (pot.kind()) {
        case PotentialKind::poschl_teller: return 0.0;
        default: return std::numeric_limits<double>::infinity();
    }
}

} // namespace detail

/// Solves action(eps) = (j + nu) pi for continuous level index j >= 0
/// (the action is strictly increasing in eps on the bound range).
inline double wkb0_continuous(const Potential& pot, double j) {
    const double target = (j + pot.maslov_index().value()) * M_PI;
    const double vmin = pot.minimum_value();
    const double scale = std::max(1.0, std::abs(vmin));
    double lo = vmin + 1e-13 * scale;
    const double sup = detail::bound_range_sup(pot);

    double hi;
    if (std::isfinite(sup)) {
        hi = sup - 1e-11 * scale;
        if (action_integral(pot, hi) <= target)
            throw unbound_level_error("level index beyond the WKB bound range");
    } else {
        hi = vmin + scale;
        while (action_integral(pot, hi) <= target) {
            hi = vmin + 2.0 * (hi - vmin);
            if (!(hi < 1e30)) throw unbound_level_error("quantization target unreachable");
        }
    }

    auto f = [&](double e) { return action_integral(pot, e) - target; };
    auto df = [&](double e) { return action_energy_derivative(pot, e); };
    const double eps = refine_root(f, df, lo, hi, 1e-15 * std::max(1.0, std::abs(hi)));
    return eps;
}

/// Eigenvalue expansion in even semiclassical orders at level j.
struct WkbSeries {
    int j = 0;
    double eps0 = 0.0;
    double eps2 = 0.0;
    MaslovIndex nu;
};

/// O(hbar^2) eigenvalue shift at a solved zeroth-order energy. The raw
/// second-order integrand diverges at turning points, so the correction is
/// evaluated as the energy derivative of the regular integral I1 = (v''/p):
///   A2(eps) = -(1/24) dI1/deps,   eps2 = -A2 / (dA/deps).
inline double wkb_second_order_shift(const Potential& pot, double eps0) {
    if (pot.kind() == PotentialKind::linear_half_well)
        throw not_supported_error(
            "order-2 WKB is not defined for the hard-wall linear well");
    if (pot.kind() == PotentialKind::box) return 0.0;  // v'' = 0

    const double span = eps0 - pot.minimum_value();
    const double h = 1e-4 * std::max(span, std::max(1.0, std::abs(eps0)));
    auto i1 = [&](double e) { return detail::vpp_over_p_integral(pot, e); };
    const double di1 = central_derivative(i1, eps0, h);
    const double a2 = -di1 / 24.0;
    const double period = action_energy_derivative(pot, eps0);
    return -a2 / period;
}

/// WKB quantization at order 0 or 2.
inline WkbSeries quantize(const Potential& pot, int j, int order) {
    if (j < 0) throw argument_error("level index must be non-negative");
    if (order != 0 && order != 2) throw argument_error("WKB order must be 0 or 2");
    WkbSeries series;
    series.j = j;
    series.nu = pot.maslov_index();
    series.eps0 = wkb0_continuous(pot, static_cast<double>(j));
    if (order == 2) series.eps2 = wkb_second_order_shift(pot, series.eps0);
    return series;
}

/// Poschl-Teller WKB eigenvalues in closed form: -(lambda0 - j)^2 / 2 with
/// lambda0 = sqrt(2D) - 1/2.
inline double pt_wkb_closed_form(double depth, int j) {
    if (!(depth > 0)) throw argument_error("poschl_teller requires D > 0");
    const double lambda0 = std::sqrt(2.0 * depth) - 0.5;
    if (j < 0 || j > lambda0)
        throw unbound_level_error("level index beyond the WKB bound range");
    const double d = lambda0 - j;
    return -0.5 * d * d;
}

} // namespace semisum
