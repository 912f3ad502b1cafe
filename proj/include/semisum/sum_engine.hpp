#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semisum/airy.hpp"
#include "semisum/errors.hpp"
#include "semisum/numeric.hpp"
#include "semisum/potential.hpp"
#include "semisum/precision.hpp"
#include "semisum/spectral.hpp"
#include "semisum/wkb.hpp"

namespace semisum {

enum class Convention { endpoint, midpoint };

inline const char* to_string(Convention c) {
    return c == Convention::endpoint ? "endpoint" : "midpoint";
}

/// One eigenvalue-sum estimate, decomposed. total is always assembled as
/// e0 + d2a + d2b + sum(em_higher), in that order.
struct EnergyBreakdown {
    int N = 0;
    Convention convention = Convention::endpoint;
    double e0 = 0.0;
    double d2a = 0.0;
    double d2b = 0.0;
    std::vector<double> em_higher;
    double total = 0.0;
    std::optional<double> exact;
    std::optional<double> error;

    void assemble() {
        total = e0 + d2a + d2b;
        for (double t : em_higher) total += t;
        if (exact) error = total - *exact;
    }
};

/// Evaluated, signed terms of an asymptotic expansion.
struct AsymptoticSeries {
    std::vector<double> terms;
    std::string label;
};

/// Zero-order integral over occupied WKB eigenvalues. The endpoint convention
/// integrates j over [0, N-1]; the midpoint convention over [-1/2, N-1/2],
/// which is the organization that coincides with the self-consistent TF energy.
inline double integral_sum(const Potential& pot, int N, Convention conv) {
    if (N < 1) throw argument_error("N must be positive");
    (void)wkb0_continuous(pot, N - 1.0);  // fails fast when levels are missing
    const double lo = conv == Convention::endpoint ? 0.0 : -0.5;
    const double hi = conv == Convention::endpoint ? N - 1.0 : N - 0.5;
    if (lo == hi) return 0.0;
    return integrate([&](double j) { return wkb0_continuous(pot, j); }, lo, hi, 1e-10);
}

/// Trapezoid endpoint correction (eps0_{N-1} + eps0_0) / 2.
inline double delta_2b(const Potential& pot, int N) {
    if (N < 1) throw argument_error("N must be positive");
    return 0.5 * (wkb0_continuous(pot, 0.0) + wkb0_continuous(pot, N - 1.0));
}

/// Second-order WKB contribution: the integral of eps2(j) over [0, N-1]
/// (Poschl-Teller's trapezoid correction of eps2 is the same size as the B2
/// term of eps0, so the discrete per-level sum is offered as well).
inline double delta_2a(const Potential& pot, int N, bool discrete = false) {
    if (N < 1) throw argument_error("N must be positive");
    if (pot.kind() == PotentialKind::box) return 0.0;  // v'' = 0
    if (pot.kind() == PotentialKind::linear_half_well)
        throw not_supported_error(
            "order-2 WKB is not defined for the hard-wall linear well");
    if (discrete) {
        double sum = 0.0;
        for (int j = 0; j < N; ++j) sum += quantize(pot, j, 2).eps2;
        return sum;
    }
    if (N == 1) return 0.0;
    auto eps2 = [&](double j) {
        return wkb_second_order_shift(pot, wkb0_continuous(pot, j));
    };
    return integrate(eps2, 0.0, N - 1.0, 1e-9, 1e-13);
}

namespace detail {

/// First derivative of the level function at an integration limit; falls back
/// to a one-sided stencil when the central one would leave the bound range.
inline double limit_derivative(const std::function<double(double)>& f, double j,
                               double j_min, double h) {
    if (j - 2.0 * h > j_min) return central_derivative(f, j, h);
    auto d = [&](double hh) {
        return (-3.0 * f(j) + 4.0 * f(j + hh) - f(j + 2.0 * hh)) / (2.0 * hh);
    };
    return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

inline double limit_third_derivative(const std::function<double(double)>& f, double j,
                                     double j_min, double h) {
    if (j - 2.0 * h > j_min) return central_third_derivative(f, j, h);
    // forward 3rd difference, first order; adequate for small B4 terms
    return (f(j + 3 * h) - 3.0 * f(j + 2 * h) + 3.0 * f(j + h) - f(j)) / (h * h * h);
}

} // namespace detail

/// Euler-Maclaurin assembly of sum_{j=0}^{N-1} f(j): integral, endpoint or
/// midpoint correction, and Bernoulli-derivative terms up to B_order (order
/// <= 4). Derivatives use central differences with one Richardson refinement
/// unless closed forms are supplied.
inline EnergyBreakdown euler_maclaurin_sum(
    const std::function<double(double)>& f, int N, int order, Convention conv,
    const std::function<double(double)>& f1 = nullptr,
    const std::function<double(double)>& f3 = nullptr, double j_min = -0.75) {
    if (N < 1) throw argument_error("N must be positive");
    if (order != 0 && order != 2 && order != 4)
        throw not_supported_error("Euler-Maclaurin terms implemented through B4 only");

    EnergyBreakdown b;
    b.N = N;
    b.convention = conv;
    const double lo = conv == Convention::endpoint ? 0.0 : -0.5;
    const double hi = conv == Convention::endpoint ? N - 1.0 : N - 0.5;
    b.e0 = lo == hi ? 0.0 : integrate(f, lo, hi, 1e-12);
    if (conv == Convention::endpoint) b.d2b = 0.5 * (f(0.0) + f(N - 1.0));

    const double h1 = 1e-3;
    const double h3 = 5e-3;
    auto d1 = [&](double j) {
        return f1 ? f1(j) : detail::limit_derivative(f, j, j_min, h1);
    };
    auto d3 = [&](double j) {
        return f3 ? f3(j) : detail::limit_third_derivative(f, j, j_min, h3);
    };
    if (order >= 2) {
        const double c2 = conv == Convention::endpoint ? bernoulli_even(2) / 2.0
                                                       : bernoulli_even_half(2) / 2.0;
        b.em_higher.push_back(c2 * (d1(hi) - d1(lo)));
    }
    if (order >= 4) {
        const double c4 = conv == Convention::endpoint ? bernoulli_even(4) / 24.0
                                                       : bernoulli_even_half(4) / 24.0;
        b.em_higher.push_back(c4 * (d3(hi) - d3(lo)));
    }
    b.assemble();
    return b;
}

/// Partial sum truncated at the smallest-magnitude term (the term itself is
/// included; ties break toward the earlier index). Returns the sum and the
/// count of included terms.
inline std::pair<double, int> optimal_truncate(const AsymptoticSeries& series) {
    if (series.terms.size() < 2)
        throw argument_error("asymptotic series needs at least 2 terms");
    std::size_t m = 0;
    for (std::size_t i = 1; i < series.terms.size(); ++i)
        if (std::abs(series.terms[i]) < std::abs(series.terms[m])) m = i;
    double sum = 0.0;
    for (std::size_t i = 0; i <= m; ++i) sum += series.terms[i];
    return {sum, static_cast<int>(m) + 1};
}

namespace detail {

struct LevelDerivatives {
    std::function<double(double)> f1;
    std::function<double(double)> f3;
};

/// Closed-form j-derivatives of eps0(j) where the quantization solves exactly
/// (box, harmonic, Poschl-Teller, linear half-well).
inline LevelDerivatives closed_level_derivatives(const Potential& pot) {
    LevelDerivatives d;
    switch (pot.kind()) {
        case PotentialKind::box: {
            const double L = pot.box_length();
            d.f1 = [L](double j) { return M_PI * M_PI * (j + 1.0) / (L * L); };
            d.f3 = [](double) { return 0.0; };
            break;
        }
        case PotentialKind::harmonic: {
            const double w = pot.omega();
            d.f1 = [w](double) { return w; };
            d.f3 = [](double) { return 0.0; };
            break;
        }
        case PotentialKind::poschl_teller: {
            const double lambda0 = std::sqrt(2.0 * pot.depth()) - 0.5;
            d.f1 = [lambda0](double j) { return lambda0 - j; };
            d.f3 = [](double) { return 0.0; };
            break;
        }
        case PotentialKind::linear_half_well: {
            const double c = std::pow(3.0 * M_PI / (2.0 * std::sqrt(2.0)), 2.0 / 3.0);
            d.f1 = [c](double j) { return (2.0 * c / 3.0) * std::pow(j + 0.75, -1.0 / 3.0); };
            d.f3 = [c](double j) {
                return (8.0 * c / 27.0) * std::pow(j + 0.75, -7.0 / 3.0);
            };
            break;
        }
        default:
            break;  // quartic: numeric differences
    }
    return d;
}

} // namespace detail

/// Full eigenvalue-sum breakdown. order 0 keeps only the zero-order integral;
/// order 2 adds both leading corrections and the B2 term; order 4 adds B4.
inline EnergyBreakdown breakdown(const Potential& pot, int N, Convention conv,
                                 int order, bool discrete_eps2 = false,
                                 const PrecisionConfig& prec = {}) {
    if (order != 0 && order != 2 && order != 4)
        throw not_supported_error("breakdown order must be 0, 2 or 4");
    EnergyBreakdown b;
    b.N = N;
    b.convention = conv;
    b.e0 = integral_sum(pot, N, conv);
    if (order >= 2) {
        if (conv == Convention::endpoint) b.d2b = delta_2b(pot, N);
        if (pot.kind() != PotentialKind::linear_half_well)
            b.d2a = delta_2a(pot, N, discrete_eps2);
        auto f = [&](double j) { return wkb0_continuous(pot, j); };
        const auto cd = detail::closed_level_derivatives(pot);
        const double lo = conv == Convention::endpoint ? 0.0 : -0.5;
        const double hi = conv == Convention::endpoint ? N - 1.0 : N - 0.5;
        const double j_min = -pot.maslov_index().value();
        auto d1 = [&](double j) {
            return cd.f1 ? cd.f1(j) : detail::limit_derivative(f, j, j_min, 1e-3);
        };
        const double c2 = conv == Convention::endpoint ? bernoulli_even(2) / 2.0
                                                       : bernoulli_even_half(2) / 2.0;
        b.em_higher.push_back(c2 * (d1(hi) - d1(lo)));
        if (order >= 4) {
            auto d3 = [&](double j) {
                return cd.f3 ? cd.f3(j) : detail::limit_third_derivative(f, j, j_min, 5e-3);
            };
            const double c4 = conv == Convention::endpoint ? bernoulli_even(4) / 24.0
                                                           : bernoulli_even_half(4) / 24.0;
            b.em_higher.push_back(c4 * (d3(hi) - d3(lo)));
        }
    }
    try {
        b.exact = exact_sum(pot, N, prec);
    } catch (const error&) {
        // no oracle for this configuration; breakdown stays estimate-only
    }
    b.assemble();
    return b;
}

/// Endpoint-convention Euler-Maclaurin series for the linear half-well
/// eigenvalue sum E_N, on the exact (Airy) level function: the integral term,
/// the trapezoid term, then one Bernoulli term per even order up to
/// max_bernoulli. All derivatives are closed-form via the Airy flow.
inline AsymptoticSeries linwell_em_series(int N, int max_bernoulli = 28) {
    if (N < 2) throw argument_error("need at least two levels");
    if (max_bernoulli < 2 || max_bernoulli > 32 || max_bernoulli % 2 != 0)
        throw argument_error("max_bernoulli must be even and at most 32");
    const double cbrt2 = std::cbrt(2.0);

    AsymptoticSeries s;
    s.label = "linwell-E" + std::to_string(N) + "-endpoint";
    s.terms.push_back(airy_level_integral(1, N) / cbrt2);

    const int max_deriv = max_bernoulli - 1;
    const std::vector<double> c_lo = airy_level_taylor_coeffs(1, max_deriv + 1);
    const std::vector<double> c_hi = airy_level_taylor_coeffs(N, max_deriv + 1);
    s.terms.push_back(0.5 * (c_lo[0] + c_hi[0]) / cbrt2);

    std::vector<double> factorial(max_deriv + 2, 1.0);
    for (std::size_t k = 1; k < factorial.size(); ++k)
        factorial[k] = factorial[k - 1] * k;

    for (int n = 2; n <= max_bernoulli; n += 2) {
        const int q = n - 1;  // derivative order entering the B_n term
        const double f_lo = c_lo[q] * factorial[q] / cbrt2;
        const double f_hi = c_hi[q] * factorial[q] / cbrt2;
        s.terms.push_back(bernoulli_even(n) / factorial[n] * (f_hi - f_lo));
    }
    return s;
}

} // namespace semisum
