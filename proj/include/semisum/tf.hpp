#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <vector>

#include "semisum/errors.hpp"
#include "semisum/numeric.hpp"
#include "semisum/potential.hpp"
#include "semisum/wkb.hpp"

namespace semisum {

/// Grid-sampled particle density (particles per Bohr).
struct DensityProfile {
    std::vector<double> grid;
    std::vector<double> values;
    double particle_number = 0.0;
    std::optional<double> mu;

    bool uniform_grid() const {
        if (grid.size() < 2) return false;
        const double h = grid[1] - grid[0];
        for (std::size_t i = 1; i + 1 < grid.size(); ++i)
            if (std::abs((grid[i + 1] - grid[i]) - h) > 1e-10 * std::abs(h)) return false;
        return true;
    }

    void validate() const {
        if (grid.size() != values.size() || grid.size() < 2)
            throw argument_error("density profile needs matching grid and values");
        for (std::size_t i = 0; i + 1 < grid.size(); ++i)
            if (!(grid[i] < grid[i + 1]))
                throw argument_error("density grid must be strictly increasing");
        double norm = 0.0;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            if (values[i] < 0.0 || values[i + 1] < 0.0)
                throw argument_error("density must be non-negative");
            norm += 0.5 * (values[i] + values[i + 1]) * (grid[i + 1] - grid[i]);
        }
        if (std::abs(norm - particle_number) >
            1e-8 * std::max(1.0, std::abs(particle_number)))
            throw argument_error("density normalization does not match particle_number");
    }
};

namespace detail {

template <class F>
double profile_integral(const DensityProfile& n, F&& point_value) {
    std::vector<double> vals(n.grid.size());
    for (std::size_t i = 0; i < n.grid.size(); ++i) vals[i] = point_value(i);
    if (n.uniform_grid()) return trapezoid_refined(vals, n.grid[1] - n.grid[0]);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < vals.size(); ++i)
        sum += 0.5 * (vals[i] + vals[i + 1]) * (n.grid[i + 1] - n.grid[i]);
    return sum;
}

} // namespace detail

/// T_TF[n] = (pi^2 / 6) * integral of n^3.
inline double tf_kinetic(const DensityProfile& n) {
    n.validate();
    const double t = detail::profile_integral(
        n, [&](std::size_t i) { return n.values[i] * n.values[i] * n.values[i]; });
    return M_PI * M_PI / 6.0 * t;
}

struct VwDiagnostics {
    int excluded_points = 0;
    double excluded_mass = 0.0;
};

/// von Weizsacker term (1/8) * integral of (n')^2 / n, with n' by central
/// differences (second-order one-sided at the profile ends). Points with
/// n < 1e-12 * max(n) are excluded and reported.
inline double vw_kinetic(const DensityProfile& n, VwDiagnostics* diag = nullptr) {
    n.validate();
    const std::size_t m = n.grid.size();
    double nmax = 0.0;
    for (double v : n.values) nmax = std::max(nmax, v);
    const double floor = 1e-12 * nmax;

    VwDiagnostics local;
    std::vector<double> integrand(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (n.values[i] < floor) {
            ++local.excluded_points;
            const double w =
                i == 0 ? 0.5 * (n.grid[1] - n.grid[0])
                : i + 1 == m ? 0.5 * (n.grid[m - 1] - n.grid[m - 2])
                             : 0.5 * (n.grid[i + 1] - n.grid[i - 1]);
            local.excluded_mass += n.values[i] * w;
            continue;
        }
        double d;
        if (i == 0) {
            const double h = n.grid[1] - n.grid[0];
            d = (-3.0 * n.values[0] + 4.0 * n.values[1] - n.values[2]) / (2.0 * h);
        } else if (i + 1 == m) {
            const double h = n.grid[m - 1] - n.grid[m - 2];
            d = (3.0 * n.values[m - 1] - 4.0 * n.values[m - 2] + n.values[m - 3]) /
                (2.0 * h);
        } else {
            d = (n.values[i + 1] - n.values[i - 1]) / (n.grid[i + 1] - n.grid[i - 1]);
        }
        integrand[i] = d * d / n.values[i];
    }
    if (diag) *diag = local;
    const double t = [&] {
        if (n.uniform_grid()) return trapezoid_refined(integrand, n.grid[1] - n.grid[0]);
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < integrand.size(); ++i)
            sum += 0.5 * (integrand[i] + integrand[i + 1]) * (n.grid[i + 1] - n.grid[i]);
        return sum;
    }();
    return 0.125 * t;
}

/// 1D gradient expansion for fully spin-polarized fermions:
/// T_TF - (1/3) T_VW.
inline double gea_kinetic(const DensityProfile& n) {
    return tf_kinetic(n) - vw_kinetic(n) / 3.0;
}

/// Pointwise potential-based expansion diagnostics.
struct SpPointEval {
    double momentum = 0.0;
    double leading = 0.0;
    double correction = 0.0;
    bool near_turning_point = false;
    double value() const { return leading + correction; }
};

/// n(x) = (p/pi) [1 + v''/(12 p^4)] with p evaluated at the Fermi energy mu;
/// zero outside the allowed region. The order-2 term diverges as p -> 0 and
/// is flagged when it stops being a small correction.
inline SpPointEval sp_density_eval(const Potential& pot, double mu, double x) {
    SpPointEval e;
    const double p = pot.classical_momentum(mu, x);
    if (p <= 0.0) return e;
    e.momentum = p;
    e.leading = p / M_PI;
    e.correction = e.leading * pot.derivative(x, 2) / (12.0 * p * p * p * p);
    e.near_turning_point = std::abs(e.correction) > 0.25 * std::abs(e.leading);
    return e;
}

inline double sp_density(const Potential& pot, double mu, double x) {
    return sp_density_eval(pot, mu, x).value();
}

/// t(x) = (p^3 / 2 pi) [1/3 + v''/(4 p^4)].
inline SpPointEval sp_kinetic_density_eval(const Potential& pot, double mu, double x) {
    SpPointEval e;
    const double p = pot.classical_momentum(mu, x);
    if (p <= 0.0) return e;
    e.momentum = p;
    const double p3 = p * p * p;
    e.leading = p3 / (2.0 * M_PI) / 3.0;
    e.correction = p3 / (2.0 * M_PI) * pot.derivative(x, 2) / (4.0 * p3 * p);
    e.near_turning_point = std::abs(e.correction) > 0.25 * std::abs(e.leading);
    return e;
}

inline double sp_kinetic_density(const Potential& pot, double mu, double x) {
    return sp_kinetic_density_eval(pot, mu, x).value();
}

namespace detail {

/// TF particle count N(mu) = action(mu) / pi, strictly increasing in mu.
inline double tf_count(const Potential& pot, double mu) {
    return action_integral(pot, mu, 1e-12) / M_PI;
}

inline std::vector<double> tf_grid(const Potential& pot, double mu, int points) {
    const TurningPoints tp = turning_points(pot, mu);
    double lo = tp.allowed.front().lo;
    double hi = tp.allowed.back().hi;
    const double margin = 0.2 * (hi - lo);
    lo = std::max(pot.domain_min(), lo - margin);
    hi = std::min(pot.domain_max(), hi + margin);
    std::vector<double> g(points);
    const double h = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) g[i] = lo + i * h;
    g.back() = hi;
    return g;
}

} // namespace detail

/// Solves the 1D TF Euler equation in closed local form,
/// n(x) = sqrt(2 (mu - v)) / pi, with mu fixed by bisection so that the
/// grid-trapezoid normalization equals N.
inline DensityProfile tf_scf(const Potential& pot, double N, int grid_points = 32769) {
    if (!(N > 0)) throw argument_error("particle number must be positive");
    if (grid_points < 9) throw argument_error("grid too small");

    const double vmin = pot.minimum_value();
    const double scale = std::max(1.0, std::abs(vmin));
    double lo = vmin + 1e-12 * scale;
    double hi;
    if (pot.kind() == PotentialKind::poschl_teller) {
        hi = -1e-11 * scale;
        if (detail::tf_count(pot, hi) <= N)
            throw normalization_failure_error(
                "well does not hold the requested TF particle number");
    } else {
        hi = vmin + scale;
        while (detail::tf_count(pot, hi) <= N) {
            hi = vmin + 2.0 * (hi - vmin);
            if (!(hi < 1e30))
                throw normalization_failure_error("TF normalization bracket failed");
        }
    }
    const double mu0 =
        solve_bracketed([&](double m) { return detail::tf_count(pot, m) - N; }, lo, hi,
                        1e-13);

    // fixed grid from the first-pass mu; then normalize exactly on that grid
    const std::vector<double> grid = detail::tf_grid(pot, mu0, grid_points);
    const double h = grid[1] - grid[0];
    auto grid_norm = [&](double m) {
        double sum = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double v = pot.value(grid[i]);
            const double n = m > v ? std::sqrt(2.0 * (m - v)) / M_PI : 0.0;
            const double w = (i == 0 || i + 1 == grid.size()) ? 0.5 : 1.0;
            sum += w * n;
        }
        return sum * h;
    };
    double blo = mu0, bhi = mu0;
    double step = 1e-6 * std::max(1.0, std::abs(mu0));
    while (grid_norm(blo) > N) { blo -= step; step *= 2.0; if (!(blo > vmin)) { blo = lo; break; } }
    step = 1e-6 * std::max(1.0, std::abs(mu0));
    while (grid_norm(bhi) < N) { bhi += step; step *= 2.0; if (pot.kind() == PotentialKind::poschl_teller && bhi >= 0.0) { bhi = -1e-12; break; } }
    const double mu = solve_bracketed([&](double m) { return grid_norm(m) - N; }, blo,
                                      bhi, 1e-14, 1e-14 * std::abs(mu0));

    DensityProfile out;
    out.grid = grid;
    out.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = pot.value(grid[i]);
        out.values[i] = mu > v ? std::sqrt(2.0 * (mu - v)) / M_PI : 0.0;
    }
    out.particle_number = N;
    out.mu = mu;
    return out;
}

/// TF total energy pieces evaluated on the SCF profile.
struct TfResult {
    DensityProfile density;
    double mu = 0.0;
    double kinetic = 0.0;
    double external = 0.0;
    double total = 0.0;
};

inline TfResult tf_solve(const Potential& pot, double N, int grid_points = 32769) {
    TfResult r;
    r.density = tf_scf(pot, N, grid_points);
    r.mu = *r.density.mu;
    r.kinetic = tf_kinetic(r.density);
    r.external = detail::profile_integral(r.density, [&](std::size_t i) {
        return r.density.values[i] * pot.value(r.density.grid[i]);
    });
    r.total = r.kinetic + r.external;
    return r;
}

/// E_TF = T_TF[n_TF] + integral of n_TF v.
inline double tf_total_energy(const Potential& pot, double N, int grid_points = 32769) {
    return tf_solve(pot, N, grid_points).total;
}

/// One row of the slowly-varying-cell study: the cosine cell
/// v = eta cos(2 pi x / L) filled with `bands` particles per cell in the
/// thermodynamic (full Brillouin-zone) limit, solved in a Bloch plane-wave
/// basis, against the TF and gradient-expansion functionals evaluated on the
/// exact cell density.
struct GeaStudyRow {
    double eta = 0.0;
    double t_oracle = 0.0;
    double tf_error = 0.0;
    double gea_error = 0.0;
    double ratio = 0.0;
};

inline GeaStudyRow gea_study_point(double eta, double L = 2.0 * M_PI, int bands = 5,
                                   int pw_cut = 24, int x_points = 4096) {
    if (!(L > 0) || bands < 1 || pw_cut < bands + 4)
        throw argument_error("bad slowly-varying-cell study parameters");
    const double G0 = 2.0 * M_PI / L;
    const int dim = 2 * pw_cut + 1;

    // kappa panels graded toward the zone boundary, where the highest filled
    // band has its (weak) avoided crossing
    std::vector<double> edges{0.0};
    const int n_panels = 8;
    for (int i = 0; i + 1 < n_panels; ++i) edges.push_back(0.5 * (1.0 - std::pow(0.5, i + 1)));
    edges.push_back(0.5);

    const GaussRule& rule = gauss_rule(32);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    double t_sum = 0.0;
    std::vector<double> rho_g(2 * dim, 0.0);  // cosine Fourier coefficients, G = 0..
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double mid = 0.5 * (edges[p] + edges[p + 1]);
        const double half = 0.5 * (edges[p + 1] - edges[p]);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double kappa = mid + half * rule.nodes[q];
            const double wt = rule.weights[q] * half * 2.0;  // doubled for +-k
            H.setZero();
            for (int m = -pw_cut; m <= pw_cut; ++m) {
                const int i = m + pw_cut;
                H(i, i) = 0.5 * G0 * G0 * (m + kappa) * (m + kappa);
                if (i + 1 < dim) {
                    H(i, i + 1) = 0.5 * eta;
                    H(i + 1, i) = 0.5 * eta;
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
            for (int b = 0; b < bands; ++b) {
                t_sum += wt * es.eigenvalues()(b);
                const auto c = es.eigenvectors().col(b);
                for (int g = 0; g < dim; ++g) {
                    double acc = 0.0;
                    for (int m = 0; m + g < dim; ++m) acc += c(m) * c(m + g);
                    rho_g[g] += wt * acc * (g == 0 ? 1.0 : 2.0);
                }
            }
        }
    }

    DensityProfile n;
    n.grid.resize(x_points + 1);
    n.values.resize(x_points + 1);
    const double h = L / x_points;
    for (int i = 0; i <= x_points; ++i) {
        const double x = i * h;
        double acc = rho_g[0];
        for (int g = 1; g < dim; ++g) acc += rho_g[g] * std::cos(g * G0 * x);
        n.grid[i] = x;
        n.values[i] = acc / L;
    }
    n.particle_number = bands;

    double pot_energy = 0.0;
    {
        std::vector<double> nv(n.values.size());
        for (std::size_t i = 0; i < n.values.size(); ++i)
            nv[i] = n.values[i] * eta * std::cos(G0 * n.grid[i]);
        pot_energy = trapezoid(nv, h);
    }

    GeaStudyRow row;
    row.eta = eta;
    row.t_oracle = t_sum - pot_energy;
    row.tf_error = std::abs(tf_kinetic(n) - row.t_oracle);
    row.gea_error = std::abs(gea_kinetic(n) - row.t_oracle);
    row.ratio = row.gea_error / row.tf_error;
    return row;
}

} // namespace semisum
