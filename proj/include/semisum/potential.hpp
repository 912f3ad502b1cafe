#pragma once

#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "semisum/errors.hpp"
#include "semisum/numeric.hpp"

namespace semisum {

enum class PotentialKind { box, harmonic, poschl_teller, linear_half_well, quartic };

enum class BoundaryKind { hard_wall, decaying };

/// Quantization offset as an exact rational (1, 1/2 or 3/4 for the catalog).
struct MaslovIndex {
    int num = 1;
    int den = 2;
    double value() const { return static_cast<double>(num) / den; }
};

/// One of the five catalog potentials, in Hartree atomic units.
///
///   box            v = 0 on [0, L], hard walls
///   harmonic       v = w^2 x^2 / 2
///   poschl_teller  v = -D / cosh^2 x
///   linear_half_well  v = x on [0, inf), hard wall at 0
///   quartic        v = a x^4 + b x^2
class Potential {
public:
    static Potential box(double length) {
        if (!(length > 0)) throw argument_error("box requires L > 0");
        Potential p(PotentialKind::box);
        p.a_ = length;
        return p;
    }
    static Potential harmonic(double omega) {
        if (!(omega > 0)) throw argument_error("harmonic requires w > 0");
        Potential p(PotentialKind::harmonic);
        p.a_ = omega;
        return p;
    }
    static Potential poschl_teller(double depth) {
        if (!(depth > 0)) throw argument_error("poschl_teller requires D > 0");
        Potential p(PotentialKind::poschl_teller);
        p.a_ = depth;
        return p;
    }
    static Potential linear_half_well() { return Potential(PotentialKind::linear_half_well); }
    static Potential quartic(double a, double b) {
        if (!(a > 0)) throw argument_error("quartic requires a > 0");
        Potential p(PotentialKind::quartic);
        p.a_ = a;
        p.b_ = b;
        return p;
    }

    PotentialKind kind() const { return kind_; }
    double box_length() const { return a_; }
    double omega() const { return a_; }
    double depth() const { return a_; }
    double quartic_a() const { return a_; }
    double quartic_b() const { return b_; }

    double domain_min() const {
        switch (kind_) {
            case PotentialKind::box: return 0.0;
            case PotentialKind::linear_half_well: return 0.0;
            default: return -std::numeric_limits<double>::infinity();
        }
    }
    double domain_max() const {
        if (kind_ == PotentialKind::box) return a_;
        return std::numeric_limits<double>::infinity();
    }
    BoundaryKind boundary_min() const {
        return (kind_ == PotentialKind::box || kind_ == PotentialKind::linear_half_well)
                   ? BoundaryKind::hard_wall
                   : BoundaryKind::decaying;
    }
    BoundaryKind boundary_max() const {
        return kind_ == PotentialKind::box ? BoundaryKind::hard_wall : BoundaryKind::decaying;
    }

    bool in_domain(double x) const { return x >= domain_min() && x <= domain_max(); }

    /// v(x); throws domain_error outside the domain.
    double value(double x) const {
        check_domain(x);
        switch (kind_) {
            case PotentialKind::box: return 0.0;
            case PotentialKind::harmonic: return 0.5 * a_ * a_ * x * x;
            case PotentialKind::poschl_teller: {
                const double c = std::cosh(x);
                return -a_ / (c * c);
            }
            case PotentialKind::linear_half_well: return x;
            case PotentialKind::quartic: return a_ * x * x * x * x + b_ * x * x;
        }
        return 0.0;
    }

    /// Closed-form v' or v''; order must be 1 or 2.
    double derivative(double x, int order) const {
        check_domain(x);
        if (order != 1 && order != 2) throw argument_error("derivative order must be 1 or 2");
        switch (kind_) {
            case PotentialKind::box:
                return 0.0;
            case PotentialKind::harmonic:
                return order == 1 ? a_ * a_ * x : a_ * a_;
            case PotentialKind::poschl_teller: {
                const double s = 1.0 / std::cosh(x);
                const double t = std::tanh(x);
                if (order == 1) return 2.0 * a_ * s * s * t;
                return -a_ * (4.0 * s * s * t * t - 2.0 * s * s * s * s);
            }
            case PotentialKind::linear_half_well:
                return order == 1 ? 1.0 : 0.0;
            case PotentialKind::quartic:
                return order == 1 ? 4.0 * a_ * x * x * x + 2.0 * b_ * x
                                  : 12.0 * a_ * x * x + 2.0 * b_;
        }
        return 0.0;
    }

    /// p(eps, x) = sqrt(2 (eps - v)), clamped to zero in the forbidden region.
    double classical_momentum(double eps, double x) const {
        const double v = value(x);
        return eps > v ? std::sqrt(2.0 * (eps - v)) : 0.0;
    }

    double minimum_value() const {
        switch (kind_) {
            case PotentialKind::box: return 0.0;
            case PotentialKind::harmonic: return 0.0;
            case PotentialKind::poschl_teller: return -a_;
            case PotentialKind::linear_half_well: return 0.0;
            case PotentialKind::quartic:
                return b_ >= 0.0 ? 0.0 : -b_ * b_ / (4.0 * a_);
        }
        return 0.0;
    }

    double minimum_position() const {
        if (kind_ == PotentialKind::box) return 0.5 * a_;
        if (kind_ == PotentialKind::quartic && b_ < 0.0) return std::sqrt(-b_ / (2.0 * a_));
        return 0.0;
    }

    MaslovIndex maslov_index() const {
        switch (kind_) {
            case PotentialKind::box: return {1, 1};
            case PotentialKind::linear_half_well: return {3, 4};
            default: return {1, 2};
        }
    }

    /// Spec string in the CLI grammar (see parse_potential).
    std::string spec_string() const;

private:
    explicit Potential(PotentialKind k) : kind_(k) {}

    void check_domain(double x) const {
        if (!in_domain(x)) throw domain_error("position outside potential domain");
    }

    PotentialKind kind_;
    double a_ = 0.0;
    double b_ = 0.0;
};

struct TurningPoint {
    double x = 0.0;
    bool wall = false;
};

struct AllowedInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_wall = false;
    bool hi_wall = false;
};

/// Boundaries of the classically allowed region at energy eps.
struct TurningPoints {
    std::vector<TurningPoint> points;
    std::vector<AllowedInterval> allowed;
};

namespace detail {

/// Finds the scan window outside of which v > eps (or the domain ends).
/// Returns false for a side on which the allowed region is unbounded.
inline bool find_forbidden_edge(const Potential& pot, double eps, int dir, double& edge) {
    const double bound = dir < 0 ? pot.domain_min() : pot.domain_max();
    if (std::isfinite(bound)) {
        edge = bound;
        return true;  // hard wall side; caller marks it as a wall
    }
    double x0 = pot.minimum_position();
    double step = 1.0;
    for (int i = 0; i < 80; ++i) {
        const double x = x0 + dir * step;
        if (pot.value(x) > eps) {
            edge = x;
            return true;
        }
        step *= 1.5;
    }
    return false;  // decaying potential with eps above its tail: allowed to infinity
}

} // namespace detail

/// All solutions of v(x) = eps, refined to tol * max(1, |x|); hard walls are
/// reported as wall-type boundaries. Throws no_allowed_region_error when eps
/// does not exceed the potential infimum.
inline TurningPoints turning_points(const Potential& pot, double eps, double tol = 1e-13) {
    if (!(eps > pot.minimum_value()))
        throw no_allowed_region_error("energy at or below the potential infimum");

    TurningPoints result;
    const double inf = std::numeric_limits<double>::infinity();

    double lo, hi;
    const bool lo_bounded = detail::find_forbidden_edge(pot, eps, -1, lo);
    const bool hi_bounded = detail::find_forbidden_edge(pot, eps, +1, hi);
    const bool lo_wall = lo_bounded && pot.boundary_min() == BoundaryKind::hard_wall &&
                         lo == pot.domain_min();
    const bool hi_wall = hi_bounded && pot.boundary_max() == BoundaryKind::hard_wall &&
                         hi == pot.domain_max();

    std::vector<double> boundaries;
    if (lo_bounded && hi_bounded) {
        // scan for sign changes of v - eps and refine each crossing
        const int n = 4096;
        const double h = (hi - lo) / n;
        double xp = lo;
        double fp = pot.value(xp) - eps;
        for (int i = 1; i <= n; ++i) {
            const double x = lo + i * h;
            const double fx = pot.value(x) - eps;
            if ((fp < 0.0) != (fx < 0.0)) {
                auto f = [&](double t) { return pot.value(t) - eps; };
                auto df = [&](double t) { return pot.derivative(t, 1); };
                double root = refine_root(f, df, xp, x, tol);
                root = refine_root(f, df, std::max(xp, root - h), std::min(x, root + h),
                                   tol * std::max(1.0, std::abs(root)));
                boundaries.push_back(root);
            }
            xp = x;
            fp = fx;
        }
    }

    std::vector<TurningPoint> marks;
    if (lo_wall && pot.value(lo) < eps) marks.push_back({lo, true});
    for (double r : boundaries) marks.push_back({r, false});
    if (hi_wall && pot.value(hi) < eps) marks.push_back({hi, true});
    result.points = marks;

    // assemble allowed intervals: between consecutive marks (or out to infinity
    // on an unbounded side) wherever the midpoint is classically allowed
    std::vector<double> edges;
    std::vector<bool> edge_wall;
    if (!lo_bounded) { edges.push_back(-inf); edge_wall.push_back(false); }
    for (const auto& m : marks) { edges.push_back(m.x); edge_wall.push_back(m.wall); }
    if (!hi_bounded) { edges.push_back(inf); edge_wall.push_back(false); }

    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i];
        const double b = edges[i + 1];
        double mid;
        if (std::isinf(a) && std::isinf(b)) mid = pot.minimum_position();
        else if (std::isinf(a)) mid = b - 1.0;
        else if (std::isinf(b)) mid = a + 1.0;
        else mid = 0.5 * (a + b);
        if (pot.value(mid) < eps)
            result.allowed.push_back({a, b, edge_wall[i], edge_wall[i + 1]});
    }
    if (result.allowed.empty())
        throw no_allowed_region_error("no classically allowed interval at this energy");
    return result;
}

/// Parses the CLI potential grammar:
///   pt:D=<real>  box:L=<real>  harm:w=<real>  linwell  quartic:a=<real>,b=<real>
inline Potential parse_potential(std::string_view text) {
    auto fail = [&](std::string_view token) -> Potential {
        throw parse_error("malformed potential spec `" + std::string(token) + "`");
    };
    auto parse_real = [&](std::string_view s) {
        double v = 0.0;
        const char* first = s.data();
        const char* last = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) fail(text);
        return v;
    };
    auto expect_key = [&](std::string_view s, std::string_view key) {
        if (s.size() <= key.size() + 1 || s.substr(0, key.size()) != key ||
            s[key.size()] != '=')
            fail(text);
        return s.substr(key.size() + 1);
    };

    if (text == "linwell") return Potential::linear_half_well();
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) fail(text);
    const std::string_view head = text.substr(0, colon);
    const std::string_view rest = text.substr(colon + 1);
    if (head == "pt") return Potential::poschl_teller(parse_real(expect_key(rest, "D")));
    if (head == "box") return Potential::box(parse_real(expect_key(rest, "L")));
    if (head == "harm") return Potential::harmonic(parse_real(expect_key(rest, "w")));
    if (head == "quartic") {
        const auto comma = rest.find(',');
        if (comma == std::string_view::npos) fail(text);
        const double a = parse_real(expect_key(rest.substr(0, comma), "a"));
        const double b = parse_real(expect_key(rest.substr(comma + 1), "b"));
        return Potential::quartic(a, b);
    }
    return fail(text);
}

namespace detail {

inline std::string real_to_string(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace detail

inline std::string Potential::spec_string() const {
    switch (kind_) {
        case PotentialKind::box: return "box:L=" + detail::real_to_string(a_);
        case PotentialKind::harmonic: return "harm:w=" + detail::real_to_string(a_);
        case PotentialKind::poschl_teller: return "pt:D=" + detail::real_to_string(a_);
        case PotentialKind::linear_half_well: return "linwell";
        case PotentialKind::quartic:
            return "quartic:a=" + detail::real_to_string(a_) +
                   ",b=" + detail::real_to_string(b_);
    }
    return {};
}

} // namespace semisum
