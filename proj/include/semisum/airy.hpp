#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "semisum/errors.hpp"
#include "semisum/numeric.hpp"
#include "semisum/precision.hpp"

namespace semisum {

/// Public arbitrary-precision type for the Airy oracle path (70 decimal
/// digits: enough for any certified target up to the 50-digit cap plus guard).
using big_float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<70>>;

namespace airy_detail {

/// Internal working type. The Maclaurin series on the oscillatory axis loses
/// about zeta/ln(10) ~ 34 digits at |z| = 24 (the asymptotic switch radius),
/// so 120 digits keep >= 80 effective digits everywhere on the Taylor path.
using work = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<120>>;

inline const work& work_pi() {
    static const work v(
        "3.1415926535897932384626433832795028841971693993751058209749445923078164062862"
        "0899862803482534211706798214808651328230664709384460955");
    return v;
}
inline const work& ai_zero_value() {
    static const work v(
        "0.3550280538878172392600631860041831763979791741991772405833265103008100424501"
        "26712957174246054040271688420448730349495839758292670446");
    return v;
}
inline const work& ai_zero_slope() {
    static const work v(
        "-0.2588194037928067984051835601892039634790911383549345822100018138561027726767"
        "90280654196405827275384313371193211789133381275035952168");
    return v;
}
inline const work& bi_zero_value() {
    static const work v(
        "0.6149266274460007351509223690936135535947281886485965050408787530142965193055"
        "20640529387343345267569240728438782242516724523554227288");
    return v;
}
inline const work& bi_zero_slope() {
    static const work v(
        "0.4482883573538263579148237103988283908662267992122620610828087783723307550097"
        "80647185046574400736362878496329249031699773802889479553");
    return v;
}

constexpr double kAsymptoticSwitch = 24.0;

struct AiryQuad {
    work ai, aip, bi, bip;
};

/// Maclaurin evaluation of Ai, Bi and derivatives. Valid for |z| <= ~26
/// before cancellation eats into the certified range.
inline AiryQuad airy_taylor_all(const work& z) {
    static const work term_floor("1e-126");
    const work z3 = z * z * z;
    work f(1), fk(1);
    work g = z, gk = z;
    work fp(0), gp(1);
    for (int k = 1; k < 4000; ++k) {
        fk *= z3 / ((3 * k) * (3 * k - 1));
        gk *= z3 / ((3 * k + 1) * (3 * k));
        f += fk;
        g += gk;
        if (z != 0) {
            fp += fk * (3 * k) / z;
            gp += gk * (3 * k + 1) / z;
        }
        const work scale = abs(f) + abs(g) + 1;
        if (abs(fk) < term_floor * scale && abs(gk) < term_floor * scale) break;
    }
    AiryQuad q;
    q.ai = ai_zero_value() * f + ai_zero_slope() * g;
    q.aip = ai_zero_value() * fp + ai_zero_slope() * gp;
    q.bi = bi_zero_value() * f + bi_zero_slope() * g;
    q.bip = bi_zero_value() * fp + bi_zero_slope() * gp;
    return q;
}

/// Poincare expansions of Ai(-x), Ai'(-x) for x >= 24 (smallest term there is
/// ~1e-70, comfortably below any certified 50-digit target).
inline std::pair<work, work> airy_asymptotic_neg(const work& x) {
    const work zeta = work(2) / 3 * x * sqrt(x);
    const work phase = zeta - work_pi() / 4;
    const work cp = cos(phase);
    const work sp = sin(phase);

    work se(0), so(0), sep(0), sop(0);
    work u(1);
    work inv_zeta_k(1);
    work prev_mag(0);
    for (int k = 0; k < 600; ++k) {
        const work v = (k == 0) ? work(1) : u * (6 * k + 1) / (1 - 6 * k);
        const work term = u * inv_zeta_k;
        const int sign = (k % 4 < 2) ? 1 : -1;  // (-1)^(k/2) over even/odd split
        if (k % 2 == 0) {
            se += sign * term;
            sep += sign * v * inv_zeta_k;
        } else {
            so += sign * term;
            sop += sign * v * inv_zeta_k;
        }
        const work mag = abs(term);
        if (k > 4 && (mag < work("1e-82") || mag > prev_mag)) break;
        prev_mag = mag;
        u *= work((6 * k + 1)) * (6 * k + 5) / (72 * (k + 1));
        inv_zeta_k /= zeta;
    }

    const work root_pi = sqrt(work_pi());
    const work x14 = sqrt(sqrt(x));
    const work ai = (cp * se + sp * so) / (root_pi * x14);
    const work aip = (x14 / root_pi) * (sp * sep - cp * sop);
    return {ai, aip};
}

/// Ai(z) and Ai'(z): Taylor near the origin, asymptotic expansion beyond.
inline std::pair<work, work> airy_ai_pair(const work& z) {
    if (z > kAsymptoticSwitch)
        throw argument_error("airy evaluation not supported deep in the decaying tail");
    if (z >= -kAsymptoticSwitch) {
        const AiryQuad q = airy_taylor_all(z);
        return {q.ai, q.aip};
    }
    return airy_asymptotic_neg(-z);
}

/// Asymptotic initial guess for the m-th negative Ai zero (double precision).
inline double zero_initial_guess(int m) {
    const double t = 3.0 * M_PI * (4.0 * m - 1.0) / 8.0;
    const double q = 1.0 / (t * t);
    const double series =
        1.0 + q * (5.0 / 48.0 +
                   q * (-5.0 / 36.0 +
                        q * (77125.0 / 82944.0 +
                             q * (-108056875.0 / 6967296.0 +
                                  q * (162375596875.0 / 334430208.0)))));
    return -std::pow(t, 2.0 / 3.0) * series;
}

inline work refine_zero(int m, const PrecisionConfig& prec) {
    prec.validate();
    if (m < 1) throw argument_error("airy zero index starts at 1");
    if (prec.target_digits > 50)
        throw argument_error("airy path certifies at most 50 digits");

    work x(zero_initial_guess(m));
    const work step_tol = pow(work(10), -(prec.target_digits + 8)) * abs(x);
    const double spacing = M_PI / std::sqrt(std::abs(static_cast<double>(x))) ;
    bool converged = false;
    for (int it = 0; it < prec.max_iterations; ++it) {
        const auto [ai, aip] = airy_ai_pair(x);
        work step = ai / aip;
        const work clamp = work(0.25 * spacing);
        if (abs(step) > clamp) step = step > 0 ? clamp : -clamp;
        x -= step;
        if (abs(step) < step_tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw precision_failure_error("airy zero refinement did not converge");
    // certify: |Ai| at the refined zero must sit below 10^-target * |Ai'|
    const auto [ai, aip] = airy_ai_pair(x);
    if (!(abs(ai) < pow(work(10), -prec.target_digits) * abs(aip)))
        throw precision_failure_error("airy zero residual exceeds the certified target");
    return x;
}

inline const work& cbrt_two() {
    static const work v = exp(log(work(2)) / 3);
    return v;
}

} // namespace airy_detail

/// m-th negative zero of Ai (m >= 1), certified to prec.target_digits.
inline big_float airy_zero(int m, const PrecisionConfig& prec) {
    return big_float(airy_detail::refine_zero(m, prec));
}

/// Linear half-well eigenvalue in Hartree: eps_j = -a_{j+1} / 2^(1/3).
inline big_float airy_eigenvalue_big(int j, const PrecisionConfig& prec) {
    if (j < 0) throw argument_error("level index must be non-negative");
    const airy_detail::work a = airy_detail::refine_zero(j + 1, prec);
    return big_float(-a / airy_detail::cbrt_two());
}

inline double airy_eigenvalue(int j, const PrecisionConfig& prec = {}) {
    return static_cast<double>(airy_eigenvalue_big(j, prec));
}

/// Sum of the magnitudes of the first N Ai zeros (the half-well eigenvalue sum
/// in the 2^(1/3)-scaled units of the published 36-digit benchmark value).
inline big_float airy_zero_magnitude_sum(int N, const PrecisionConfig& prec) {
    if (N < 1) throw argument_error("N must be positive");
    airy_detail::work sum(0);
    for (int m = 1; m <= N; ++m) sum -= airy_detail::refine_zero(m, prec);
    return big_float(sum);
}

/// Hartree eigenvalue sum for the linear half-well.
inline big_float airy_eigenvalue_sum_big(int N, const PrecisionConfig& prec) {
    airy_detail::work sum(0);
    for (int m = 1; m <= N; ++m) sum -= airy_detail::refine_zero(m, prec);
    return big_float(sum / airy_detail::cbrt_two());
}

/// Residual pair (Ai, Ai') at an arbitrary point, for certification tests.
inline std::pair<big_float, big_float> airy_ai_pair_big(const big_float& z) {
    const auto [ai, aip] = airy_detail::airy_ai_pair(airy_detail::work(z));
    return {big_float(ai), big_float(aip)};
}

inline std::string big_float_fixed(const big_float& v, int decimals) {
    return v.str(decimals, std::ios_base::fixed);
}

inline std::string big_float_sig(const big_float& v, int digits) {
    return v.str(digits);
}

/// Squared Airy modulus M^2(x) = Ai(-x)^2 + Bi(-x)^2 (x <= ~24).
inline double airy_modulus_sq(double x) {
    using airy_detail::work;
    if (!(x <= airy_detail::kAsymptoticSwitch + 2))
        throw argument_error("airy modulus requested beyond the Taylor radius");
    const airy_detail::AiryQuad q = airy_detail::airy_taylor_all(work(-x));
    return static_cast<double>(q.ai * q.ai + q.bi * q.bi);
}

/// Taylor coefficients c_0..c_{count-1} of the continuous level-position
/// function x(m) about the integer index m (x(m) interpolates the Ai zero
/// magnitudes through the exact phase of the Airy pair). Built from the flow
///   dx/dm = pi^2 (Ai^2 + Bi^2)(-x),
/// with the Airy Taylor coefficients generated by the defining equation, so
/// every derivative comes out closed-form rather than by differencing.
inline std::vector<double> airy_level_taylor_coeffs(int m, int count) {
    using airy_detail::work;
    const PrecisionConfig prec = PrecisionConfig::for_digits(30);
    const work x0w = airy_detail::refine_zero(m, prec);
    const double x0 = -static_cast<double>(x0w);  // zero magnitude, > 0
    const airy_detail::AiryQuad q = airy_detail::airy_taylor_all(x0w);

    const int L = count + 2;
    std::vector<double> A(L + 2, 0.0), B(L + 2, 0.0);
    A[0] = 0.0;  // exactly at the zero of Ai
    A[1] = -static_cast<double>(q.aip);
    B[0] = static_cast<double>(q.bi);
    B[1] = -static_cast<double>(q.bip);
    for (int k = 0; k < L; ++k) {
        const double am1 = k >= 1 ? A[k - 1] : 0.0;
        const double bm1 = k >= 1 ? B[k - 1] : 0.0;
        A[k + 2] = -(x0 * A[k] + am1) / ((k + 1.0) * (k + 2.0));
        B[k + 2] = -(x0 * B[k] + bm1) / ((k + 1.0) * (k + 2.0));
    }
    const double pi2 = M_PI * M_PI;
    std::vector<double> g(L + 1, 0.0);
    for (int k = 0; k <= L; ++k) {
        double s = 0.0;
        for (int i = 0; i <= k; ++i) s += A[i] * A[k - i] + B[i] * B[k - i];
        g[k] = pi2 * s;
    }

    std::vector<double> c(count, 0.0);
    c[0] = x0;
    for (int order = 1; order < count; ++order) {
        std::vector<double> t(order, 0.0);  // coefficients of s^1..s^order of (x - x0)
        for (int i = 1; i < order; ++i) t[i - 1] = c[i];
        std::vector<double> comp(order, 0.0);
        std::vector<double> tp(order, 0.0);
        tp[0] = 1.0;
        for (int k = 0; k <= L; ++k) {
            if (k > 0) {
                std::vector<double> ntp(order, 0.0);
                bool any = false;
                for (int i = 0; i < order; ++i) {
                    if (tp[i] == 0.0) continue;
                    for (int jj = 1; jj <= order - i; ++jj) {
                        if (i + jj < order) {
                            ntp[i + jj] += tp[i] * t[jj - 1];
                            any = true;
                        }
                    }
                }
                tp = std::move(ntp);
                if (!any) break;
            }
            for (int i = 0; i < order; ++i) comp[i] += g[k] * tp[i];
        }
        c[order] = comp[order - 1] / order;
    }
    return c;
}

/// Integral of x(m) dm between two integer level indices, via the exact phase
/// measure dm = dx / (pi^2 M^2(x)). Raw zero-magnitude units.
inline double airy_level_integral(int m_lo, int m_hi) {
    if (m_lo < 1 || m_hi <= m_lo) throw argument_error("bad airy level integral range");
    const PrecisionConfig prec = PrecisionConfig::for_digits(24);
    const double x_lo = -static_cast<double>(airy_detail::refine_zero(m_lo, prec));
    const double x_hi = -static_cast<double>(airy_detail::refine_zero(m_hi, prec));
    const double pi2 = M_PI * M_PI;
    return integrate([&](double x) { return x / (pi2 * airy_modulus_sq(x)); }, x_lo,
                     x_hi, 1e-12);
}

} // namespace semisum
