#pragma once

/// Gauss and Kummer hypergeometric series with explicit truncation control.
/// Evaluation is by direct power series only; callers needing arguments near
/// the 2F1 convergence boundary transform first (see deform.hpp).

#include <cmath>
#include <cstdint>
#include <string>

#include "cldpt/errors.hpp"

namespace cldpt {

/// Result of a truncated series evaluation.
struct SeriesValue {
    double value = 0.0;
    int terms_used = 0;          ///< number of terms actually summed
    double trunc_estimate = 0.0; ///< magnitude of the first neglected term (0 if terminating)
};

struct SeriesOptions {
    double tol = 1e-15;       ///< relative term-size stopping threshold
    int max_terms = 1000000;  ///< hard cap before giving up
    double unit_margin = 1e-3; ///< 2F1 series requires |x| < 1 - unit_margin
};

/// True when x sits within `tol` of {0, -1, -2, ...}.
inline bool is_nonpositive_integer(double x, double tol = 1e-8) {
    if (x > tol) return false;
    const double r = std::round(x);
    return std::abs(x - r) <= tol;
}

/// Rising factorial (a)_k = a (a+1) ... (a+k-1); (a)_0 = 1.
inline double pochhammer(double a, int k) {
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= a + i;
    return p;
}

namespace detail {

// Lanczos approximation, shift parameter 7, 9 coefficients (relative error
// well below 1e-13 on the positive axis).  Regenerate with
// scripts/regen_lanczos.py, which reproduces this table from first
// principles at higher working precision.
inline constexpr double k_lanczos_shift = 7.0;
inline constexpr double k_lanczos_coeff[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224029,
    771.32342877765308,
    -176.6150291621406,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195709e-6,
    1.5056327351493116e-7,
};

inline double lanczos_log_gamma_pos(double x) {
    // valid for x >= 0.5
    double acc = k_lanczos_coeff[0];
    for (int k = 1; k < 9; ++k) acc += k_lanczos_coeff[k] / (x - 1.0 + k);
    const double t = x + k_lanczos_shift - 0.5;
    return 0.5 * std::log(2.0 * M_PI) + (x - 0.5) * std::log(t) - t + std::log(acc);
}

} // namespace detail

/// log|Gamma(x)| for non-pole x; reflection covers x < 0.5.
inline double log_gamma(double x) {
    if (is_nonpositive_integer(x))
        throw PoleError("log_gamma: x within 1e-8 of a non-positive integer");
    if (x >= 0.5) return detail::lanczos_log_gamma_pos(x);
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return std::log(M_PI / std::abs(std::sin(M_PI * x))) - detail::lanczos_log_gamma_pos(1.0 - x);
}

/// Sign of Gamma(x): positive for x > 0, alternating between negative
/// integers.
inline double gamma_sign(double x) {
    if (x > 0.0) return 1.0;
    if (is_nonpositive_integer(x))
        throw PoleError("gamma_sign: x within 1e-8 of a non-positive integer");
    const long long fl = static_cast<long long>(std::floor(x));
    return (fl % 2 == 0) ? 1.0 : -1.0;
}

namespace detail {

// Shared power-series engine for 2F1 (two numerator parameters) and 1F1
// (one numerator parameter, pass b_num = nan).  Terms are accumulated with
// compensated summation so million-term tails stay at working precision.
struct SeriesTermIter {
    double a, b, c;
    bool has_b;
    double x;
    double term = 1.0;
    int k = 0;
    void advance() {
        const double num = has_b ? (a + k) * (b + k) : (a + k);
        term *= num / ((c + k) * (k + 1)) * x;
        ++k;
    }
};

inline SeriesValue sum_hypergeometric(double a, double b, bool has_b, double c, double x,
                                      const SeriesOptions& opt, const char* name) {
    // Termination: smallest non-positive-integer numerator parameter wins.
    const bool term_a = is_nonpositive_integer(a);
    const bool term_b = has_b && is_nonpositive_integer(b);
    int m_term = -1;
    if (term_a) m_term = static_cast<int>(-std::round(a));
    if (term_b) {
        const int mb = static_cast<int>(-std::round(b));
        if (m_term < 0 || mb < m_term) m_term = mb;
    }
    if (is_nonpositive_integer(c)) {
        const int m_pole = static_cast<int>(-std::round(c));
        if (m_term < 0 || m_pole < m_term)
            throw PoleError(std::string(name) + ": lower parameter within 1e-8 of a non-positive integer");
    }
    if (m_term < 0 && has_b && !(std::abs(x) < 1.0 - opt.unit_margin))
        throw DomainError(std::string(name) + ": |x| too close to 1 for series evaluation");

    SeriesTermIter it{a, b, c, has_b, x};
    double sum = 0.0, comp = 0.0; // Kahan accumulator
    int small_run = 0;
    for (;;) {
        const double y = it.term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (m_term >= 0 && it.k == m_term) {
            return {sum, it.k + 1, 0.0};
        }
        if (!std::isfinite(sum))
            throw ConvergenceError(std::string(name) + ": series overflowed");
        if (std::abs(it.term) < opt.tol * std::abs(sum))
            ++small_run;
        else
            small_run = 0;
        it.advance();
        if (small_run >= 3) return {sum, it.k, std::abs(it.term)};
        if (it.k >= opt.max_terms)
            throw ConvergenceError(std::string(name) + ": no convergence within max_terms");
    }
}

} // namespace detail

/// Gauss series 2F1(a, b; c | x).  Requires |x| < 1 - unit_margin unless a
/// or b is a non-positive integer (terminating case, summed exactly with at
/// most m+1 terms).
inline SeriesValue gauss_2f1(double a, double b, double c, double x,
                             const SeriesOptions& opt = {}) {
    return detail::sum_hypergeometric(a, b, true, c, x, opt, "gauss_2f1");
}

/// Kummer series 1F1(a; b | x); entire in x.
inline SeriesValue kummer_1f1(double a, double b, double x, const SeriesOptions& opt = {}) {
    return detail::sum_hypergeometric(a, 0.0, false, b, x, opt, "kummer_1f1");
}

/// d/dx 2F1(a, b; c | x) = (a b / c) 2F1(a+1, b+1; c+1 | x).
inline double gauss_2f1_dx(double a, double b, double c, double x, const SeriesOptions& opt = {}) {
    return a * b / c * gauss_2f1(a + 1.0, b + 1.0, c + 1.0, x, opt).value;
}

/// d/dx 1F1(a; b | x) = (a / b) 1F1(a+1; b+1 | x).
inline double kummer_1f1_dx(double a, double b, double x, const SeriesOptions& opt = {}) {
    return a / b * kummer_1f1(a + 1.0, b + 1.0, x, opt).value;
}

/// Order-n derivative of 2F1 in x via n-fold parameter shift.
inline double gauss_2f1_dxn(double a, double b, double c, double x, int order,
                            const SeriesOptions& opt = {}) {
    double coef = 1.0;
    for (int j = 0; j < order; ++j) coef *= (a + j) * (b + j) / (c + j);
    return coef * gauss_2f1(a + order, b + order, c + order, x, opt).value;
}

/// Order-n derivative of 1F1 in x via n-fold parameter shift.
inline double kummer_1f1_dxn(double a, double b, double x, int order,
                             const SeriesOptions& opt = {}) {
    double coef = 1.0;
    for (int j = 0; j < order; ++j) coef *= (a + j) / (b + j);
    return coef * kummer_1f1(a + order, b + order, x, opt).value;
}

} // namespace cldpt
