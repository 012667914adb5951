#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "cldpt/errors.hpp"
#include "cldpt/quadrature.hpp"

namespace cldpt {

struct FdResult {
    double value;
    double error; // estimated, from the extrapolation table
};

// Central-difference derivative of order 1 or 2 with Richardson extrapolation
// over a shrinking step ladder; returns the table entry of least estimated
// error (Ridders' scheme). h0 must keep x +- h0 inside f's domain.
template <class F>
FdResult fd_derivative(F&& f, double x, int order = 1, double h0 = 1e-2) {
    if (order != 1 && order != 2) throw ParameterError("fd_derivative supports orders 1 and 2");
    if (!(h0 > 0.0)) throw ParameterError("fd_derivative step must be positive");
    constexpr int ntab = 9;
    const double shrink = 1.6;
    double tab[ntab][ntab];
    const double fx = (order == 2) ? f(x) : 0.0;
    const auto probe = [&](double h) {
        return order == 1 ? (f(x + h) - f(x - h)) / (2.0 * h)
                          : (f(x + h) - 2.0 * fx + f(x - h)) / (h * h);
    };
    double hh = h0;
    tab[0][0] = probe(hh);
    double ans = tab[0][0];
    double err = std::numeric_limits<double>::max();
    for (int i = 1; i < ntab; ++i) {
        hh /= shrink;
        tab[0][i] = probe(hh);
        double fac = shrink * shrink;
        for (int j = 1; j <= i; ++j) {
            tab[j][i] = (tab[j - 1][i] * fac - tab[j - 1][i - 1]) / (fac - 1.0);
            fac *= shrink * shrink;
            const double errt = std::max(std::fabs(tab[j][i] - tab[j - 1][i]),
                                         std::fabs(tab[j][i] - tab[j - 1][i - 1]));
            if (errt <= err) {
                err = errt;
                ans = tab[j][i];
            }
        }
        if (std::fabs(tab[i][i] - tab[i - 1][i - 1]) >= 2.0 * err) break;
    }
    return {ans, err};
}

// strict sign alternations, treating |v| <= atol as no information
inline int count_sign_changes(const std::vector<double>& values, double atol) {
    int changes = 0;
    int prev = 0;
    for (const double v : values) {
        if (std::fabs(v) <= atol) continue;
        const int s = v > 0.0 ? 1 : -1;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

// n points on (a, b), clustered toward both ends, ascending
inline std::vector<double> chebyshev_grid(int n, double a, double b) {
    if (n < 1) throw ParameterError("grid size must be positive");
    std::vector<double> x(static_cast<std::size_t>(n));
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int j = 0; j < n; ++j)
        x[static_cast<std::size_t>(n - 1 - j)] =
            mid + half * std::cos(M_PI * (2.0 * j + 1.0) / (2.0 * n));
    return x;
}

// n equispaced points on [a + inset, b - inset] with inset = frac * (b - a)
inline std::vector<double> uniform_interior_grid(int n, double a, double b, double frac = 0.02) {
    if (n < 2) throw ParameterError("grid size must be at least 2");
    const double inset = frac * (b - a);
    const double lo = a + inset;
    const double hi = b - inset;
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        x[static_cast<std::size_t>(j)] = lo + (hi - lo) * j / (n - 1.0);
    return x;
}

// least-squares slope of log|y| against log x
inline double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ParameterError("fit_log_slope needs matched samples");
    double su = 0.0, sv = 0.0, suu = 0.0, suv = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = std::log(x[i]);
        const double v = std::log(std::fabs(y[i]));
        su += u;
        sv += v;
        suu += u * u;
        suv += u * v;
    }
    return (n * suv - su * sv) / (n * suu - su * su);
}

// breakpoints a, ..., b spaced evenly in log scale, per_decade panels per decade
inline std::vector<double> geometric_breaks(double a, double b, int per_decade = 4) {
    if (!(a > 0.0) || !(b > a)) throw ParameterError("geometric_breaks needs 0 < a < b");
    const double decades = std::log10(b / a);
    const int panels = std::max(1, static_cast<int>(std::ceil(decades * per_decade)));
    std::vector<double> breaks(static_cast<std::size_t>(panels) + 1);
    for (int k = 0; k <= panels; ++k)
        breaks[static_cast<std::size_t>(k)] = a * std::pow(b / a, static_cast<double>(k) / panels);
    breaks.front() = a;
    breaks.back() = b;
    return breaks;
}

// log of integral of e^{logf(x)} over the panels, composite Gauss-Legendre,
// accumulated in log scale so enormous integrands stay representable
template <class F>
double log_integrate_exp(F&& logf, const std::vector<double>& breaks, int order = 16) {
    if (breaks.size() < 2) throw ParameterError("log_integrate_exp needs at least one panel");
    const QuadratureRule gl = gauss_legendre(order);
    double lead = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double mid = 0.5 * (breaks[p] + breaks[p + 1]);
        const double half = 0.5 * (breaks[p + 1] - breaks[p]);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double lt = logf(mid + half * gl.nodes[i]) + std::log(half * gl.weights[i]);
            if (lt > lead) {
                sum = sum * std::exp(lead - lt) + 1.0;
                lead = lt;
            } else {
                sum += std::exp(lt - lead);
            }
        }
    }
    return lead + std::log(sum);
}

} // namespace cldpt
