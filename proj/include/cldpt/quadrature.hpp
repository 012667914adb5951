#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "cldpt/errors.hpp"
#include "cldpt/series.hpp"

namespace cldpt {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

// Eigenvalues of a symmetric tridiagonal matrix together with the first
// component of each normalized eigenvector, by QL with implicit shifts.
// d: diagonal (size n). e: off-diagonals in e[0..n-2]. On return d holds the
// eigenvalues and z the first components; both reordered ascending in d.
inline void tridiag_eigen_first(std::vector<double>& d, std::vector<double>& e,
                                std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    z.assign(static_cast<std::size_t>(n), 0.0);
    if (n == 0) return;
    z[0] = 1.0;
    if (n == 1) return;
    e.resize(static_cast<std::size_t>(n), 0.0);
    e[static_cast<std::size_t>(n) - 1] = 0.0;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        for (;;) {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m == l) break;
            if (iter++ == 60) throw QuadratureError("tridiagonal QL iteration failed to converge");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    // insertion sort ascending, carrying the first components along
    for (int i = 1; i < n; ++i) {
        const double dv = d[i];
        const double zv = z[i];
        int j = i - 1;
        while (j >= 0 && d[j] > dv) {
            d[j + 1] = d[j];
            z[j + 1] = z[j];
            --j;
        }
        d[j + 1] = dv;
        z[j + 1] = zv;
    }
}

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix built from the
// monic three-term recurrence, weights are mu0 times squared first components.
inline QuadratureRule rule_from_recurrence(std::vector<double> diag,
                                           const std::vector<double>& offsq, double mu0) {
    const std::size_t n = diag.size();
    std::vector<double> e(n, 0.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (offsq[k] <= 0.0) throw QuadratureError("non-positive squared recurrence coefficient");
        e[k] = std::sqrt(offsq[k]);
    }
    std::vector<double> z;
    tridiag_eigen_first(diag, e, z);
    QuadratureRule rule;
    rule.nodes = std::move(diag);
    rule.weights.resize(n);
    for (std::size_t k = 0; k < n; ++k) rule.weights[k] = mu0 * z[k] * z[k];
    return rule;
}

} // namespace detail

// weight (1-x)^alpha (1+x)^beta on (-1, 1)
inline QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) throw ParameterError("quadrature order must be positive");
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw ParameterError("Jacobi weight exponents must exceed -1");
    std::vector<double> a(static_cast<std::size_t>(n));
    std::vector<double> b2(static_cast<std::size_t>(n) - 1);
    a[0] = (beta - alpha) / (alpha + beta + 2.0);
    for (int k = 1; k < n; ++k) {
        const double q = 2.0 * k + alpha + beta;
        a[static_cast<std::size_t>(k)] = (beta * beta - alpha * alpha) / (q * (q + 2.0));
    }
    if (n > 1) {
        const double q = alpha + beta + 2.0;
        b2[0] = 4.0 * (alpha + 1.0) * (beta + 1.0) / (q * q * (q + 1.0));
    }
    for (int k = 2; k < n; ++k) {
        const double q = 2.0 * k + alpha + beta;
        b2[static_cast<std::size_t>(k) - 1] = 4.0 * k * (k + alpha) * (k + beta) * (k + alpha + beta) /
                                              (q * q * (q + 1.0) * (q - 1.0));
    }
    const double mu0 = std::pow(2.0, alpha + beta + 1.0) *
                       std::exp(log_gamma(alpha + 1.0) + log_gamma(beta + 1.0) -
                                log_gamma(alpha + beta + 2.0));
    return detail::rule_from_recurrence(std::move(a), b2, mu0);
}

// weight x^alpha e^{-x} on (0, inf)
inline QuadratureRule gauss_laguerre(int n, double alpha) {
    if (n < 1) throw ParameterError("quadrature order must be positive");
    if (!(alpha > -1.0)) throw ParameterError("Laguerre weight exponent must exceed -1");
    std::vector<double> a(static_cast<std::size_t>(n));
    std::vector<double> b2(static_cast<std::size_t>(n) - 1);
    for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(k)] = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < n; ++k) b2[static_cast<std::size_t>(k) - 1] = k * (k + alpha);
    const double mu0 = std::exp(log_gamma(alpha + 1.0));
    return detail::rule_from_recurrence(std::move(a), b2, mu0);
}

inline QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

// sum w_i f(x_i) with compensated accumulation
template <class F>
double integrate(F&& f, const QuadratureRule& rule) {
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double y = rule.weights[i] * f(rule.nodes[i]) - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

} // namespace cldpt
