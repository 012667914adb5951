#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "cldpt/classical.hpp"
#include "cldpt/deform.hpp"
#include "cldpt/errors.hpp"
#include "cldpt/model.hpp"
#include "cldpt/numerics.hpp"
#include "cldpt/spectra.hpp"

namespace cldpt {

// ---------------------------------------------------------------------------
// Connector between the twisted classical system and the deformed one.
// Its prepotential uses the sign-twisted base weight and the undeformed
// deforming factor; neither of e^{+w} or e^{-w} is normalizable, so the
// two partner Hamiltonians it factorizes share the complete spectrum.
// ---------------------------------------------------------------------------

// base prepotential of the twisted weight; callers pass the already shifted
// parameter point
inline double twist_prepotential(ModelKind m, const Params& p, double x) {
    require_interior(m, x, "twist_prepotential");
    if (m == ModelKind::J1)
        return (p.g - 1.0) * std::log(std::sin(x)) - *p.h * std::log(std::cos(x));
    return 0.5 * x * x + (p.g - 1.0) * std::log(x);
}

inline double twist_prepotential_dx(ModelKind m, const Params& p, double x) {
    require_interior(m, x, "twist_prepotential_dx");
    if (m == ModelKind::J1)
        return (p.g - 1.0) / std::tan(x) + *p.h * std::tan(x);
    return x + (p.g - 1.0) / x;
}

inline double twist_prepotential_dx2(ModelKind m, const Params& p, double x) {
    require_interior(m, x, "twist_prepotential_dx2");
    if (m == ModelKind::J1) {
        const double s = std::sin(x), c = std::cos(x);
        return -(p.g - 1.0) / (s * s) + *p.h / (c * c);
    }
    return 1.0 - (p.g - 1.0) / (x * x);
}

inline double hat_prepotential(ModelKind m, const Params& p, double x) {
    const double base = twist_prepotential(m, ell_shifted(p), x);
    if (p.ell == 0.0) return base;
    return base + std::log(xi(m, p, eta_of_x(m, x)));
}

inline double hat_prepotential_dx(ModelKind m, const Params& p, double x) {
    const double base = twist_prepotential_dx(m, ell_shifted(p), x);
    if (p.ell == 0.0) return base;
    const auto xs = xi_derivs(m, p, eta_of_x(m, x), 1);
    return base + xs[1] / xs[0] * eta_dx(m, x);
}

inline double hat_prepotential_dx2(ModelKind m, const Params& p, double x) {
    const double base = twist_prepotential_dx2(m, ell_shifted(p), x);
    if (p.ell == 0.0) return base;
    const auto xs = xi_derivs(m, p, eta_of_x(m, x), 2);
    const double lx = xs[1] / xs[0];
    const double lx2 = (xs[2] * xs[0] - xs[1] * xs[1]) / (xs[0] * xs[0]);
    const double ed = eta_dx(m, x);
    return base + lx2 * ed * ed + lx * eta_dx2(m, x);
}

// common energy shift of the factorized pair
inline double hat_gap(ModelKind m, const Params& p) {
    return fhat_factor(m, p, 0) * bhat_factor(m, p, 0);
}

// eigenvalues shared by the pair, measured from the factorization zero
inline double hat_energy(ModelKind m, const Params& p, int n) {
    return fhat_factor(m, p, n) * bhat_factor(m, p, n);
}

// ---------------------------------------------------------------------------
// x-space first-order operators on jets f(x, order).
// ---------------------------------------------------------------------------

using XFn = std::function<double(double, int)>;

struct PrepotentialJet {
    std::function<double(double)> dx;
    std::function<double(double)> dx2;
};

inline PrepotentialJet classical_prepotential_jet(ModelKind m, const Params& p) {
    return {[m, p](double x) { return w0_dx(m, p, x); },
            [m, p](double x) { return w0_dx2(m, p, x); }};
}

inline PrepotentialJet def_prepotential_jet(ModelKind m, const Params& p) {
    return {[m, p](double x) { return def_prepotential_dx(m, p, x); },
            [m, p](double x) { return def_prepotential_dx2(m, p, x); }};
}

inline PrepotentialJet hat_prepotential_jet(ModelKind m, const Params& p) {
    return {[m, p](double x) { return hat_prepotential_dx(m, p, x); },
            [m, p](double x) { return hat_prepotential_dx2(m, p, x); }};
}

inline XFn annihilate(PrepotentialJet w, XFn f) {
    return [w, f](double x, int order) -> double {
        if (order == 0) return f(x, 1) - w.dx(x) * f(x, 0);
        if (order == 1) return f(x, 2) - w.dx2(x) * f(x, 0) - w.dx(x) * f(x, 1);
        throw ParameterError("annihilate jet supports orders 0 and 1");
    };
}

inline XFn create(PrepotentialJet w, XFn f) {
    return [w, f](double x, int order) -> double {
        if (order == 0) return -f(x, 1) - w.dx(x) * f(x, 0);
        if (order == 1) return -f(x, 2) - w.dx2(x) * f(x, 0) - w.dx(x) * f(x, 1);
        throw ParameterError("create jet supports orders 0 and 1");
    };
}

// classical eigenfunction jet; the second derivative comes from the eigen
// equation, keeping the jet fully analytic
inline XFn classical_phi_jet(ModelKind m, const Params& p, int n) {
    return [m, p, n](double x, int order) -> double {
        if (order == 0) return eigenfunction(m, p, n, x);
        if (order == 1) return eigenfunction_dx(m, p, n, x);
        if (order == 2)
            return (potential0(m, p, x) - energy0(m, p, n)) * eigenfunction(m, p, n, x);
        throw ParameterError("classical_phi_jet supports orders 0 to 2");
    };
}

inline XFn def_phi_jet(ModelKind m, const Params& p, int n) {
    return [m, p, n](double x, int order) -> double {
        if (order == 0) return def_phi(m, p, n, x);
        if (order == 1) return def_phi_dx(m, p, n, x);
        if (order == 2) return (def_potential(m, p, x) - def_energy(m, p, n)) * def_phi(m, p, n, x);
        throw ParameterError("def_phi_jet supports orders 0 to 2");
    };
}

// ---------------------------------------------------------------------------
// eta-space connector maps.
// ---------------------------------------------------------------------------

inline EtaFn hat_forward_op(ModelKind m, const Params& p, EtaFn f) {
    return [m, p, f](double eta, int order) -> double {
        const auto xs = xi_derivs(m, p, eta, order);
        const auto xd = xi_derivs(m, shifted(p, 1.0), eta, order);
        const double d1 = d1_coef(m, p);
        const double d2v = d2_coef(m, eta);
        if (order == 0) return 2.0 * (d2v * xs[0] * f(eta, 1) - d1 * xd[0] * f(eta, 0));
        if (order == 1) {
            const double d2p = m == ModelKind::J1 ? -1.0 : 0.0;
            return 2.0 * ((d2p * xs[0] + d2v * xs[1]) * f(eta, 1) + d2v * xs[0] * f(eta, 2) -
                          d1 * (xd[1] * f(eta, 0) + xd[0] * f(eta, 1)));
        }
        throw ParameterError("hat forward jet supports orders 0 and 1");
    };
}

inline EtaFn hat_backward_op(ModelKind m, const Params& p, EtaFn f) {
    return [m, p, f](double eta, int order) -> double {
        const auto xs = xi_derivs(m, p, eta, order);
        const double r = c2_over_d2(m, eta);
        const double d3 = d3_coef(m, p);
        const double num = r * f(eta, 1) + d3 * f(eta, 0);
        if (order == 0) return -2.0 * num / xs[0];
        if (order == 1) {
            // (c2 / d2)' = 1 for both models
            const double nump = f(eta, 1) + r * f(eta, 2) + d3 * f(eta, 1);
            return -2.0 * (nump * xs[0] - num * xs[1]) / (xs[0] * xs[0]);
        }
        throw ParameterError("hat backward jet supports orders 0 and 1");
    };
}

// ---------------------------------------------------------------------------
// Zero-mode mass probes. Both candidate ground states of the connector pair
// carry divergent mass; the probes measure the divergence rate from shell
// integrals so the test side can assert brokenness without symbolic input.
// ---------------------------------------------------------------------------

enum class ZeroMode { Chi, Rho }; // e^{+w_hat} and e^{-w_hat}

// log of the squared-mode mass over [a, b], robust to huge integrands
inline double zero_mode_log_mass(ModelKind m, const Params& p, ZeroMode z, double a, double b) {
    const double s = z == ZeroMode::Chi ? 2.0 : -2.0;
    auto logf = [&](double x) { return s * hat_prepotential(m, p, x); };
    return log_integrate_exp(logf, geometric_breaks(a, b, 8), 24);
}

// divergence exponent kappa of the mass integral at the named endpoint:
// mass(eps .. fixed) ~ eps^{-kappa}. Estimated from geometric shell masses,
// which are insensitive to the finite part of the integral.
inline double zero_mode_divergence_exponent(ModelKind m, const Params& p, ZeroMode z,
                                            bool upper_endpoint) {
    const double s = z == ZeroMode::Chi ? 2.0 : -2.0;
    const Domain dom = domain_of(m);
    auto logf = [&](double t) {
        const double x = upper_endpoint ? dom.x2 - t : dom.x1 + t;
        return s * hat_prepotential(m, p, x);
    };
    // least squares on (log shell mass) vs (log shell midpoint); the log-scale
    // masses keep steep divergences representable
    const std::vector<double> eps = {1e-3, 1e-4, 1e-5, 1e-6};
    double su = 0.0, sv = 0.0, suu = 0.0, suv = 0.0;
    const double n = static_cast<double>(eps.size() - 1);
    for (std::size_t k = 0; k + 1 < eps.size(); ++k) {
        const double lo = eps[k + 1], hi = eps[k];
        const double u = 0.5 * (std::log(lo) + std::log(hi));
        const double v = log_integrate_exp(logf, geometric_breaks(lo, hi, 8), 24);
        su += u;
        sv += v;
        suu += u * u;
        suv += u * v;
    }
    return -(n * suv - su * sv) / (n * suu - su * su);
}

// growth rate of the radial chi mode, which outruns every power: the mass on
// [1, X] grows like exp(X^2), so the normalized log-mass increment tends to 1
inline double zero_mode_growth_rate(ModelKind m, const Params& p) {
    const double l1 = zero_mode_log_mass(m, p, ZeroMode::Chi, 1.0, 5.0);
    const double l2 = zero_mode_log_mass(m, p, ZeroMode::Chi, 1.0, 7.0);
    return (l2 - l1) / (7.0 * 7.0 - 5.0 * 5.0);
}

} // namespace cldpt
