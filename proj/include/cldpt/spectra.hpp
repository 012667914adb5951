#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "cldpt/classical.hpp"
#include "cldpt/deform.hpp"
#include "cldpt/errors.hpp"
#include "cldpt/model.hpp"

namespace cldpt {

// ---------------------------------------------------------------------------
// Deformed system: prepotential w_l = w0(lambda + l delta)
//                              + log xi(lambda + delta) - log xi(lambda),
// iso-spectral polynomial tower P_{l,n}, and the eta-space operator algebra.
// All functions reduce to their undeformed counterparts at l = 0.
// ---------------------------------------------------------------------------

inline double def_prepotential(ModelKind m, const Params& p, double x) {
    const double eta = eta_of_x(m, x);
    const double base = w0(m, ell_shifted(p), x);
    if (p.ell == 0.0) return base;
    return base + std::log(xi(m, shifted(p, 1.0), eta)) - std::log(xi(m, p, eta));
}

inline double def_prepotential_dx(ModelKind m, const Params& p, double x) {
    const double base = w0_dx(m, ell_shifted(p), x);
    if (p.ell == 0.0) return base;
    const double eta = eta_of_x(m, x);
    const auto xs = xi_derivs(m, p, eta, 1);
    const auto xd = xi_derivs(m, shifted(p, 1.0), eta, 1);
    return base + (xd[1] / xd[0] - xs[1] / xs[0]) * eta_dx(m, x);
}

inline double def_prepotential_dx2(ModelKind m, const Params& p, double x) {
    const double base = w0_dx2(m, ell_shifted(p), x);
    if (p.ell == 0.0) return base;
    const double eta = eta_of_x(m, x);
    const auto xs = xi_derivs(m, p, eta, 2);
    const auto xd = xi_derivs(m, shifted(p, 1.0), eta, 2);
    const double dlog = xd[1] / xd[0] - xs[1] / xs[0];
    const double dlog2 = (xd[2] * xd[0] - xd[1] * xd[1]) / (xd[0] * xd[0]) -
                         (xs[2] * xs[0] - xs[1] * xs[1]) / (xs[0] * xs[0]);
    const double ed = eta_dx(m, x);
    return base + dlog2 * ed * ed + dlog * eta_dx2(m, x);
}

inline double def_potential(ModelKind m, const Params& p, double x) {
    const double d1 = def_prepotential_dx(m, p, x);
    return d1 * d1 + def_prepotential_dx2(m, p, x);
}

inline double def_energy(ModelKind m, const Params& p, int n) {
    if (m == ModelKind::J1) return 4.0 * n * (n + p.g + *p.h + 2.0 * p.ell);
    return 4.0 * n;
}

// symmetry factor carrying the whole x-dependence that is not polynomial
inline double def_psi(ModelKind m, const Params& p, double x) {
    const double base = ground_state(m, ell_shifted(p), x);
    if (p.ell == 0.0) return base;
    return base / xi(m, p, eta_of_x(m, x));
}

// ladder factor pair of the deformed tower; their product minus its n = 0
// value reproduces the deformed excitation energies
inline double fhat_factor(ModelKind m, const Params& p, int n) {
    if (m == ModelKind::J1) return -2.0 * (n + *p.h + 0.5);
    return -2.0;
}

inline double bhat_factor(ModelKind /*m*/, const Params& p, int n) {
    return -2.0 * (n + p.g + 2.0 * p.ell - 0.5);
}

// derivatives d^r/deta^r P_{l,n}(eta) for r = 0..kmax; the n = 0 member is
// the shifted deforming factor itself, returned without the bilinear detour
inline std::vector<double> def_poly_derivs(ModelKind m, const Params& p, int n, double eta,
                                           int kmax) {
    if (kmax < 0) throw ParameterError("derivative order must be non-negative");
    if (n < 0) return std::vector<double>(static_cast<std::size_t>(kmax) + 1, 0.0);
    if (n == 0) return xi_derivs(m, shifted(p, 1.0), eta, kmax);
    const auto xs = xi_derivs(m, p, eta, kmax);
    const auto xd = xi_derivs(m, shifted(p, 1.0), eta, kmax);
    const Params tw = twist_shifted(m, ell_shifted(p));
    std::vector<double> dp(static_cast<std::size_t>(kmax) + 2);
    for (int k = 0; k <= kmax + 1; ++k)
        dp[static_cast<std::size_t>(k)] = classical_poly_deta(m, tw, n, eta, k);

    const double d1 = d1_coef(m, p);
    const double d2v = d2_coef(m, eta);
    const double d2p = m == ModelKind::J1 ? -1.0 : 0.0; // d2 is affine in eta
    const double lead = 2.0 / fhat_factor(m, p, n);

    auto binom = [](int r, int i) {
        double b = 1.0;
        for (int j = 0; j < i; ++j) b = b * (r - j) / (j + 1.0);
        return b;
    };

    std::vector<double> out(static_cast<std::size_t>(kmax) + 1);
    // u_r = (xi * P')^(r), t2_r = (xi_shift * P)^(r) by Leibniz
    std::vector<double> u(static_cast<std::size_t>(kmax) + 1, 0.0);
    for (int r = 0; r <= kmax; ++r) {
        double s = 0.0;
        for (int i = 0; i <= r; ++i)
            s += binom(r, i) * xs[static_cast<std::size_t>(i)] * dp[static_cast<std::size_t>(r - i + 1)];
        u[static_cast<std::size_t>(r)] = s;
    }
    for (int r = 0; r <= kmax; ++r) {
        double t1 = d2v * u[static_cast<std::size_t>(r)];
        if (r >= 1) t1 += r * d2p * u[static_cast<std::size_t>(r) - 1];
        double t2 = 0.0;
        for (int i = 0; i <= r; ++i)
            t2 += binom(r, i) * xd[static_cast<std::size_t>(i)] * dp[static_cast<std::size_t>(r - i)];
        out[static_cast<std::size_t>(r)] = lead * (t1 - d1 * t2);
    }
    return out;
}

inline double def_poly(ModelKind m, const Params& p, int n, double eta) {
    return def_poly_derivs(m, p, n, eta, 0)[0];
}

inline double def_phi(ModelKind m, const Params& p, int n, double x) {
    return def_psi(m, p, x) * def_poly(m, p, n, eta_of_x(m, x));
}

inline double def_phi_dx(ModelKind m, const Params& p, int n, double x) {
    const double eta = eta_of_x(m, x);
    const auto pd = def_poly_derivs(m, p, n, eta, 1);
    const auto xs = xi_derivs(m, p, eta, 1);
    const double ed = eta_dx(m, x);
    const double wfac = w0_dx(m, ell_shifted(p), x) - xs[1] / xs[0] * ed;
    return def_psi(m, p, x) * (wfac * pd[0] + pd[1] * ed);
}

// squared norm of phi_{l,n}; the twisted-parameter classical norm times the
// ladder factor ratio
inline double def_norm(ModelKind m, const Params& p, int n) {
    const Params tw = twist_shifted(m, ell_shifted(p));
    return bhat_factor(m, p, n) / fhat_factor(m, p, n) * norm_hn(m, tw, n);
}

// ---------------------------------------------------------------------------
// eta-space operators. Functions are passed as f(eta, order) jets.
// ---------------------------------------------------------------------------

using EtaFn = std::function<double(double, int)>;

inline EtaFn classical_poly_fn(ModelKind m, const Params& p, int n) {
    return [m, p, n](double eta, int order) { return classical_poly_deta(m, p, n, eta, order); };
}

inline EtaFn def_poly_fn(ModelKind m, const Params& p, int n) {
    return [m, p, n](double eta, int order) {
        return def_poly_derivs(m, p, n, eta, order)[static_cast<std::size_t>(order)];
    };
}

// forward map: multiplies decay by one step up the parameter ladder
inline EtaFn def_forward_op(ModelKind m, const Params& p, EtaFn f) {
    return [m, p, f](double eta, int order) -> double {
        const double cf = cF(m);
        const auto xs = xi_derivs(m, p, eta, order + 1);
        const auto xd = xi_derivs(m, shifted(p, 1.0), eta, order + 1);
        const double num = xd[0] * f(eta, 1) - xd[1] * f(eta, 0);
        if (order == 0) return cf * num / xs[0];
        if (order == 1) {
            const double nump = xd[0] * f(eta, 2) - xd[2] * f(eta, 0);
            return cf * (nump * xs[0] - num * xs[1]) / (xs[0] * xs[0]);
        }
        throw ParameterError("forward operator jet supports orders 0 and 1");
    };
}

inline EtaFn def_backward_op(ModelKind m, const Params& p, EtaFn f) {
    return [m, p, f](double eta, int order) -> double {
        const Params ps = ell_shifted(p);
        const auto xs = xi_derivs(m, p, eta, order + 1);
        const auto xd = xi_derivs(m, shifted(p, 1.0), eta, order + 1);
        const double c2 = c2_coef(m, eta);
        const double c1s = c1_coef(m, ps, eta);
        const double k = -4.0 / cF(m);
        const double num = c2 * (xs[0] * f(eta, 1) - xs[1] * f(eta, 0)) + c1s * xs[0] * f(eta, 0);
        if (order == 0) return k * num / xd[0];
        if (order == 1) {
            const double c2p = m == ModelKind::J1 ? -2.0 * eta : 1.0;
            const double c1sp = m == ModelKind::J1 ? -(ps.g + *ps.h + 1.0) : -1.0;
            const double nump = c2p * (xs[0] * f(eta, 1) - xs[1] * f(eta, 0)) +
                                c2 * (xs[0] * f(eta, 2) - xs[2] * f(eta, 0)) +
                                c1sp * xs[0] * f(eta, 0) +
                                c1s * (xs[1] * f(eta, 0) + xs[0] * f(eta, 1));
            return k * (nump * xd[0] - num * xd[1]) / (xd[0] * xd[0]);
        }
        throw ParameterError("backward operator jet supports orders 0 and 1");
    };
}

// closed second-order form of the backward-forward composition
inline double def_hamiltonian_apply(ModelKind m, const Params& p, const EtaFn& f, double eta) {
    const Params ps = ell_shifted(p);
    const auto xs = xi_derivs(m, p, eta, 1);
    const double lx = xs[1] / xs[0];
    const double c2 = c2_coef(m, eta);
    return -4.0 * (c2 * f(eta, 2) + (c1_coef(m, ps, eta) - 2.0 * c2 * lx) * f(eta, 1) -
                   2.0 * d2_coef(m, eta) * d3_coef(m, p) * lx * f(eta, 0) -
                   0.25 * e_tilde(m, p) * f(eta, 0));
}

} // namespace cldpt
