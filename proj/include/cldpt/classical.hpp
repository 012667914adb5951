#pragma once

#include <cmath>

#include "cldpt/errors.hpp"
#include "cldpt/model.hpp"
#include "cldpt/series.hpp"

namespace cldpt {

// ---------------------------------------------------------------------------
// Undeformed systems: prepotential, energies, polynomial eigenparts, and the
// coefficient functions of the eta-space differential operators.
// ---------------------------------------------------------------------------

inline double w0(ModelKind m, const Params& p, double x) {
    require_interior(m, x, "w0");
    if (m == ModelKind::J1) return p.g * std::log(std::sin(x)) + *p.h * std::log(std::cos(x));
    return -0.5 * x * x + p.g * std::log(x);
}

inline double w0_dx(ModelKind m, const Params& p, double x) {
    require_interior(m, x, "w0_dx");
    if (m == ModelKind::J1) return p.g / std::tan(x) - *p.h * std::tan(x);
    return -x + p.g / x;
}

inline double w0_dx2(ModelKind m, const Params& p, double x) {
    require_interior(m, x, "w0_dx2");
    if (m == ModelKind::J1) {
        const double s = std::sin(x), c = std::cos(x);
        return -p.g / (s * s) - *p.h / (c * c);
    }
    return -1.0 - p.g / (x * x);
}

// potential of the factorized Hamiltonian, V = (w0')^2 + w0''
inline double potential0(ModelKind m, const Params& p, double x) {
    const double d1 = w0_dx(m, p, x);
    return d1 * d1 + w0_dx2(m, p, x);
}

inline double energy0(ModelKind m, const Params& p, int n) {
    if (m == ModelKind::J1) return 4.0 * n * (n + p.g + *p.h);
    return 4.0 * n;
}

// polynomial part of the n-th eigenfunction, as a function of eta
inline double classical_poly(ModelKind m, const Params& p, int n, double eta) {
    if (n < 0) return 0.0;
    const double alpha = p.g - 0.5;
    const double lead = pochhammer(alpha + 1.0, n) / std::exp(log_gamma(n + 1.0));
    if (m == ModelKind::J1) {
        const double beta = *p.h - 0.5;
        return lead * gauss_2f1(-n, n + alpha + beta + 1.0, alpha + 1.0, 0.5 * (1.0 - eta)).value;
    }
    return lead * kummer_1f1(-n, alpha + 1.0, eta).value;
}

inline double classical_poly_deta(ModelKind m, const Params& p, int n, double eta, int order = 1) {
    if (order < 0) throw ParameterError("derivative order must be non-negative");
    if (order == 0) return classical_poly(m, p, n, eta);
    if (n < order) return 0.0;
    if (m == ModelKind::J1) {
        const double abn = (p.g - 0.5) + (*p.h - 0.5) + n + 1.0;
        return 0.5 * abn * classical_poly_deta(m, shifted(p, 1.0), n - 1, eta, order - 1);
    }
    return -classical_poly_deta(m, shifted(p, 1.0), n - 1, eta, order - 1);
}

// factor pair of the eta-space ladder: forward lowers degree, backward raises
// it, and their product is the excitation energy
inline double forward_factor(ModelKind m, const Params& p, int n) {
    if (m == ModelKind::J1) return -2.0 * (n + p.g + *p.h);
    return -2.0;
}

inline double backward_factor(ModelKind /*m*/, const Params& /*p*/, int n) { return -2.0 * n; }

inline double cF(ModelKind m) { return m == ModelKind::J1 ? -4.0 : 2.0; }

inline double c1_coef(ModelKind m, const Params& p, double eta) {
    if (m == ModelKind::J1) return *p.h - p.g - (p.g + *p.h + 1.0) * eta;
    return p.g + 0.5 - eta;
}

inline double c2_coef(ModelKind m, double eta) {
    if (m == ModelKind::J1) return 1.0 - eta * eta;
    return eta;
}

// squared norm of the n-th eigenfunction over the half-line/interval
inline double norm_hn(ModelKind m, const Params& p, int n) {
    if (n < 0) throw ParameterError("norm index must be non-negative");
    if (m == ModelKind::J1) {
        const double gh = p.g + *p.h;
        return 0.5 *
               std::exp(log_gamma(n + p.g + 0.5) + log_gamma(n + *p.h + 0.5) -
                        log_gamma(n + 1.0) - log_gamma(n + gh)) /
               (2.0 * n + gh);
    }
    return 0.5 * std::exp(log_gamma(n + p.g + 0.5) - log_gamma(n + 1.0));
}

inline double ground_state(ModelKind m, const Params& p, double x) {
    return std::exp(w0(m, p, x));
}

inline double eigenfunction(ModelKind m, const Params& p, int n, double x) {
    return ground_state(m, p, x) * classical_poly(m, p, n, eta_of_x(m, x));
}

inline double eigenfunction_dx(ModelKind m, const Params& p, int n, double x) {
    const double eta = eta_of_x(m, x);
    const double pn = classical_poly(m, p, n, eta);
    const double dpn = classical_poly_deta(m, p, n, eta);
    return ground_state(m, p, x) * (w0_dx(m, p, x) * pn + dpn * eta_dx(m, x));
}

} // namespace cldpt
