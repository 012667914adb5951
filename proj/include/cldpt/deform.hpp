#pragma once

#include <cmath>
#include <vector>

#include "cldpt/errors.hpp"
#include "cldpt/model.hpp"
#include "cldpt/series.hpp"

namespace cldpt {

namespace detail {

struct FnPair {
    double v; // function value
    double d; // derivative in the series argument
};

inline FnPair f21_pair_direct(double a, double b, double c, double z, const SeriesOptions& opt) {
    FnPair r;
    r.v = gauss_2f1(a, b, c, z, opt).value;
    r.d = (a * b / c) * gauss_2f1(a + 1.0, b + 1.0, c + 1.0, z, opt).value;
    return r;
}

// value and derivative through the (1-z)^{c-a-b} transformed series; the
// transformed series has positive terms for the parameter ranges used here
inline FnPair f21_pair_flip(double a, double b, double c, double z, const SeriesOptions& opt) {
    const double s = c - a - b;
    const double v = gauss_2f1(c - a, c - b, c, z, opt).value;
    const double dv = ((c - a) * (c - b) / c) * gauss_2f1(c - a + 1.0, c - b + 1.0, c + 1.0, z, opt).value;
    const double omz = 1.0 - z;
    const double pw = std::pow(omz, s);
    return {pw * v, pw / omz * (omz * dv - s * v)};
}

// Taylor coefficient recurrence of the Gauss equation about z = zc:
// t_{k+2} = -[(p1 k + q0)(k+1) t_{k+1} + (-k(k-1) + q1 k - ab) t_k] / (p0 (k+2)(k+1))
// with p0 = zc(1-zc), p1 = 1-2zc, q0 = c-(a+b+1)zc, q1 = -(a+b+1).
struct F21Taylor {
    double p0, p1, q0, q1, R;
    F21Taylor(double a, double b, double c, double zc)
        : p0(zc * (1.0 - zc)),
          p1(1.0 - 2.0 * zc),
          q0(c - (a + b + 1.0) * zc),
          q1(-(a + b + 1.0)),
          R(-(a * b)) {}
    double next(int k, double tk, double tk1) const {
        return -(((p1 * k + q0) * (k + 1.0)) * tk1 + ((-1.0) * k * (k - 1.0) + q1 * k + R) * tk) /
               (p0 * (k + 2.0) * (k + 1.0));
    }
};

// analytic continuation of (u, u') along the real axis inside (0, 1): march
// Taylor steps covering at most 60% of the distance to the nearest singular
// point, so each local series converges geometrically
inline FnPair f21_continue(double a, double b, double c, double z0, FnPair u, double z1,
                           const SeriesOptions& opt) {
    double zc = z0;
    int guard = 0;
    while (zc != z1) {
        if (++guard > 300) throw ConvergenceError("hypergeometric continuation stalled");
        const double gap = std::min(zc, 1.0 - zc);
        double target = z1;
        if (std::fabs(z1 - zc) > 0.6 * gap) target = zc + std::copysign(0.6 * gap, z1 - zc);
        const F21Taylor rec(a, b, c, zc);
        const double dz = target - zc;
        double tk = u.v, tk1 = u.d;
        double sv = tk + tk1 * dz;
        double sd = tk1;
        double dzp = dz; // dz^{k+1}
        int small_run = 0;
        for (int k = 0;; ++k) {
            if (k > 600) throw ConvergenceError("hypergeometric continuation step diverged");
            const double tk2 = rec.next(k, tk, tk1);
            const double incd = (k + 2.0) * tk2 * dzp;
            dzp *= dz;
            const double incv = tk2 * dzp;
            sv += incv;
            sd += incd;
            tk = tk1;
            tk1 = tk2;
            const double scale = std::fabs(sv) + std::fabs(dz * sd) + 1e-300;
            if (std::fabs(incv) + std::fabs(dz * incd) < opt.tol * scale) {
                if (++small_run >= 3) break;
            } else {
                small_run = 0;
            }
        }
        u = {sv, sd};
        zc = target;
    }
    return u;
}

// regime dispatcher for 2F1(a, b; c | z) on z in (0, 1) with c > 0:
// terminating or small z directly, transformed series in a narrow band where
// its derivative cancellation is still harmless, then Taylor continuation all
// the way toward the z = 1 endpoint
inline FnPair f21_pair(double a, double b, double c, double z, const SeriesOptions& opt) {
    if (is_nonpositive_integer(a, 1e-9) || is_nonpositive_integer(b, 1e-9))
        return f21_pair_direct(a, b, c, z, opt);
    if (z <= 0.5) return f21_pair_direct(a, b, c, z, opt);
    if (z <= 0.6) return f21_pair_flip(a, b, c, z, opt);
    const FnPair seed = f21_pair_flip(a, b, c, 0.55, opt);
    return f21_continue(a, b, c, 0.55, seed, z, opt);
}

// 1F1(a; c | y) at y = -eta (eta >= 0), value and d/dy. For large eta the
// alternating direct sum loses relative accuracy like e^eta, so switch to the
// positive-term transformed series e^{-eta} 1F1(c-a; c | eta), accumulated in
// extended precision; the two partial sums share their numerator factors.
inline FnPair f11_pair_neg(double a, double c, double eta, const SeriesOptions& opt) {
    if (is_nonpositive_integer(a, 1e-9) || eta <= 8.0) {
        FnPair r;
        r.v = kummer_1f1(a, c, -eta, opt).value;
        r.d = (a / c) * kummer_1f1(a + 1.0, c + 1.0, -eta, opt).value;
        return r;
    }
    if (eta > 1.0e4) throw ConvergenceError("confluent argument too large for transformed sum");
    const long double le = static_cast<long double>(eta);
    long double t0 = 1.0L, t1 = 1.0L, s0 = 1.0L, s1 = 1.0L;
    int small_run = 0;
    for (int k = 0;; ++k) {
        if (k >= opt.max_terms) throw ConvergenceError("transformed confluent sum did not converge");
        const long double fk = (static_cast<long double>(c - a) + k) * le / (k + 1.0L);
        t0 *= fk / (static_cast<long double>(c) + k);
        t1 *= fk / (static_cast<long double>(c) + 1.0L + k);
        s0 += t0;
        s1 += t1;
        if (t0 < static_cast<long double>(opt.tol) * s0 && t1 < static_cast<long double>(opt.tol) * s1) {
            if (++small_run >= 3) break;
        } else {
            small_run = 0;
        }
    }
    const long double damp = expl(-le);
    return {static_cast<double>(damp * s0), (a / c) * static_cast<double>(damp * s1)};
}

struct F11Taylor {
    double p0, q0, R;
    F11Taylor(double a, double c, double yc) : p0(yc), q0(c - yc), R(-a) {}
    double next(int k, double tk, double tk1) const {
        return -(((1.0 * k + q0) * (k + 1.0)) * tk1 + (-1.0 * k + R) * tk) /
               (p0 * (k + 2.0) * (k + 1.0));
    }
};

} // namespace detail

// lambda + ell * delta: the parameter point the deformed system shadows
inline Params ell_shifted(const Params& p) { return shifted(p, p.ell); }

// ---------------------------------------------------------------------------
// Deforming factor xi_ell(eta; lambda) and its companion branch.
// xi is normalized so the integer-ell cases reduce to classical polynomials
// of degree ell, and xi == 1 identically at ell = 0.
// ---------------------------------------------------------------------------

namespace detail {

struct XiShape {
    double a, b, c;    // series parameters (b unused for L1)
    double lead;       // gamma-ratio prefactor, sign included
};

inline XiShape xi_shape(ModelKind m, const Params& p, bool alt) {
    XiShape s{};
    s.a = -p.ell;
    if (m == ModelKind::J1) {
        s.b = alt ? (*p.h - p.g + p.ell - 1.0) : (p.g - *p.h + p.ell - 1.0);
        s.c = alt ? (-p.g - p.ell + 0.5) : (p.g + p.ell - 0.5);
    } else {
        s.b = 0.0;
        s.c = alt ? (-p.g - p.ell + 0.5) : (p.g + p.ell - 0.5);
    }
    const double num = s.c + p.ell;
    s.lead = std::exp(log_gamma(num) - log_gamma(p.ell + 1.0) - log_gamma(s.c)) *
             gamma_sign(num) * gamma_sign(s.c);
    return s;
}

} // namespace detail

// derivatives d^r/deta^r xi_ell(eta) for r = 0..kmax
inline std::vector<double> xi_derivs(ModelKind m, const Params& p, double eta, int kmax,
                                     const SeriesOptions& opt = {}) {
    if (kmax < 0) throw ParameterError("derivative order must be non-negative");
    std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
    if (p.ell == 0.0) {
        out[0] = 1.0;
        return out;
    }
    require_deform_valid(m, p, "xi_derivs");
    if (m == ModelKind::J1) {
        if (!(eta > -1.0) || !(eta < 1.0)) throw DomainError("xi_derivs: eta outside (-1, 1)");
        const detail::XiShape s = detail::xi_shape(m, p, false);
        const double z = 0.5 * (1.0 - eta);
        if (z < 1e-4) {
            // parameter-shifted sums converge immediately near z = 0
            double coef = s.lead;
            for (int r = 0; r <= kmax; ++r) {
                out[static_cast<std::size_t>(r)] =
                    coef * gauss_2f1(s.a + r, s.b + r, s.c + r, z, opt).value;
                coef *= -0.5 * (s.a + r) * (s.b + r) / (s.c + r);
            }
            return out;
        }
        const detail::FnPair u = detail::f21_pair(s.a, s.b, s.c, z, opt);
        out[0] = s.lead * u.v;
        if (kmax >= 1) out[1] = -0.5 * s.lead * u.d;
        if (kmax >= 2) {
            const detail::F21Taylor rec(s.a, s.b, s.c, z);
            double tk = u.v, tk1 = u.d, fact = 2.0, chain = 0.25;
            for (int r = 2; r <= kmax; ++r) {
                const double tk2 = rec.next(r - 2, tk, tk1);
                out[static_cast<std::size_t>(r)] = s.lead * chain * fact * tk2;
                fact *= (r + 1.0);
                chain *= -0.5;
                tk = tk1;
                tk1 = tk2;
            }
        }
        return out;
    }
    if (!(eta >= 0.0)) throw DomainError("xi_derivs: eta must be non-negative");
    const detail::XiShape s = detail::xi_shape(m, p, false);
    if (eta < 1e-4) {
        double coef = s.lead;
        for (int r = 0; r <= kmax; ++r) {
            out[static_cast<std::size_t>(r)] =
                coef * kummer_1f1(s.a + r, s.c + r, -eta, opt).value;
            coef *= -(s.a + r) / (s.c + r);
        }
        return out;
    }
    const detail::FnPair u = detail::f11_pair_neg(s.a, s.c, eta, opt);
    out[0] = s.lead * u.v;
    if (kmax >= 1) out[1] = -s.lead * u.d;
    if (kmax >= 2) {
        const detail::F11Taylor rec(s.a, s.c, -eta);
        double tk = u.v, tk1 = u.d, fact = 2.0, chain = 1.0; // chain = (-1)^r, here r = 2
        for (int r = 2; r <= kmax; ++r) {
            const double tk2 = rec.next(r - 2, tk, tk1);
            out[static_cast<std::size_t>(r)] = s.lead * chain * fact * tk2;
            fact *= (r + 1.0);
            chain *= -1.0;
            tk = tk1;
            tk1 = tk2;
        }
    }
    return out;
}

inline double xi(ModelKind m, const Params& p, double eta, const SeriesOptions& opt = {}) {
    return xi_derivs(m, p, eta, 0, opt)[0];
}

inline double xi_deta(ModelKind m, const Params& p, double eta, int order = 1,
                      const SeriesOptions& opt = {}) {
    return xi_derivs(m, p, eta, order, opt)[static_cast<std::size_t>(order)];
}

// companion branch: same equation family with the mirrored parameter set
// (the lower series parameter changes sign); evaluated by direct sums, so it
// is intended for interior points only
inline std::vector<double> xi_alt_derivs(ModelKind m, const Params& p, double eta, int kmax,
                                         const SeriesOptions& opt = {}) {
    if (kmax < 0) throw ParameterError("derivative order must be non-negative");
    std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
    if (p.ell == 0.0) {
        out[0] = 1.0;
        return out;
    }
    if (!(p.g > 0.0) || !(p.ell > 0.0) || (m == ModelKind::J1 && (!p.h || !(*p.h > 0.0))))
        throw ParameterError("xi_alt_derivs: invalid parameters");
    const detail::XiShape s = detail::xi_shape(m, p, true); // throws PoleError on gamma poles
    if (m == ModelKind::J1) {
        if (!(eta > -1.0) || !(eta < 1.0)) throw DomainError("xi_alt_derivs: eta outside (-1, 1)");
        const double z = 0.5 * (1.0 - eta);
        double coef = s.lead;
        for (int r = 0; r <= kmax; ++r) {
            out[static_cast<std::size_t>(r)] =
                coef * gauss_2f1(s.a + r, s.b + r, s.c + r, z, opt).value;
            coef *= -0.5 * (s.a + r) * (s.b + r) / (s.c + r);
        }
        return out;
    }
    if (!(eta >= 0.0)) throw DomainError("xi_alt_derivs: eta must be non-negative");
    double coef = s.lead;
    for (int r = 0; r <= kmax; ++r) {
        out[static_cast<std::size_t>(r)] = coef * kummer_1f1(s.a + r, s.c + r, eta, opt).value;
        coef *= (s.a + r) / (s.c + r);
    }
    return out;
}

inline double xi_alt(ModelKind m, const Params& p, double eta, const SeriesOptions& opt = {}) {
    return xi_alt_derivs(m, p, eta, 0, opt)[0];
}

// ---------------------------------------------------------------------------
// Coefficients of the identities xi satisfies.
// ---------------------------------------------------------------------------

// first-order coefficient of the second-order equation c2 xi'' + c1t xi' = -Et/4 xi
inline double c1_tilde(ModelKind m, const Params& p, double eta) {
    if (m == ModelKind::J1) return -(p.g + *p.h + 2.0 * p.ell - 1.0) - (p.g - *p.h) * eta;
    return p.g + p.ell - 0.5 + eta;
}

inline double e_tilde(ModelKind m, const Params& p) {
    if (m == ModelKind::J1) return 4.0 * p.ell * (p.ell + p.g - *p.h - 1.0);
    return -4.0 * p.ell;
}

inline double c1_tilde_alt(ModelKind m, const Params& p, double eta) {
    if (m == ModelKind::J1) return (p.g + *p.h + 2.0 * p.ell - 1.0) + (p.g - *p.h) * eta;
    return -(p.g + p.ell - 0.5) - eta;
}

inline double e_tilde_alt(ModelKind m, const Params& p) {
    if (m == ModelKind::J1) return 4.0 * p.ell * (*p.h - p.g + p.ell - 1.0);
    return 4.0 * p.ell;
}

// coefficients of the parameter-shift pair:
//   d1(lambda + ell delta) xi(lambda) + d2 xi'(lambda) = d1(lambda) xi(lambda + delta)
//   d3(lambda) xi(lambda + delta) + (c2/d2) xi'(lambda + delta) = d3(lambda + ell delta) xi(lambda)
inline double d1_coef(ModelKind m, const Params& p) {
    return m == ModelKind::J1 ? *p.h + 0.5 : 1.0;
}

inline double d2_coef(ModelKind m, double eta) {
    return m == ModelKind::J1 ? -(1.0 + eta) : 1.0;
}

inline double d3_coef(ModelKind /*m*/, const Params& p) { return p.g + p.ell - 0.5; }

inline double c2_over_d2(ModelKind m, double eta) {
    return m == ModelKind::J1 ? eta - 1.0 : eta;
}

} // namespace cldpt
