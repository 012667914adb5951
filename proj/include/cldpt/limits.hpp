#pragma once

#include <cmath>
#include <vector>

#include "cldpt/classical.hpp"
#include "cldpt/deform.hpp"
#include "cldpt/intertwine.hpp"
#include "cldpt/model.hpp"
#include "cldpt/numerics.hpp"

namespace cldpt {

// ---------------------------------------------------------------------------
// Scaling bridge between the two models. With the trig coupling h used as a
// large scale and the coordinate contracted by 1 / sqrt(h), every trig-side
// quantity approaches its radial counterpart at rate 1 / h.
// ---------------------------------------------------------------------------

inline Params trig_of_radial(const Params& lp, double hs) {
    Params p = lp;
    p.h = hs;
    return p;
}

enum class LimitProbe { Base, Twist, Xi };

// difference between the contracted trig quantity (with its diverging
// constant removed) and the radial one, at radial coordinate x
inline double limit_gap(LimitProbe which, const Params& lp, double hs, double x) {
    const Params jp = trig_of_radial(lp, hs);
    const double xj = x / std::sqrt(hs);
    switch (which) {
    case LimitProbe::Base:
        return w0(ModelKind::J1, jp, xj) + 0.5 * lp.g * std::log(hs) -
               w0(ModelKind::L1, lp, x);
    case LimitProbe::Twist:
        return twist_prepotential(ModelKind::J1, jp, xj) +
               0.5 * (lp.g - 1.0) * std::log(hs) -
               twist_prepotential(ModelKind::L1, lp, x);
    case LimitProbe::Xi:
    default:
        return xi(ModelKind::J1, jp, eta_of_x(ModelKind::J1, xj)) -
               xi(ModelKind::L1, lp, eta_of_x(ModelKind::L1, x));
    }
}

// radial-side reference value used to express gaps relative to the target
inline double limit_reference(LimitProbe which, const Params& lp, double x) {
    switch (which) {
    case LimitProbe::Base:
        return w0(ModelKind::L1, lp, x);
    case LimitProbe::Twist:
        return twist_prepotential(ModelKind::L1, lp, x);
    case LimitProbe::Xi:
    default:
        return xi(ModelKind::L1, lp, eta_of_x(ModelKind::L1, x));
    }
}

inline double limit_sup_gap(LimitProbe which, const Params& lp, double hs,
                            const std::vector<double>& xs) {
    double sup = 0.0;
    for (double x : xs) {
        const double ref = std::max(1.0, std::fabs(limit_reference(which, lp, x)));
        sup = std::max(sup, std::fabs(limit_gap(which, lp, hs, x)) / ref);
    }
    return sup;
}

// decay exponent q of sup-gap ~ hs^{-q}
inline double limit_decay_exponent(LimitProbe which, const Params& lp,
                                   const std::vector<double>& hs,
                                   const std::vector<double>& xs) {
    std::vector<double> sups;
    sups.reserve(hs.size());
    for (double h : hs) sups.push_back(limit_sup_gap(which, lp, h, xs));
    return -fit_log_slope(hs, sups);
}

// full convergence study at a single radial coordinate
struct LimitRecord {
    std::vector<double> h_values;
    std::vector<double> xi_err;
    std::vector<double> base_err;
    std::vector<double> twist_err;
    double xi_exponent;    // NaN when fewer than two scales are given
    double base_exponent;
    double twist_exponent;
};

inline LimitRecord jacobi_to_laguerre_limit(double g, double ell, std::vector<double> h_values,
                                            double x_radial) {
    Params lp;
    lp.g = g;
    lp.ell = ell;
    LimitRecord rec;
    rec.h_values = std::move(h_values);
    for (double hs : rec.h_values) {
        require_deform_valid(ModelKind::J1, trig_of_radial(lp, hs), "jacobi_to_laguerre_limit");
        require_interior(ModelKind::J1, x_radial / std::sqrt(hs), "jacobi_to_laguerre_limit");
        rec.xi_err.push_back(std::fabs(limit_gap(LimitProbe::Xi, lp, hs, x_radial)));
        rec.base_err.push_back(std::fabs(limit_gap(LimitProbe::Base, lp, hs, x_radial)));
        rec.twist_err.push_back(std::fabs(limit_gap(LimitProbe::Twist, lp, hs, x_radial)));
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (rec.h_values.size() < 2) {
        rec.xi_exponent = rec.base_exponent = rec.twist_exponent = nan;
        return rec;
    }
    rec.xi_exponent = -fit_log_slope(rec.h_values, rec.xi_err);
    rec.base_exponent = -fit_log_slope(rec.h_values, rec.base_err);
    rec.twist_exponent = -fit_log_slope(rec.h_values, rec.twist_err);
    return rec;
}

} // namespace cldpt
