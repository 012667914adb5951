#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "cldpt/errors.hpp"

namespace cldpt {

/// The two continuously deformable model families: the trigonometric
/// Darboux-Poeschl-Teller well on (0, pi/2) and the radial oscillator on
/// (0, inf).
enum class ModelKind { J1, L1 };

inline const char* model_name(ModelKind m) { return m == ModelKind::J1 ? "J1" : "L1"; }

/// Couplings of a (possibly deformed) system.  `h` is present for J1 only;
/// `ell` is the continuous deformation degree (ell = 0 is the undeformed
/// system).
struct Params {
    double g = 0.0;
    std::optional<double> h{};
    double ell = 0.0;
};

/// Couplings are positive for the undeformed systems.
inline bool base_valid(ModelKind m, const Params& p) {
    if (!(p.g > 0.0)) return false;
    if (m == ModelKind::J1) return p.h.has_value() && *p.h > 0.0;
    return !p.h.has_value();
}

/// Deformed systems need g > 3/2 (and h > 1/2 for J1) whenever ell > 0;
/// ell = 0 falls back to the undeformed requirements.
inline bool deform_valid(ModelKind m, const Params& p) {
    if (!base_valid(m, p) || p.ell < 0.0) return false;
    if (p.ell == 0.0) return true;
    if (!(p.g > 1.5)) return false;
    if (m == ModelKind::J1 && !(*p.h > 0.5)) return false;
    return true;
}

inline void require_deform_valid(ModelKind m, const Params& p, const char* where) {
    if (!deform_valid(m, p))
        throw ParameterError(std::string(where) + ": parameters out of range for model " +
                             model_name(m));
}

/// Natural shift of the couplings (g, h) -> (g+k, h+k); ell is untouched.
inline Params shifted(const Params& p, double k) {
    Params q = p;
    q.g = p.g + k;
    if (q.h) q.h = *p.h + k;
    return q;
}

/// Twisted shift used by the partner construction: (g, h) -> (g-1, h+1) for
/// J1 and g -> g-1 for L1.
inline Params twist_shifted(ModelKind m, const Params& p) {
    Params q = p;
    q.g = p.g - 1.0;
    if (m == ModelKind::J1) q.h = *p.h + 1.0;
    return q;
}

/// Open interval the model lives on; x2 is +inf for L1.
struct Domain {
    double x1;
    double x2;
};

inline Domain domain_of(ModelKind m) {
    if (m == ModelKind::J1) return {0.0, std::asin(1.0)}; // (0, pi/2)
    return {0.0, std::numeric_limits<double>::infinity()};
}

constexpr double k_boundary_margin = 1e-12;

/// Interior check: points within 1e-12 of a finite boundary count as outside.
inline void require_interior(ModelKind m, double x, const char* where) {
    const Domain d = domain_of(m);
    const bool ok = x > d.x1 + k_boundary_margin &&
                    (std::isinf(d.x2) ? std::isfinite(x) : x < d.x2 - k_boundary_margin);
    if (!ok)
        throw DomainError(std::string(where) + ": x outside the open domain of " + model_name(m));
}

/// Sinusoidal coordinate eta(x): cos(2x) on (0, pi/2) for J1, x^2 for L1.
inline double eta_of_x(ModelKind m, double x) {
    return m == ModelKind::J1 ? std::cos(2.0 * x) : x * x;
}

inline double eta_dx(ModelKind m, double x) {
    return m == ModelKind::J1 ? -2.0 * std::sin(2.0 * x) : 2.0 * x;
}

inline double eta_dx2(ModelKind m, double x) {
    return m == ModelKind::J1 ? -4.0 * std::cos(2.0 * x) : 2.0;
}

} // namespace cldpt
