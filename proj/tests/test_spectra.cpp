#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cldpt/numerics.hpp"
#include "cldpt/quadrature.hpp"
#include "cldpt/spectra.hpp"
#include "oracles.hpp"

using namespace cldpt;
using Catch::Approx;

namespace {

Params jp(double g, double h, double ell) {
    Params p;
    p.g = g;
    p.h = h;
    p.ell = ell;
    return p;
}

Params lp(double g, double ell) {
    Params p;
    p.g = g;
    p.ell = ell;
    return p;
}

const std::vector<Params> kJParams = {
    jp(2.3, 1.7, 0.8), jp(1.9, 0.9, 3.141592653589793), jp(2.5, 3.5, 0.5),
    jp(2.0, 3.0, 1.0), jp(1.8, 1.1, 2.0),
};

const std::vector<Params> kLParams = {
    lp(2.3, 0.8), lp(1.9, 3.141592653589793), lp(2.1, 1.0), lp(2.0, 0.5),
};

std::vector<double> eta_grid(ModelKind m) {
    if (m == ModelKind::J1) return chebyshev_grid(30, -0.995, 0.995);
    auto g = uniform_interior_grid(25, 0.0, 30.0);
    g.push_back(60.0);
    return g;
}

std::vector<double> x_grid(ModelKind m, int n, double frac) {
    const Domain d = domain_of(m);
    const double hi = m == ModelKind::J1 ? d.x2 : 6.0;
    return uniform_interior_grid(n, d.x1, hi, frac);
}

// Gram matrix of {P_{l,n}} under the weight carried by psi^2, mapped to the
// eta variable.
std::vector<std::vector<double>> gram_matrix(ModelKind m, const Params& p, int nmax, int order) {
    QuadratureRule rule;
    double cnst;
    if (m == ModelKind::J1) {
        rule = gauss_jacobi(order, p.g + p.ell - 0.5, *p.h + p.ell - 0.5);
        cnst = std::pow(2.0, -(p.g + *p.h + 2.0 * p.ell + 1.0));
    } else {
        rule = gauss_laguerre(order, p.g + p.ell - 0.5);
        cnst = 0.5;
    }
    const std::size_t nn = static_cast<std::size_t>(nmax) + 1;
    std::vector<std::vector<double>> G(nn, std::vector<double>(nn, 0.0));
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double eta = rule.nodes[k];
        const double xv = xi(m, p, eta);
        std::vector<double> pv(nn);
        for (int n = 0; n <= nmax; ++n) pv[static_cast<std::size_t>(n)] = def_poly(m, p, n, eta);
        const double wfac = cnst * rule.weights[k] / (xv * xv);
        for (std::size_t a = 0; a < nn; ++a)
            for (std::size_t b = a; b < nn; ++b) G[a][b] += wfac * pv[a] * pv[b];
    }
    for (std::size_t a = 0; a < nn; ++a)
        for (std::size_t b = 0; b < a; ++b) G[a][b] = G[b][a];
    return G;
}

} // namespace

TEST_CASE("zero deformation reduces to the undeformed system") {
    for (ModelKind m : {ModelKind::J1, ModelKind::L1}) {
        const Params p = m == ModelKind::J1 ? jp(2.3, 1.7, 0.0) : lp(2.3, 0.0);
        for (double x : x_grid(m, 12, 0.03)) {
            CHECK(def_prepotential(m, p, x) == w0(m, p, x));
            CHECK(def_prepotential_dx(m, p, x) == w0_dx(m, p, x));
            CHECK(def_prepotential_dx2(m, p, x) == w0_dx2(m, p, x));
            CHECK(def_potential(m, p, x) == potential0(m, p, x));
            CHECK(def_psi(m, p, x) == ground_state(m, p, x));
        }
        for (int n = 0; n <= 6; ++n) CHECK(def_energy(m, p, n) == energy0(m, p, n));
        // the bilinear formula at l = 0 collapses onto the classical
        // polynomial itself, not merely a multiple of it
        for (int n = 1; n <= 5; ++n) {
            for (double eta : eta_grid(m)) {
                const double a = def_poly(m, p, n, eta);
                const double b = classical_poly(m, p, n, eta);
                CHECK(a == Approx(b).margin(1e-12 * (std::fabs(b) + 1.0)).epsilon(1e-12));
            }
            CHECK(def_norm(m, p, n) == Approx(norm_hn(m, p, n)).epsilon(1e-13));
        }
    }
}

TEST_CASE("lowest member is the shifted deforming factor, bit for bit") {
    for (const Params& p : kJParams)
        for (double eta : eta_grid(ModelKind::J1))
            CHECK(def_poly(ModelKind::J1, p, 0, eta) ==
                  xi(ModelKind::J1, shifted(p, 1.0), eta));
    for (const Params& p : kLParams)
        for (double eta : eta_grid(ModelKind::L1))
            CHECK(def_poly(ModelKind::L1, p, 0, eta) ==
                  xi(ModelKind::L1, shifted(p, 1.0), eta));
}

TEST_CASE("frozen prepotential and norm values") {
    // trig system, g = 2, h = 1, l = 1 at the domain midpoint
    const double w = def_prepotential(ModelKind::J1, jp(2.0, 1.0, 1.0), std::asin(1.0) / 2.0);
    CHECK(w == Approx(-2.5 * std::log(2.0) + std::log(3.0) - std::log(2.0)).epsilon(1e-14));

    // radial system, g = 2, l = 1: h_{l,0} = 3.5 * Gamma(2.5) / 2
    const double h0 = def_norm(ModelKind::L1, lp(2.0, 1.0), 0);
    CHECK(h0 == Approx(3.5 * 0.5 * std::exp(log_gamma(2.5))).epsilon(1e-14));
}

TEST_CASE("prepotential derivatives agree with finite differences") {
    for (ModelKind m : {ModelKind::J1, ModelKind::L1}) {
        const auto& ps = m == ModelKind::J1 ? kJParams : kLParams;
        for (const Params& p : ps) {
            for (double x : x_grid(m, 9, 0.08)) {
                auto f = [&](double t) { return def_prepotential(m, p, t); };
                const double d1 = def_prepotential_dx(m, p, x);
                const double d2 = def_prepotential_dx2(m, p, x);
                CHECK(d1 == Approx(oracle::fd1(f, x)).margin(1e-7 * (1.0 + std::fabs(d1))));
                CHECK(d2 == Approx(oracle::fd2(f, x)).margin(1e-5 * (1.0 + std::fabs(d2))));
            }
        }
    }
}

TEST_CASE("eigenfunction derivative agrees with finite differences") {
    for (ModelKind m : {ModelKind::J1, ModelKind::L1}) {
        const Params p = m == ModelKind::J1 ? jp(2.3, 1.7, 0.8) : lp(2.3, 0.8);
        for (int n : {0, 1, 3}) {
            for (double x : x_grid(m, 7, 0.1)) {
                auto f = [&](double t) { return def_phi(m, p, n, t); };
                const double d = def_phi_dx(m, p, n, x);
                CHECK(d == Approx(oracle::fd1(f, x)).margin(1e-7 * (1.0 + std::fabs(d))));
            }
        }
    }
}

TEST_CASE("deformed shape invariance") {
    for (ModelKind m : {ModelKind::J1, ModelKind::L1}) {
        const auto& ps = m == ModelKind::J1 ? kJParams : kLParams;
        for (const Params& p : ps) {
            const Params pd = shifted(p, 1.0);
            const double gap = def_energy(m, p, 1);
            for (double x : x_grid(m, 30, 0.02)) {
                const double w1 = def_prepotential_dx(m, p, x);
                const double lhs = w1 * w1 - def_prepotential_dx2(m, p, x);
                const double rhs = def_potential(m, pd, x) + gap;
                const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
                CHECK(lhs == Approx(rhs).margin(1e-9 * scale));
            }
        }
    }
}

TEST_CASE("eigenfunctions satisfy the Schroedinger equation") {
    for (ModelKind m : {ModelKind::J1, ModelKind::L1}) {
        const auto& ps = m == ModelKind::J1 ? kJParams : kLParams;
        for (const Params& p : ps) {
            for (int n = 0; n <= 4; ++n) {
                const double en = def_energy(m, p, n);
                for (double x : x_grid(m, 9, 0.06)) {
                    auto f = [&](double t) { return def_phi(m, p, n, t); };
                    const double lap = oracle::fd2(f, x);
                    const double pot = def_potential(m, p, x) * f(x);
                    const double resid = -lap + pot - en * f(x);
                    const double scale = std::max({1.0, std::fabs(lap), std::fabs(pot)});
                    CHECK(resid == Approx(0.0).margin(1e-6 * scale));
                }
            }
        }
    }
}

TEST_CASE("polynomial tower solves the eta-space eigenproblem") {
    for (ModelKind m : {ModelKind::J1, ModelKind::L1}) {
        const auto& ps = m == ModelKind::J1 ? kJParams : kLParams;
        for (const Params& p : ps) {
            for (int n = 0; n <= 4; ++n) {
                const EtaFn f = def_poly_fn(m, p, n);
                const EtaFn bf = def_backward_op(m, p, def_forward_op(m, p, f));
                const double en = def_energy(m, p, n);
                for (double eta : eta_grid(m)) {
                    const double pv = f(eta, 0);
                    const double closed = def_hamiltonian_apply(m, p, f, eta);
                    const double scale =
                        std::max({1.0, std::fabs(en * pv), 4.0 * std::fabs(f(eta, 2))});
                    CHECK(closed == Approx(en * pv).margin(1e-9 * scale));
                    CHECK(bf(eta, 0) == Approx(en * pv).margin(1e-9 * scale));
                }
            }
        }
    }
}

TEST_CASE("forward map annihilates the lowest member exactly") {
    for (ModelKind m : {ModelKind::J1, ModelKind::L1}) {
        const auto& ps = m == ModelKind::J1 ? kJParams : kLParams;
        for (const Params& p : ps) {
            const EtaFn z = def_forward_op(m, p, def_poly_fn(m, p, 0));
            for (double eta : eta_grid(m)) CHECK(z(eta, 0) == 0.0);
        }
    }
}

TEST_CASE("operators reduce to the classical ladder at zero deformation") {
    const Params p = jp(2.0, 3.0, 0.0);
    const EtaFn p1 = classical_poly_fn(ModelKind::J1, p, 1);
    const EtaFn p0 = classical_poly_fn(ModelKind::J1, p, 0);
    const EtaFn f1 = def_forward_op(ModelKind::J1, p, p1);
    const EtaFn b0 = def_backward_op(ModelKind::J1, p, p0);
    for (double eta : {-0.7, -0.2, 0.0, 0.4, 0.9}) {
        CHECK(f1(eta, 0) == Approx(-12.0).epsilon(1e-14));
        CHECK(b0(eta, 0) == Approx(1.0 - 6.0 * eta).epsilon(1e-14));
    }
}

TEST_CASE("integer deformation yields polynomials of degree l plus n") {
    struct Case {
        ModelKind m;
        Params p;
    };
    const std::vector<Case> cases = {{ModelKind::J1, jp(2.0, 3.0, 1.0)},
                                     {ModelKind::J1, jp(1.8, 1.1, 2.0)},
                                     {ModelKind::L1, lp(2.1, 1.0)},
                                     {ModelKind::L1, lp(2.2, 2.0)}};
    for (const auto& c : cases) {
        const int l = static_cast<int>(c.p.ell);
        for (int n = 0; n <= 4; ++n) {
            const int deg = l + n;
            for (double eta : {0.37, -0.61}) {
                if (c.m == ModelKind::L1 && eta < 0.0) continue;
                const auto d = def_poly_derivs(c.m, c.p, n, eta, deg + 1);
                const double top = d[static_cast<std::size_t>(deg)];
                CHECK(std::fabs(top) > 1e-12);
                CHECK(std::fabs(d[static_cast<std::size_t>(deg) + 1]) <
                      1e-6 * std::max(1.0, std::fabs(top)));
            }
        }
    }
}

TEST_CASE("tower members carry the expected node counts") {
    for (ModelKind m : {ModelKind::J1, ModelKind::L1}) {
        const Params p = m == ModelKind::J1 ? jp(2.3, 1.7, 0.8) : lp(2.3, 0.8);
        const auto grid = m == ModelKind::J1 ? chebyshev_grid(2000, -1.0 + 1e-6, 1.0 - 1e-6)
                                             : uniform_interior_grid(3000, 0.0, 80.0, 1e-6);
        for (int n = 0; n <= 4; ++n) {
            std::vector<double> vals;
            vals.reserve(grid.size());
            for (double eta : grid) vals.push_back(def_poly(m, p, n, eta));
            CHECK(count_sign_changes(vals, 0.0) == n);
        }
    }
}

TEST_CASE("norm closed forms agree with each other") {
    for (ModelKind m : {ModelKind::J1, ModelKind::L1}) {
        const auto& ps = m == ModelKind::J1 ? kJParams : kLParams;
        for (const Params& p : ps) {
            Params q = ell_shifted(p);
            q.ell = 0.0;
            for (int n = 0; n <= 5; ++n) {
                const double via_twist = def_norm(m, p, n);
                const double via_ratio = bhat_factor(m, p, n) / fhat_factor(m, p, n) *
                                         fhat_factor(m, q, n) / bhat_factor(m, q, n) *
                                         norm_hn(m, q, n);
                CHECK(via_twist == Approx(via_ratio).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("norms match quadrature and the tower is orthogonal") {
    struct Case {
        ModelKind m;
        Params p;
    };
    const std::vector<Case> cases = {{ModelKind::J1, jp(2.3, 1.7, 0.8)},
                                     {ModelKind::J1, jp(2.0, 3.0, 0.5)},
                                     {ModelKind::L1, lp(2.3, 0.8)},
                                     {ModelKind::L1, lp(2.0, 1.0)}};
    const int nmax = 4;
    for (const auto& c : cases) {
        const auto G1 = gram_matrix(c.m, c.p, nmax, 80);
        const auto G2 = gram_matrix(c.m, c.p, nmax, 160);
        for (int n = 0; n <= nmax; ++n) {
            const double hn = def_norm(c.m, c.p, n);
            const auto ni = static_cast<std::size_t>(n);
            CHECK(G1[ni][ni] == Approx(hn).epsilon(1e-9));
            CHECK(G2[ni][ni] == Approx(hn).epsilon(1e-9));
            CHECK(G1[ni][ni] == Approx(G2[ni][ni]).epsilon(1e-11));
            for (int k = 0; k < n; ++k) {
                const auto ki = static_cast<std::size_t>(k);
                const double off = std::fabs(G2[ni][ki]);
                CHECK(off < 1e-9 * std::sqrt(G2[ni][ni] * G2[ki][ki]));
            }
        }
    }
}

TEST_CASE("ladder factor products reproduce the spectrum exactly") {
    {
        const Params p = jp(2.0, 3.0, 0.5);
        const double gap0 =
            fhat_factor(ModelKind::J1, p, 0) * bhat_factor(ModelKind::J1, p, 0);
        for (int n = 0; n <= 20; ++n) {
            const double prod =
                fhat_factor(ModelKind::J1, p, n) * bhat_factor(ModelKind::J1, p, n);
            CHECK(prod - gap0 == def_energy(ModelKind::J1, p, n));
        }
    }
    {
        const Params p = lp(2.0, 1.0);
        const double gap0 =
            fhat_factor(ModelKind::L1, p, 0) * bhat_factor(ModelKind::L1, p, 0);
        for (int n = 0; n <= 20; ++n) {
            const double prod =
                fhat_factor(ModelKind::L1, p, n) * bhat_factor(ModelKind::L1, p, n);
            CHECK(prod - gap0 == def_energy(ModelKind::L1, p, n));
        }
    }
}
