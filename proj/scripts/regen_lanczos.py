#!/usr/bin/env python3
"""Regenerate the Lanczos log-gamma coefficients in include/cldpt/series.hpp.

Shift parameter 7 with 9 partial-fraction terms:

    Gamma(x) ~ sqrt(2 pi) (x + 13/2)^(x - 1/2) exp(-(x + 13/2)) A(x),
    A(x) = c[0] + sum_{k=1}^{8} c[k] / (x - 1 + k).

Spectral construction: Chebyshev-expand the Lanczos integrand (coefficients
f[k]), then convert the rational basis

    H_k(x-1) = x(x-1)...(x-k+1) / ((x)(x+1)...(x+k-1+1))   (z = x-1)

to partial fractions.  Requires mpmath.  The printed values should agree
with the table in series.hpp to all 17 digits.
"""

import mpmath as mp

mp.mp.dps = 60
G = mp.mpf(7)
N = 9


def cheb_even_coeff(k: int, a: int):
    """Coefficient of x^(2a) in the Chebyshev polynomial T_(2k)(x)."""
    if k == 0:
        return mp.mpf(1) if a == 0 else mp.mpf(0)
    return ((-1) ** (k - a) * mp.mpf(2 * k) / (k + a)
            * mp.binomial(k + a, k - a) * mp.mpf(2) ** (2 * a - 1))


def integrand_moment(a: int):
    half = mp.mpf(1) / 2
    return (mp.sqrt(2) / mp.pi * mp.gamma(a + half)
            * (a + G + half) ** (-(a + half)) * mp.e ** (a + G + half))


def residue(k: int, j: int):
    """Residue of H_k(z) at z = -j (1 <= j <= k)."""
    return ((-1) ** (k + j - 1) * mp.factorial(j + k - 1)
            / (mp.factorial(j - 1) ** 2 * mp.factorial(k - j)))


def main():
    f = [sum(cheb_even_coeff(k, a) * integrand_moment(a) for a in range(k + 1))
         for k in range(N)]
    c = [f[0] / 2 + mp.fsum(f[1:])]
    for j in range(1, N):
        c.append(mp.fsum(f[k] * residue(k, j) for k in range(j, N)))

    for v in c:
        print(mp.nstr(v, 17))

    # sanity: compare the truncated form against mpmath's gamma
    def lanczos_gamma(x):
        acc = c[0] + mp.fsum(c[k] / (x - 1 + k) for k in range(1, N))
        t = x + G - mp.mpf(1) / 2
        return mp.sqrt(2 * mp.pi) * t ** (x - mp.mpf(1) / 2) * mp.e ** (-t) * acc

    worst = max(abs(lanczos_gamma(x) / mp.gamma(x) - 1)
                for x in [mp.mpf(p) / 4 for p in range(2, 401)])
    print(f"# max relative error on [0.5, 100]: {mp.nstr(worst, 3)}")


if __name__ == "__main__":
    main()
