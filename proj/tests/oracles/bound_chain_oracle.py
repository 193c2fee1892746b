#!/usr/bin/env python3
"""High-precision evaluation of the attractor-dimension bound chain.

Recomputes every intermediate with mpmath at 50 significant digits from the
closed-form expressions, independently of the C++ implementation. The
values printed here are frozen into tests/test_bounds.cpp and the
acceptance suite.
"""
import sys

from mpmath import mp, mpf, log, sqrt

mp.dps = 50


def chain(nu1, nu2, r, q, alpha, f_norm, c=None):
    c = c or {}
    k = lambda name: mpf(c.get(name, 1))
    nu1, nu2, r, q, alpha, f = map(mpf, (nu1, nu2, r, q, alpha, f_norm))
    s = min(r, q)
    k1, k2 = min(nu1, alpha), min(nu2, alpha)
    B0 = k("absorb_c1") * min(f / k1, (f / k2) ** (1 / (s - 1)))
    if r <= 3:
        Br = k("br_c12") * B0 ** (5 * (5 * r - 6) / (2 * (5 * r - 11)))
    else:
        Br = k("br_c12") * B0 ** 5
    ell = 1 / (nu1 ** (-3 / (2 * r - 3)) * Br ** (2 * r / (2 * r - 3)) + 1)
    L1 = k("lip_c1") * nu1 ** mpf("-0.5") * ell ** mpf("-0.5")
    Mr = nu1 ** mpf("-0.5") * nu2 ** mpf("0.5") * Br ** ((r - 2) / 2)
    U = k("lip_c2") * nu1 * L1 * (1 + Mr)
    if r <= 3:
        W = k("lip_c4") * B0 ** ((5 * r - 12) / (5 * r - 6)) * Br ** (6 / (5 * r - 6))
    else:
        W = k("lip_c4") * B0 ** ((r - 2) / r) * Br ** (2 / r)
    Q = alpha * k("lip_c5")
    L2 = U + W + Q
    e = 2 * (11 * r - 6) / (3 * r)
    dim = k("dim_c19") * (L1 ** 4 + ell * L1 ** e * L2) * log(L1)
    return dict(B0=B0, Br=Br, ell=ell, L1=L1, M_r=Mr, U_const=U, W=W, Q=Q, L2=L2,
                dim_exponent=e, dim_bound=dim)


def main():
    cases = {
        "regression r=3": (1, 1, 3, 2, 1, 2),
        "r=4": (1, 1, 4, 2, 1, 2),
        "r=2.6 mixed": (0.5, 2, mpf("2.6"), 3, mpf("0.75"), mpf("1.5")),
    }
    for name, args in cases.items():
        print(f"# {name}: nu1, nu2, r, q, alpha, f = {args}")
        for key, val in chain(*args).items():
            print(f"{key} = {mp.nstr(val, 20)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
