"""Seeded random instances shared by the self test, the test suite and the scripts."""

from __future__ import annotations

import random

from . import matrices as mx
from .rational import Poly2, RationalF, expand_rational
from .scalars import Field
from .series import Laurent, PatchSeries, Tag


def rand_laurent(F: Field, rng: random.Random, emin: int, emax: int, uprec=None, density=0.5):
    """Random Laurent coefficient with exponents in [emin, emax]; exact unless ``uprec`` is given."""
    top = emax if uprec is None else min(emax, uprec - 1)
    terms = {e: F.random(rng) for e in range(emin, top + 1) if rng.random() < density}
    return Laurent(F, terms, float("inf") if uprec is None else uprec)


def rand_series(F, rng, N, M=None, tag=Tag.F0, tord=0, emin=-4, emax=6, density=0.5):
    """Random element of the branch ring mod t^N with coefficients known below u^M."""
    coeffs = [rand_laurent(F, rng, emin, emax, M, density) for _ in range(N - tord)]
    return PatchSeries(F, tag, tord, coeffs, N)


def rand_small(F, rng, N, tag=Tag.F0, min_ord=1, tdeg=3, emin=-2, emax=2, nterms=3):
    """Sparse Laurent polynomial in (x, u, t) with t-order at least ``min_ord``."""
    terms = {}
    for _ in range(nterms):
        key = (rng.randint(min_ord, max(min_ord, tdeg)), rng.randint(emin, emax))
        terms[key] = F.random(rng)
    return PatchSeries.from_terms(F, terms, tag, N)


def rand_poly2(F, rng, dx, dt, density=0.5):
    return Poly2(F, {(i, j): F.random(rng) for i in range(dx + 1) for j in range(dt + 1)
                     if rng.random() < density})


def rand_rational(F, rng, dx=3, dt=3, density=0.5):
    """Random f in k(x, t) with degrees <= (dx, dt) and a denominator that does not vanish mod t."""
    while True:
        num = rand_poly2(F, rng, dx, dt, density)
        den = rand_poly2(F, rng, dx, dt, density)
        if den.is_zero() or all(j > 0 for (_i, j) in den.terms):
            continue
        return RationalF(num, den)


def near_identity(F, rng, n, N, side=None, nterms=1):
    """I + t*(sparse Laurent polynomials); ``side`` "inf" keeps u-exponents >= 1, "aff" keeps x-powers."""
    lo, hi, tag = {"inf": (1, 2, Tag.V), "aff": (-2, 0, Tag.W), None: (-2, 2, Tag.F0)}[side]
    I = mx.identity(F, n, N, tag)
    return [[I[i][j] + rand_small(F, rng, N, tag, 1, 2, lo, hi, nterms) for j in range(n)] for i in range(n)]


def rand_unimodular_residue(F, rng, n=2, deg=3, N=12):
    """Constant-in-t matrix over k[x, 1/x] with monomial determinant and entry degrees <= deg."""
    while True:
        A = mx.identity(F, n, N)
        for _ in range(2):
            i, j = rng.sample(range(n), 2)
            E = mx.identity(F, n, N)
            e = PatchSeries.from_laurents(F, [rand_laurent(F, rng, -1, 1)], Tag.F0, 0, N)
            E[i][j] = e
            A = mx.mul(A, E)
        D = mx.identity(F, n, N)
        for i in range(n):
            c = F.random(rng)
            while c == 0:
                c = F.random(rng)
            D[i][i] = PatchSeries.from_laurents(F, [Laurent.monomial(F, rng.randint(-1, 1), c)], Tag.F0, 0, N)
        A = mx.mul(A, D)
        res = [a.coeff(0) for r in A for a in r]
        if all(c.is_zero() or (c.emax - c.emin <= deg and abs(c.emin) <= deg and abs(c.emax) <= deg)
               for c in res):
            return A


def rand_gl_input(F, rng, n, N, deg=3):
    R = rand_unimodular_residue(F, rng, n, deg, N)
    return [[R[i][j] + rand_small(F, rng, N, Tag.F0, 1, 3, -2, 2, 2) for j in range(n)] for i in range(n)]


def rand_symmetric(F, rng, n, dx=1, dt=1):
    G = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            G[i][j] = G[j][i] = rand_rational(F, rng, dx, dt)
    return G


def expand_object(obj, tag, N, M=None):
    return obj.map(lambda f: expand_rational(f, tag, N, M))


def product_problem(F, rng, obj, N, M=None):
    """Patching problem for ``obj`` whose transition is h1*h2 with h1 near I at infinity, h2 near I affinely."""
    from .patching import PatchingProblem, transport

    n = obj.n
    h1 = near_identity(F, rng, n, N, "inf")
    h2 = near_identity(F, rng, n, N, "aff")
    s1 = transport(expand_object(obj, Tag.F1, N, M), h1, mx.inverse(h1, M))
    s2 = transport(expand_object(obj, Tag.F2, N, M), mx.inverse(h2, M), h2)
    return PatchingProblem(n, s1, s2, tuple(map(tuple, mx.mul(h1, h2))))


def product_perturbation(ch, rng, N, uprec=None, cmax=3):
    """Chart coordinates z0 = f(zV, zW): zV = c*t*u per coordinate, zW random in t*k[x][t]."""
    F = ch.field
    zV = [PatchSeries.from_terms(F, {(1, 1): F(rng.randint(-cmax, cmax))}, Tag.V, N) for _ in range(ch.d)]
    zW = [rand_small(F, rng, N, Tag.W, 1, 2, -2, 0, 2) for _ in range(ch.d)]
    return [c.promote(Tag.F0) for c in ch.multiply(zV, zW, N, uprec)]
