"""Newton factorization f(v, w) = a and the group factorization pipelines.

Conventions: the first factor lives on the side of the point at infinity
(tags V / F1), the second along the affine line (tags W / F2), and
``g0 = g1 * g2``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import matrices as mx
from .charts import Chart, gl_chart
from .errors import GuardFailure, NotInRing, PrecisionError, SingularResidue, ThresholdViolation, VerificationFailure
from .scalars import Field
from .series import INF, Laurent, PatchSeries, Tag
from .splitting import additive_factor

CONVENTION = "g1=F1(inf) g2=F2(A1)"


@dataclass(frozen=True)
class FactorCert:
    kind: str  # "newton", "gl" or "group"
    field: Field
    chart: str
    tprec: int
    uprec: int | None
    inputs: tuple  # vector, or matrix as a tuple of rows
    factor1: tuple
    factor2: tuple
    residual_ord: int
    trace: tuple
    convention: str = CONVENTION


def _vec_ord(vs):
    return min((v.ord_t() for v in vs), default=INF)


def newton_factor(ch: Chart, a, N: int, N0: int | None = None, uprec=None):
    """Find v over k[[u, t]] and w over k[x][[t]] with f(v, w) = a mod t^N.

    Each step splits the whole residual b_j = a - f(v_j, w_j) and adds its
    parts to v and w.  Returns ``(v, w, cert)``.
    """
    F = ch.field
    a = list(a)
    if len(a) != ch.d:
        raise ValueError(f"expected {ch.d} coordinates, got {len(a)}")
    for c in a:
        if c.tprec < N:
            raise PrecisionError(f"input known mod t^{c.tprec}, need t^{N}")
    a = [c.truncate(tprec=N) for c in a]
    if N0 is None:
        N0 = ch.threshold().N0
    o = _vec_ord(a)
    if o < N0:
        raise ThresholdViolation(f"target has t-order {o} < N0 = {N0}")
    v = [PatchSeries.zero(F, Tag.V, N)] * ch.d
    w = [PatchSeries.zero(F, Tag.W, N)] * ch.d
    trace = []
    b = a
    prev = None
    for it in range(max(N - N0 + 1, 1)):
        if it:
            fvw = ch.multiply(v, w, N, uprec)
            b = [ai - fi for ai, fi in zip(a, fvw)]
        o = _vec_ord(b)
        trace.append(min(o, N))
        if prev is not None and o < prev + 1:
            raise GuardFailure(f"residual order {o} after {prev}: contraction failed (raise N0)")
        if o >= N:
            break
        prev = o
        for i, bi in enumerate(b):
            if bi.ord_t() == INF:
                continue
            sp = additive_factor(bi)
            v[i] = v[i] + sp.v
            w[i] = w[i] + sp.w
    else:
        raise GuardFailure(f"no convergence mod t^{N} within {N - N0 + 1} iterations")
    cert = FactorCert(kind="newton", field=F, chart=ch.describe(), tprec=N, uprec=uprec,
                      inputs=tuple(a), factor1=tuple(v), factor2=tuple(w),
                      residual_ord=N, trace=tuple(trace))
    return v, w, cert


def _exact_residue_lift(g0, N):
    """The t^0 coefficients as a constant-in-t matrix; must be exact Laurent polynomials."""
    F = g0[0][0].field
    out = []
    for row in g0:
        r = []
        for a in row:
            if a.tord < 0:
                raise NotInRing("g0 has a t-pole; only entries over the branch ring are supported")
            c = a.coeff(0)
            if c.uprec != INF:
                raise PrecisionError("residue entries must be exact Laurent polynomials")
            r.append(PatchSeries.from_laurents(F, [c], Tag.FRAT, 0, N))
        out.append(r)
    return out


def gl_factor(g0, N: int, uprec=None):
    """Factor g0 in GL_n(F0) as g1 * g2 with g1 over F1 and g2 over F2.

    g' lifts the residue to GL_n(F), h = g'^{-1} g0 is near the identity,
    and Newton on the GL_n chart factors h; then g1 = g'(I + v) and
    g2 = (I + w) g''.
    """
    g0 = [list(r) for r in g0]
    n = len(g0)
    F = g0[0][0].field
    for row in g0:
        for a in row:
            if a.tprec < N:
                raise PrecisionError(f"input known mod t^{a.tprec}, need t^{N}")
    g0 = mx.truncate(g0, tprec=N)
    ch = gl_chart(n, F)
    N0 = ch.threshold().N0
    gp = _exact_residue_lift(g0, N)
    dres = mx.det(gp)
    if dres.coeff(0).is_zero():
        raise SingularResidue("determinant of the residue vanishes")
    gp_inv = mx.inverse(gp, uprec)
    h = mx.mul(gp_inv, g0)
    if N0 > 1:
        gpp = mx.truncate(h, tprec=N0)
        gpp = [[PatchSeries.from_laurents(F, e.coeffs, Tag.FRAT, e.tord, N) for e in r] for r in gpp]
        target = mx.mul(h, mx.inverse(gpp, uprec))
    else:
        gpp = mx.identity(F, n, N, Tag.FRAT)
        target = h
    I = mx.identity(F, n, N)
    a = [e for row in mx.sub(target, I) for e in row]
    v, w, ncert = newton_factor(ch, a, N, N0, uprec)
    V = [v[i * n:(i + 1) * n] for i in range(n)]
    W = [w[i * n:(i + 1) * n] for i in range(n)]
    g1 = mx.mul(gp, mx.add(mx.identity(F, n, N, Tag.V), V))
    g2 = mx.mul(mx.add(mx.identity(F, n, N, Tag.W), W), gpp)
    res = mx.sub(g0, mx.mul(g1, g2))
    ro = mx.ord_t(res)
    if ro < N:
        raise VerificationFailure(f"recombination off at t^{ro}")
    cert = FactorCert(kind="gl", field=F, chart=ch.describe(), tprec=N, uprec=uprec,
                      inputs=tuple(tuple(r) for r in g0), factor1=tuple(tuple(r) for r in g1),
                      factor2=tuple(tuple(r) for r in g2), residual_ord=N, trace=ncert.trace)
    return g1, g2, cert


def group_factor(ch: Chart, z0, N: int, uprec=None, N0: int | None = None):
    """Near-identity factorization in chart coordinates: f(z1, z2) = z0.

    For matrix charts the factors are also realized as group elements and
    the product is checked against the image of z0.
    """
    z1, z2, ncert = newton_factor(ch, z0, N, N0, uprec)
    if ch.kind in ("gl", "so"):
        G1 = ch.element(z1, N, uprec)
        G2 = ch.element(z2, N, uprec)
        G0 = ch.element(z0, N, uprec)
        if not mx.congruent(mx.mul(G1, G2), G0):
            raise VerificationFailure("matrix realizations do not multiply to g0")
    cert = FactorCert(kind="group", field=ch.field, chart=ncert.chart, tprec=N, uprec=uprec,
                      inputs=ncert.inputs, factor1=ncert.factor1, factor2=ncert.factor2,
                      residual_ord=N, trace=ncert.trace)
    return z1, z2, cert
