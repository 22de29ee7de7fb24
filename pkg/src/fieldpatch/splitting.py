"""Additive splitting of the branch ring and reconstruction into k(x, t).

The residue ring at the branch is ``k((u))`` and decomposes as
``k[x] + u k[[u]]``; applying that degree by degree in t splits any
``a`` in ``k((u))[[t]]`` as ``v + w`` with ``v`` in ``k[[u, t]]`` and ``w``
in ``k[x][[t]]``.  The overlap is the constants, which always go to ``w``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import BranchMismatch, NoSolution, NotInRing, PrecisionError
from .linalg import nullspace
from .rational import Poly2, RationalF, expand_rational
from .series import INF, Laurent, PatchSeries, Tag


@dataclass(frozen=True)
class SplitPair:
    v: PatchSeries
    w: PatchSeries


def split_residue(c: Laurent):
    """Return ``(wpart, vpart)``: the x-polynomial part (constants included) and the u-tail."""
    return c.split()


def additive_factor(a: PatchSeries, N: int | None = None) -> SplitPair:
    """Split ``a`` (no t-pole) as ``v + w`` coefficient by coefficient."""
    F = a.field
    if N is not None:
        if N > a.tprec:
            raise PrecisionError(f"requested t^{N} but input is known only mod t^{a.tprec}")
        a = a.truncate(tprec=N)
    if a.tord < 0:
        raise NotInRing(f"t-valuation offset {a.tord} < 0: not in the branch ring")
    ws, vs = [], []
    for c in a.coeffs:
        w, v = c.split()
        ws.append(w)
        vs.append(v)
    v = PatchSeries._raw(F, Tag.V, a.tord, tuple(vs), a.tprec)
    w = PatchSeries._raw(F, Tag.W, a.tord, tuple(ws), a.tprec)
    return SplitPair(v=v, w=w)


def _window(coeffs):
    """Known-exponent window of a list of coefficients: (min exponent, first unknown)."""
    lo = min((min(c.terms) for c in coeffs if c.terms), default=0)
    finite = [c.uprec for c in coeffs if c.uprec != INF]
    hi = min(finite) if finite else max((max(c.terms) for c in coeffs if c.terms), default=0) + 1
    return lo, hi


def _linear_system(a: PatchSeries, dx: int, dt: int):
    """Rows of ``p - q*a = 0``; unknowns ordered p_ij then q_ij (i <= dx, j <= dt)."""
    F = a.field
    p = F.p
    mons = [(i, j) for j in range(dt + 1) for i in range(dx + 1)]
    nm = len(mons)
    pidx = {m: k for k, m in enumerate(mons)}
    rows = []
    lo_n = min(a.tord, 0)
    for n in range(lo_n, a.tprec):
        used = [(j, a.coeff(n - j)) for j in range(dt + 1) if n - j >= a.tord]
        cs = [c for _, c in used]
        if cs:
            lo, hi = _window(cs)
            # q*a at u^e involves exponents e..e+dx of a
            if any(c.uprec != INF for c in cs):
                hi = hi - dx
            else:
                hi = max(hi, 1)
            lo = min(lo - dx, -dx)
        else:
            lo, hi = -dx, 1
        for e in range(lo, hi):
            row = [0] * (2 * nm)
            nz = False
            if 0 <= -e <= dx and 0 <= n <= dt:
                row[pidx[-e, n]] = F.one
                nz = True
            for j, c in used:
                terms = c.terms
                for i in range(dx + 1):
                    v = terms.get(e + i)
                    if v is not None:
                        row[nm + pidx[i, j]] = -v % p if p else -v
                        nz = True
            if nz:
                rows.append(row)
    return rows, mons


def _candidate(F, vec, mons):
    nm = len(mons)
    num = Poly2(F, {m: vec[k] for k, m in enumerate(mons)})
    den = Poly2(F, {m: vec[nm + k] for k, m in enumerate(mons)})
    if den.is_zero():
        return None
    return RationalF(num, den)


def _verifies(f: RationalF, a: PatchSeries) -> bool:
    finite = [c.uprec for c in a.coeffs if c.uprec != INF]
    M = max(finite) if finite else None
    try:
        e = expand_rational(f, Tag.F0, a.tprec, M)
    except (PrecisionError, ZeroDivisionError):
        return False
    return e.congruent(a)


def intersect_reconstruct(a1: PatchSeries, a2: PatchSeries, degbounds) -> RationalF:
    """Find ``f`` in k(x, t) expanding to ``a1`` at infinity and ``a2`` along the affine line."""
    dx, dt = (int(d) for d in degbounds)
    if a1.field != a2.field:
        raise BranchMismatch("inputs over different ground fields")
    if not a1.congruent(a2):
        raise BranchMismatch("the two local expansions disagree on the branch")
    F = a2.field
    rows, mons = _linear_system(a2, dx, dt)
    basis = nullspace(F, rows, 2 * len(mons))
    tried = set()

    def attempts():
        yield from basis
        for b1, b2 in combinations(basis, 2):
            yield [F.norm(x + y) for x, y in zip(b1, b2)]
        if len(basis) > 2:
            yield [F.norm(sum(col)) for col in zip(*basis)]

    for vec in attempts():
        f = _candidate(F, vec, mons)
        if f is None or f in tried:
            continue
        tried.add(f)
        if f.num.degx() > dx or f.den.degx() > dx or f.num.degt() > dt or f.den.degt() > dt:
            continue
        if _verifies(f, a2) and _verifies(f, a1):
            return f
    raise NoSolution(f"no rational function with degrees <= ({dx}, {dt}) matches both expansions")
