"""Sparse multivariate polynomials whose coefficients are ring elements.

Used for the symbolic coordinates of group-law charts.  Coefficients are
``RationalF`` for published charts and ``Poly2`` while a chart is being
materialized.  Exponents are tuples of length ``nvars``.
"""

from __future__ import annotations

from fractions import Fraction

from .rational import Poly2, RationalF, expand_rational
from .series import INF, PatchSeries, Tag, gauss_val, ord_t


def _nz(c) -> bool:
    if hasattr(c, "is_zero"):
        return not c.is_zero()
    return c != 0


class MPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms = {tuple(e): c for e, c in (terms or {}).items() if _nz(c)}

    @classmethod
    def _raw(cls, nvars, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def var(cls, nvars, k, one):
        e = [0] * nvars
        e[k] = 1
        return cls._raw(nvars, {tuple(e): one})

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def coeffs(self):
        return list(self.terms.values())

    def constant_term(self):
        return self.terms.get((0,) * self.nvars)

    def homogeneous(self, deg):
        return MPoly._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == deg})

    def truncate(self, maxdeg):
        return MPoly._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) <= maxdeg})

    def _combine(self, other, sign):
        acc = dict(self.terms)
        for e, c in other.terms.items():
            if e in acc:
                v = acc[e] + c if sign > 0 else acc[e] - c
                if _nz(v):
                    acc[e] = v
                else:
                    del acc[e]
            else:
                acc[e] = c if sign > 0 else -c
        return MPoly._raw(self.nvars, acc)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return MPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def mul(self, other, maxdeg=None):
        acc = {}
        oitems = list(other.terms.items())
        odeg = {e: sum(e) for e in other.terms}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in oitems:
                if maxdeg is not None and d1 + odeg[e2] > maxdeg:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc[e] + c1 * c2 if e in acc else c1 * c2
        return MPoly._raw(self.nvars, {e: c for e, c in acc.items() if _nz(c)})

    __mul__ = mul

    def scale(self, c):
        return MPoly._raw(self.nvars, {e: v * c for e, v in self.terms.items() if _nz(v * c)})

    def map_coeffs(self, fn):
        return MPoly(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def restrict(self, zero_vars):
        """Set the listed variables to zero."""
        zs = set(zero_vars)
        return MPoly._raw(self.nvars, {e: c for e, c in self.terms.items() if not any(e[k] for k in zs)})

    def linear_coeffs(self):
        out = {}
        for e, c in self.terms.items():
            if sum(e) == 1:
                out[e.index(1)] = c
        return out

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def evaluate(self, vals, tprec, uprec=None):
        """Value at a point of ``F0^nvars``; coefficients are expanded into the branch field."""
        F = vals[0].field if vals else None
        total = None
        cache = {}

        def power(k, m):
            key = (k, m)
            if key not in cache:
                cache[key] = vals[k] if m == 1 else power(k, m - 1) * vals[k]
            return cache[key]

        for e, c in self.terms.items():
            term = _coeff_series(c, F, tprec, uprec)
            for k, m in enumerate(e):
                if m:
                    term = term * power(k, m)
            total = term if total is None else total + term
        if total is None:
            return PatchSeries.zero(F, Tag.F0, tprec)
        return total.truncate(tprec=tprec)

    def gauss_val(self, s):
        return gauss_val(self.terms, s)

    def __repr__(self):
        return f"MPoly({self.nvars}, {self.terms})"


def _coeff_series(c, field, tprec, uprec):
    if isinstance(c, RationalF):
        return expand_rational(c, Tag.F0, tprec, uprec)
    if isinstance(c, Poly2):
        return c.to_series(tprec)
    return PatchSeries.const(field, c, Tag.F0, tprec)


class RatMap:
    """One coordinate ``num/den`` of a rational map; ``den`` has a unit constant term."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None):
        self.num = num
        self.den = den if den is not None else MPoly.const(num.nvars, _one_like(num))

    @property
    def nvars(self):
        return self.num.nvars

    def is_polynomial(self):
        d = self.den.terms
        return len(d) == 1 and (0,) * self.nvars in d and d[(0,) * self.nvars] == 1

    def evaluate(self, vals, tprec, uprec=None):
        n = self.num.evaluate(vals, tprec, uprec)
        if self.is_polynomial():
            return n
        d = self.den.evaluate(vals, tprec, uprec)
        return (n * d.invert(uprec=uprec)).truncate(tprec=tprec)

    def __eq__(self, other):
        return isinstance(other, RatMap) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatMap({self.num!r} / {self.den!r})"


def _one_like(p: MPoly):
    for c in p.terms.values():
        if isinstance(c, RationalF):
            return RationalF.const(c.field, 1)
        if isinstance(c, Poly2):
            return Poly2.const(c.field, 1)
    return 1


def rational_gauss_bound(rm: RatMap, s) -> Fraction | float:
    """Lower bound for the Gauss value of ``num/den`` at weight ``s``.

    Writes ``den = c (1 - b)`` with ``c`` the constant term; the bound is
    ``gauss_val(num) - ord_t(c)`` provided ``gauss_val(b) > 0``, otherwise
    -INF (no bound at this weight).
    """
    s = Fraction(s)
    zero = (0,) * rm.nvars
    c = rm.den.terms.get(zero)
    if c is None:
        return -INF
    if rm.is_polynomial():
        return rm.num.gauss_val(s)
    b = {e: -(v / c) for e, v in rm.den.terms.items() if e != zero}
    gb = gauss_val(b, s)
    if not gb > 0:
        return -INF
    return rm.num.gauss_val(s) - ord_t(c)
