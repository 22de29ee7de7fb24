"""Truncated bivariate series for the patch rings over the projective line.

Every patch ring and field embeds in the branch field ``k((u))((t))`` with
``u = 1/x``, so all of them share one representation:

* :class:`Laurent` is a t-coefficient: finitely many nonzero terms ``c*u^e``
  plus a horizon ``uprec`` beyond which nothing is known.  Exponents
  ``e <= 0`` are powers of ``x``; an exact coefficient has ``uprec = INF``.
* :class:`PatchSeries` is a list of Laurent coefficients for ``t^tord, ...,
  t^(tprec-1)`` together with a :class:`Tag` saying which ring or field the
  element was constructed in.

Equality of truncated objects is only meaningful as congruence modulo
``(t^tprec, u^uprec)``; see :meth:`PatchSeries.congruent`.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import IncompatibleTags, PrecisionError
from .scalars import Field

INF = math.inf

#: u-horizon used when an exact non-monomial coefficient has to be inverted
#: and the caller gave no horizon.
DEFAULT_UPREC = 16


def _prec(x):
    """Keep finite precisions as ints."""
    return x if x == INF else int(x)


def fmt_prec(x) -> str:
    return "inf" if x == INF else str(int(x))


class Tag(str, enum.Enum):
    F0 = "F0"  # branch field at infinity, k((u))((t))
    F1 = "F1"  # field at the point infinity, Frac k[[u, t]]
    F2 = "F2"  # field along the affine line, Frac k[x][[t]]
    V = "V"  # the ring k[[u, t]]
    W = "W"  # the ring k[x][[t]]
    FRAT = "Frat"  # elements of the global function field k(x, t)

    def __str__(self):
        return self.value


_ABOVE = {
    Tag.V: (Tag.V, Tag.F1, Tag.F0),
    Tag.W: (Tag.W, Tag.F2, Tag.F0),
    Tag.FRAT: (Tag.FRAT, Tag.F1, Tag.F2, Tag.F0),
    Tag.F1: (Tag.F1, Tag.F0),
    Tag.F2: (Tag.F2, Tag.F0),
    Tag.F0: (Tag.F0,),
}


def _build_join():
    table = {}
    for a in Tag:
        for b in Tag:
            common = [c for c in _ABOVE[a] if c in _ABOVE[b]]
            # the least common upper bound lies below every other one
            least = [c for c in common if all(o in _ABOVE[c] for o in common)]
            table[a, b] = least[0]
    return table


_JOIN = _build_join()


def tag_join(a: Tag, b: Tag) -> Tag:
    return _JOIN[a, b]


def tag_leq(a: Tag, b: Tag) -> bool:
    """Whether elements tagged ``a`` may be regarded as tagged ``b``."""
    return b in _ABOVE[a]


class Laurent:
    """A truncated Laurent series in ``u`` over a ground field."""

    __slots__ = ("field", "terms", "uprec")

    def __init__(self, field: Field, terms: Mapping[int, object] | None = None, uprec=INF):
        uprec = _prec(uprec)
        clean = {}
        if terms:
            for e, c in terms.items():
                e = int(e)
                if e >= uprec:
                    continue
                c = field(c) if not field.p else int(c) % field.p
                if c != 0:
                    clean[e] = c
        self.field = field
        self.terms = clean
        self.uprec = uprec

    @classmethod
    def _raw(cls, field, terms, uprec):
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        obj.uprec = uprec
        return obj

    @classmethod
    def zero(cls, field, uprec=INF):
        return cls._raw(field, {}, _prec(uprec))

    @classmethod
    def const(cls, field, c, uprec=INF):
        return cls(field, {0: c}, uprec)

    @classmethod
    def monomial(cls, field, e, c=1, uprec=INF):
        return cls(field, {e: c}, uprec)

    # inspection -----------------------------------------------------------
    @property
    def emin(self):
        return min(self.terms) if self.terms else None

    @property
    def emax(self):
        return max(self.terms) if self.terms else None

    def _veff(self):
        # least exponent that may be nonzero
        return min(self.terms) if self.terms else self.uprec

    def is_zero(self) -> bool:
        """True when no known term is nonzero (zero at the stated precision)."""
        return not self.terms

    def is_exact(self) -> bool:
        return self.uprec == INF

    def is_exact_zero(self) -> bool:
        return not self.terms and self.uprec == INF

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __getitem__(self, e):
        if e >= self.uprec:
            raise PrecisionError(f"u^{e} lies beyond the horizon u^{self.uprec}")
        return self.terms.get(e, self.field.zero)

    # arithmetic ------------------------------------------------------------
    def _combine(self, other, sign):
        F = self.field
        U = min(self.uprec, other.uprec)
        acc = {e: c for e, c in self.terms.items() if e < U}
        for e, c in other.terms.items():
            if e < U:
                acc[e] = acc.get(e, 0) + (c if sign > 0 else -c)
        p = F.p
        out = {}
        for e, c in acc.items():
            if p:
                c %= p
            if c != 0:
                out[e] = c
        return Laurent._raw(F, out, U)

    def __add__(self, other):
        if not isinstance(other, Laurent):
            other = Laurent.const(self.field, other)
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Laurent):
            other = Laurent.const(self.field, other)
        return self._combine(other, -1)

    def __rsub__(self, other):
        return Laurent.const(self.field, other) - self

    def __neg__(self):
        F = self.field
        if F.p:
            return Laurent._raw(F, {e: (-c) % F.p for e, c in self.terms.items()}, self.uprec)
        return Laurent._raw(F, {e: -c for e, c in self.terms.items()}, self.uprec)

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            return self.scale(other)
        U = min(self.uprec + other._veff(), other.uprec + self._veff())
        U = _prec(U)
        acc = {}
        bt = list(other.terms.items())
        for ea, ca in self.terms.items():
            for eb, cb in bt:
                e = ea + eb
                if e < U:
                    acc[e] = acc.get(e, 0) + ca * cb
        return Laurent._raw(self.field, _clean(acc, self.field.p), U)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        F = self.field
        c = F(c) if not isinstance(c, int) or not F.p else c % F.p
        if c == 0:
            return Laurent._raw(F, {}, self.uprec)
        if F.p:
            return Laurent._raw(F, {e: v * c % F.p for e, v in self.terms.items()}, self.uprec)
        return Laurent._raw(F, {e: v * c for e, v in self.terms.items()}, self.uprec)

    def shift(self, k: int):
        """Multiply by ``u^k`` (so ``shift(-1)`` multiplies by ``x``)."""
        return Laurent._raw(self.field, {e + k: c for e, c in self.terms.items()}, self.uprec + k if self.uprec != INF else INF)

    def truncate(self, uprec):
        uprec = _prec(uprec)
        if uprec >= self.uprec:
            return self
        return Laurent._raw(self.field, {e: c for e, c in self.terms.items() if e < uprec}, uprec)

    def inverse(self, cap=None):
        """Inverse in ``k((u))`` known below ``u^min(uprec - 2*emin, cap)``.

        Exact monomials invert exactly; an exact coefficient with two or
        more terms needs ``cap``.
        """
        F = self.field
        if not self.terms:
            raise PrecisionError("residue not invertible: no known nonzero term")
        m = min(self.terms)
        c0inv = F.inv(self.terms[m])
        if self.uprec == INF and len(self.terms) == 1:
            return Laurent._raw(F, {-m: c0inv}, INF)
        R = self.uprec - 2 * m if self.uprec != INF else INF
        if cap is not None:
            R = min(R, cap)
        if R == INF:
            raise PrecisionError("inverting an exact non-monomial coefficient needs a u-horizon")
        R = int(R)
        length = R + m  # number of terms of the normalized inverse
        if length <= 0:
            return Laurent._raw(F, {}, R)
        g = [0] * length
        for e, c in self.terms.items():
            k = e - m
            if 0 < k < length:
                g[k] = c * c0inv
        h = [0] * length
        h[0] = F.one
        p = F.p
        nz = [k for k in range(1, length) if g[k] != 0]
        for k in range(1, length):
            s = 0
            for j in nz:
                if j > k:
                    break
                s += g[j] * h[k - j]
            h[k] = (-s) % p if p else -s
        out = {}
        for k, c in enumerate(h):
            if c != 0:
                v = c * c0inv
                if p:
                    v %= p
                out[k - m] = v
        return Laurent._raw(F, out, R)

    def split(self):
        """Partition as (polynomial part in x, part in u*k[[u]]); constants go left."""
        if self.uprec <= 0:
            raise PrecisionError(f"polynomial part unknown: horizon u^{self.uprec} <= u^0")
        w = {e: c for e, c in self.terms.items() if e <= 0}
        v = {e: c for e, c in self.terms.items() if e > 0}
        return Laurent._raw(self.field, w, INF), Laurent._raw(self.field, v, self.uprec)

    # comparison --------------------------------------------------------------
    def congruent(self, other) -> bool:
        U = min(self.uprec, other.uprec)
        a = {e: c for e, c in self.terms.items() if e < U}
        b = {e: c for e, c in other.terms.items() if e < U}
        return a == b

    def __eq__(self, other):
        if not isinstance(other, Laurent):
            if other == 0:
                return self.is_exact_zero()
            return NotImplemented
        return self.uprec == other.uprec and self.terms == other.terms

    def __hash__(self):
        return hash((tuple(sorted(self.terms.items())), self.uprec))

    def to_text(self) -> str:
        body = " ".join(f"{e}:{self.field.fmt(c)}" for e, c in sorted(self.terms.items()))
        return "{ " + (body + " " if body else "") + "| " + fmt_prec(self.uprec) + " }"

    def __repr__(self):
        return self.to_text()


def _clean(acc, p):
    out = {}
    if p:
        for e, c in acc.items():
            c %= p
            if c:
                out[e] = c
    else:
        for e, c in acc.items():
            if c != 0:
                out[e] = c
    return out


def _sum_products(field, pairs):
    """Sum of Laurent products over ``pairs`` with the precision rule applied."""
    U = INF
    acc = {}
    for a, b in pairs:
        at, bt = a.terms, b.terms
        Ua = a.uprec + (min(bt) if bt else b.uprec)
        Ub = b.uprec + (min(at) if at else a.uprec)
        Up = Ua if Ua < Ub else Ub
        if Up < U:
            U = Up
        if not at or not bt:
            continue
        bl = list(bt.items())
        for ea, ca in at.items():
            for eb, cb in bl:
                e = ea + eb
                if e < U:
                    acc[e] = acc.get(e, 0) + ca * cb
    U = _prec(U)
    if U != INF:
        acc = {e: c for e, c in acc.items() if e < U}
    return Laurent._raw(field, _clean(acc, field.p), U)


class PatchSeries:
    """A t-adic series with Laurent coefficients, tagged by its home ring.

    ``coeffs[k]`` is the coefficient of ``t^(tord + k)``; coefficients of
    ``t^n`` with ``n < tord`` are exactly zero, those with ``n >= tprec``
    are unknown.
    """

    __slots__ = ("field", "tag", "tord", "coeffs", "tprec")

    def __init__(self, field: Field, tag, tord: int, coeffs: Iterable[Laurent], tprec: int):
        coeffs = list(coeffs)
        tag = Tag(tag)
        tord = int(tord)
        tprec = int(tprec)
        if len(coeffs) != tprec - tord:
            raise ValueError(f"expected {tprec - tord} coefficients, got {len(coeffs)}")
        k = 0
        while k < len(coeffs) and coeffs[k].is_exact_zero():
            k += 1
        self.field = field
        self.tag = tag
        self.tord = tord + k
        self.coeffs = tuple(coeffs[k:])
        self.tprec = tprec

    @classmethod
    def _raw(cls, field, tag, tord, coeffs, tprec):
        k = 0
        while k < len(coeffs) and not coeffs[k].terms and coeffs[k].uprec == INF:
            k += 1
        obj = cls.__new__(cls)
        obj.field = field
        obj.tag = tag
        obj.tord = tord + k
        obj.coeffs = tuple(coeffs[k:])
        obj.tprec = tprec
        return obj

    # constructors --------------------------------------------------------------
    @classmethod
    def zero(cls, field, tag=Tag.F0, tprec=1):
        return cls._raw(field, Tag(tag), tprec, (), tprec)

    @classmethod
    def const(cls, field, c, tag=Tag.F0, tprec=1, uprec=INF):
        return cls.from_terms(field, {(0, 0): c}, tag, tprec, uprec)

    @classmethod
    def from_terms(cls, field, terms: Mapping[tuple, object], tag=Tag.F0, tprec=1, uprec=INF):
        """Build from ``{(t_degree, u_exponent): coefficient}``."""
        tag = Tag(tag)
        degs = [n for (n, _e) in terms]
        tord = min(min(degs), 0) if degs else 0
        tord = min(tord, tprec)
        buckets = [dict() for _ in range(tprec - tord)]
        for (n, e), c in terms.items():
            if tord <= n < tprec:
                buckets[n - tord][e] = c
        return cls(field, tag, tord, [Laurent(field, b, uprec) for b in buckets], tprec)

    @classmethod
    def from_laurents(cls, field, coeffs, tag=Tag.F0, tord=0, tprec=None):
        coeffs = list(coeffs)
        tprec = tord + len(coeffs) if tprec is None else tprec
        coeffs = coeffs[: tprec - tord]
        coeffs += [Laurent.zero(field)] * (tprec - tord - len(coeffs))
        return cls(field, tag, tord, coeffs, tprec)

    # inspection ----------------------------------------------------------------
    def coeff(self, n: int) -> Laurent:
        if n >= self.tprec:
            raise PrecisionError(f"t^{n} lies beyond the horizon t^{self.tprec}")
        if n < self.tord:
            return Laurent.zero(self.field)
        return self.coeffs[n - self.tord]

    def ord_t(self):
        """Least t-degree with a known nonzero coefficient; INF for zero at precision."""
        for k, c in enumerate(self.coeffs):
            if c.terms:
                return self.tord + k
        return INF

    def is_zero(self) -> bool:
        return self.ord_t() == INF

    def min_uprec(self):
        return min((c.uprec for c in self.coeffs), default=INF)

    def is_exact_coefficients(self) -> bool:
        return all(c.uprec == INF for c in self.coeffs)

    def is_valid(self) -> bool:
        """Check the ring invariants attached to the V and W tags."""
        if self.tag is Tag.V:
            return self.tord >= 0 and all(not c.terms or min(c.terms) >= 0 for c in self.coeffs)
        if self.tag is Tag.W:
            return self.tord >= 0 and all(
                c.uprec == INF and (not c.terms or max(c.terms) <= 0) for c in self.coeffs
            )
        return True

    # tags ----------------------------------------------------------------------
    def promote(self, tag) -> "PatchSeries":
        tag = Tag(tag)
        if tag == self.tag:
            return self
        if not tag_leq(self.tag, tag):
            raise IncompatibleTags(f"cannot regard a {self.tag} element as {tag}")
        return PatchSeries._raw(self.field, tag, self.tord, self.coeffs, self.tprec)

    def retag(self, tag) -> "PatchSeries":
        """Assert membership in a smaller ring; checks the V/W invariants."""
        out = PatchSeries._raw(self.field, Tag(tag), self.tord, self.coeffs, self.tprec)
        if not out.is_valid():
            raise IncompatibleTags(f"element does not satisfy the {tag} invariants")
        return out

    # arithmetic ----------------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, PatchSeries):
            if other.field != self.field:
                raise IncompatibleTags("series over different ground fields")
            return other
        N = self.tprec
        if isinstance(other, Laurent):
            tag = self.tag if other.uprec == INF and _is_const(other) else Tag.F0
            coeff = other
        else:
            # ground-field scalars lie in every ring
            tag = self.tag
            c = self.field(other)
            coeff = Laurent._raw(self.field, {0: c} if c != 0 else {}, INF)
        if N <= 0:
            return PatchSeries.zero(self.field, tag, N)
        zero = Laurent.zero(self.field)
        return PatchSeries._raw(self.field, tag, 0, (coeff,) + (zero,) * (N - 1), N)

    def _add(self, other, sign):
        other = self._lift(other)
        tag = _JOIN[self.tag, other.tag]
        tprec = min(self.tprec, other.tprec)
        tord = min(self.tord, other.tord, tprec)
        F = self.field
        out = []
        for n in range(tord, tprec):
            a = self.coeff(n) if n >= self.tord else None
            b = other.coeff(n) if n >= other.tord else None
            if b is None:
                out.append(a if a is not None else Laurent.zero(F))
            elif a is None:
                out.append(b if sign > 0 else -b)
            else:
                out.append(a._combine(b, sign))
        return PatchSeries._raw(F, tag, tord, out, tprec)

    def __add__(self, other):
        return self._add(other, 1)

    def __radd__(self, other):
        return self._add(other, 1)

    def __sub__(self, other):
        return self._add(other, -1)

    def __rsub__(self, other):
        return (-self)._add(other, 1)

    def __neg__(self):
        return PatchSeries._raw(self.field, self.tag, self.tord, tuple(-c for c in self.coeffs), self.tprec)

    def __mul__(self, other):
        if not isinstance(other, PatchSeries):
            if isinstance(other, Laurent):
                other = self._lift(other)
            else:
                return self.scale(other)
        if other.field != self.field:
            raise IncompatibleTags("series over different ground fields")
        tag = _JOIN[self.tag, other.tag]
        a, b = self, other
        tord = a.tord + b.tord
        tprec = min(a.tprec + b.tord, b.tprec + a.tord)
        ac, bc = a.coeffs, b.coeffs
        at, bt = a.tord, b.tord
        F = self.field
        out = []
        for n in range(tord, tprec):
            pairs = []
            for i in range(at, n - bt + 1):
                pairs.append((ac[i - at], bc[n - i - bt]))
            out.append(_sum_products(F, pairs))
        return PatchSeries._raw(F, tag, tord, out, tprec)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = self.field(c)
        return PatchSeries._raw(self.field, self.tag, self.tord, tuple(x.scale(c) for x in self.coeffs), self.tprec)

    def shift_t(self, k: int):
        """Multiply by ``t^k``."""
        tag = self.tag
        if k < 0 and tag in (Tag.V, Tag.W) and self.tord + k < 0:
            tag = Tag.F1 if tag is Tag.V else Tag.F2
        return PatchSeries._raw(self.field, tag, self.tord + k, self.coeffs, self.tprec + k)

    def shift_u(self, k: int):
        """Multiply every coefficient by ``u^k``."""
        tag = self.tag
        if tag is Tag.V and k < 0 or tag is Tag.W and k > 0:
            tag = Tag.F1 if tag is Tag.V else Tag.F2
        return PatchSeries._raw(self.field, tag, self.tord, tuple(c.shift(k) for c in self.coeffs), self.tprec)

    def truncate(self, tprec=None, uprec=None):
        tprec = self.tprec if tprec is None else min(int(tprec), self.tprec)
        coeffs = self.coeffs[: max(0, tprec - self.tord)]
        if uprec is not None:
            coeffs = tuple(c.truncate(uprec) for c in coeffs)
        tord = min(self.tord, tprec)
        return PatchSeries._raw(self.field, self.tag, tord, tuple(coeffs), tprec)

    def invert(self, uprec=None):
        """Multiplicative inverse, known mod ``t^(tprec - 2*ord)``.

        ``uprec`` is the u-horizon wanted for the result; exact inputs are
        reworked at a larger horizon until it is met.
        """
        k = self.ord_t()
        if k == INF:
            raise ZeroDivisionError("series is zero at its stated precision")
        if uprec is None:
            finite = [c.uprec for c in self.coeffs if c.uprec != INF]
            uprec = max(finite) if finite else DEFAULT_UPREC
        uprec = int(uprec)
        cap = uprec
        best = None
        for _ in range(8):
            res = self._invert_at(k, cap)
            lo = res.min_uprec()
            if lo >= uprec:
                best = res
                break
            if best is not None and lo <= best.min_uprec():
                break
            best = res
            cap += uprec - lo
        res = best.truncate(uprec=uprec) if best.min_uprec() != INF else best
        return PatchSeries._raw(self.field, self._inverse_tag(k), res.tord, res.coeffs, res.tprec)

    def _inverse_tag(self, k):
        t = self.tag
        if t is Tag.V:
            c0 = self.coeff(k)
            return Tag.V if k == 0 and min(c0.terms) == 0 else Tag.F1
        if t is Tag.W:
            c0 = self.coeff(k)
            return Tag.W if k == 0 and list(c0.terms) == [0] and self.is_exact_coefficients() else Tag.F2
        return t

    def _invert_at(self, k, cap):
        F = self.field
        rel = self.tprec - k
        alpha = [self.coeff(k + i) for i in range(rel)]
        b0 = alpha[0].inverse(cap)
        nb0 = -b0
        bs = [b0]
        for n in range(1, rel):
            s = _sum_products(F, [(alpha[i], bs[n - i]) for i in range(1, n + 1)])
            bs.append(_sum_products(F, [(nb0, s)]))
        return PatchSeries._raw(F, self.tag, -k, bs, self.tprec - 2 * k)

    def __truediv__(self, other):
        if isinstance(other, PatchSeries):
            return self * other.invert()
        return self.scale(self.field.inv(self.field(other)))

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        out = self._lift(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # comparison ----------------------------------------------------------------
    def congruent(self, other) -> bool:
        """Equality modulo the shared precision, ignoring tags."""
        if not isinstance(other, PatchSeries):
            other = self._lift(other)
        N = min(self.tprec, other.tprec)
        for n in range(min(self.tord, other.tord), N):
            if not self.coeff(n).congruent(other.coeff(n)):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, PatchSeries):
            return NotImplemented
        return (self.tag == other.tag and self.tprec == other.tprec and self.tord == other.tord
                and self.coeffs == other.coeffs and self.field == other.field)

    def __hash__(self):
        return hash((self.tag, self.tord, self.tprec, self.coeffs))

    def to_text(self) -> str:
        body = " ; ".join(c.to_text() for c in self.coeffs)
        return f"series({self.tag}, {self.tord}, {self.tprec}) [ {body} ]"

    def __repr__(self):
        return self.to_text()


def _is_const(c: Laurent) -> bool:
    return not c.terms or list(c.terms) == [0]


def series_arith(a: PatchSeries, b: PatchSeries, op: str, target=None) -> PatchSeries:
    """Ring operation ``op`` in {"add", "sub", "mul"}; ``target`` pins the result tag."""
    if op == "add":
        out = a + b
    elif op == "sub":
        out = a - b
    elif op == "mul":
        out = a * b
    else:
        raise ValueError(f"unknown operation {op!r}")
    if target is not None:
        target = Tag(target)
        if not tag_leq(out.tag, target):
            raise IncompatibleTags(f"{a.tag} {op} {b.tag} lands in {out.tag}, not in {target}")
        out = out.promote(target)
    return out


def ord_t(a) -> int | float:
    """t-adic valuation of a series, rational function or scalar."""
    if isinstance(a, PatchSeries):
        return a.ord_t()
    if hasattr(a, "ord_t"):
        return a.ord_t()
    if isinstance(a, Laurent):
        return INF if a.is_zero() else 0
    return INF if a == 0 else 0


def gauss_val(f: Mapping[tuple, object], s) -> Fraction | float:
    """Additive Gauss norm: ``min over monomials of ord_t(coeff) + s*|I|``.

    For ``r = |t|^s`` this is ``-log_{|t|}`` of the Gauss norm ``|f|_r``, so
    ``|f|_r <= 1`` exactly when the value is ``>= 0``.  ``f`` maps exponent
    tuples to coefficients (series, rational functions or scalars).
    """
    s = Fraction(s)
    best = INF
    for expo, c in f.items():
        v = ord_t(c)
        if v == INF:
            continue
        val = v + s * sum(expo)
        if val < best:
            best = val
    return best if best == INF else Fraction(best)
