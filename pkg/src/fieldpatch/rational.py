"""Elements of the global function field F = k(x, t) and their expansions.

Bivariate polynomials are stored as ``{(i, j): c}`` for ``c * x^i t^j``.
GCDs are delegated to sympy's sparse polynomial rings; everything else is
done on the dictionaries directly.
"""

from __future__ import annotations

from functools import lru_cache

from gmpy2 import mpq
from sympy.polys.domains import GF as _SymGF
from sympy.polys.domains import QQ as _SymQQ
from sympy.polys.rings import ring as _sym_ring

from .errors import InadmissibleExpansion, PrecisionError
from .scalars import Field
from .series import DEFAULT_UPREC, INF, Laurent, PatchSeries, Tag


class Poly2:
    """A polynomial in x and t over a ground field."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms=None):
        self.field = field
        out = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError("Poly2 exponents must be nonnegative")
                c = field(c)
                if c != 0:
                    out[int(i), int(j)] = c
        self.terms = out

    @classmethod
    def _raw(cls, field, terms):
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, field, c):
        return cls(field, {(0, 0): c})

    @classmethod
    def x(cls, field):
        return cls(field, {(1, 0): 1})

    @classmethod
    def t(cls, field):
        return cls(field, {(0, 1): 1})

    def is_zero(self):
        return not self.terms

    def degx(self):
        return max((i for i, _ in self.terms), default=-1)

    def degt(self):
        return max((j for _, j in self.terms), default=-1)

    def t_content(self):
        """Largest power of t dividing the polynomial."""
        return min((j for _, j in self.terms), default=0)

    def shift_t(self, k):
        return Poly2._raw(self.field, {(i, j + k): c for (i, j), c in self.terms.items()})

    def _combine(self, other, sign):
        p = self.field.p
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, 0) + (c if sign > 0 else -c)
        return Poly2._raw(self.field, _clean(acc, p))

    def __add__(self, other):
        return self._combine(_as_poly(self.field, other), 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(_as_poly(self.field, other), -1)

    def __rsub__(self, other):
        return _as_poly(self.field, other)._combine(self, -1)

    def __neg__(self):
        return Poly2._raw(self.field, _clean({m: -c for m, c in self.terms.items()}, self.field.p))

    def __mul__(self, other):
        other = _as_poly(self.field, other)
        acc = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                m = (i1 + i2, j1 + j2)
                acc[m] = acc.get(m, 0) + c1 * c2
        return Poly2._raw(self.field, _clean(acc, self.field.p))

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Poly2.const(self.field, 1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c):
        c = self.field(c)
        return Poly2._raw(self.field, _clean({m: v * c for m, v in self.terms.items()}, self.field.p))

    def __eq__(self, other):
        if isinstance(other, Poly2):
            return self.field == other.field and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def to_series(self, tprec, tag=Tag.F0) -> PatchSeries:
        """The polynomial as an exact series (x^i is u^-i)."""
        F = self.field
        buckets = [dict() for _ in range(max(tprec, 0))]
        for (i, j), c in self.terms.items():
            if j < tprec:
                buckets[j][-i] = c
        return PatchSeries(F, tag, 0, [Laurent._raw(F, b, INF) for b in buckets], max(tprec, 0))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        fmt = self.field.fmt
        parts = [f"x^{i} t^{j} * {fmt(c)}" for (i, j), c in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))]
        return " + ".join(parts)

    def __repr__(self):
        return self.to_text()


def _clean(acc, p):
    if p:
        return {m: c % p for m, c in acc.items() if c % p}
    return {m: c for m, c in acc.items() if c != 0}


def _as_poly(field, obj):
    if isinstance(obj, Poly2):
        return obj
    return Poly2.const(field, obj)


@lru_cache(maxsize=None)
def _sym(field: Field):
    dom = _SymQQ if not field.p else _SymGF(field.p)
    R, _x, _t = _sym_ring("x,t", dom)
    return R


def _to_sym(poly: Poly2):
    R = _sym(poly.field)
    dom = R.domain
    if poly.field.p:
        return R.from_dict({m: dom(int(c)) for m, c in poly.terms.items()})
    return R.from_dict({m: dom.convert(c) for m, c in poly.terms.items()})


def _from_sym(field: Field, sp) -> Poly2:
    if field.p:
        return Poly2._raw(field, {m: int(c) % field.p for m, c in sp.items() if int(c) % field.p})
    return Poly2._raw(field, {m: mpq(int(c.numerator), int(c.denominator)) for m, c in sp.items() if c != 0})


def _norm_monomial(den: Poly2):
    # lowest t-degree, then lowest x-degree: makes 1 - t*x and x - t have unit leaders
    return min(den.terms, key=lambda m: (m[1], m[0]))


class RationalF:
    """An element of k(x, t) in canonical (reduced, normalized) form.

    The denominator is scaled so its coefficient at the monomial of least
    t-degree (then least x-degree) equals 1.
    """

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, num: Poly2, den: Poly2 | None = None, *, reduce: bool = True):
        field = num.field
        if den is None:
            den = Poly2.const(field, 1)
        if den.is_zero():
            raise ZeroDivisionError("denominator identically zero")
        if num.is_zero():
            num, den = num, Poly2.const(field, 1)
        elif reduce and den.terms.keys() != {(0, 0)}:
            _g, a, b = _to_sym(num).cofactors(_to_sym(den))
            num, den = _from_sym(field, a), _from_sym(field, b)
        lead = den.terms[_norm_monomial(den)]
        if lead != 1:
            s = field.inv(lead)
            num, den = num.scale(s), den.scale(s)
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    # constructors ----------------------------------------------------------
    @classmethod
    def const(cls, field, c):
        return cls(Poly2.const(field, c))

    @classmethod
    def x(cls, field):
        return cls(Poly2.x(field))

    @classmethod
    def t(cls, field):
        return cls(Poly2.t(field))

    def _lift(self, other):
        if isinstance(other, RationalF):
            return other
        if isinstance(other, Poly2):
            return RationalF(other)
        return RationalF.const(self.field, other)

    # inspection --------------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.terms.keys() == {(0, 0)}

    def ord_t(self):
        if self.num.is_zero():
            return INF
        return self.num.t_content() - self.den.t_content()

    def degx(self):
        return max(self.num.degx(), self.den.degx())

    def degt(self):
        return max(self.num.degt(), self.den.degt())

    # arithmetic ----------------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if self.den == o.den:
            return RationalF(self.num + o.num, self.den)
        return RationalF(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalF(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RationalF(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in k(x, t)")
        return RationalF(self.den, self.num, reduce=False)

    def __truediv__(self, other):
        return self * self._lift(other).inv()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        return RationalF(self.num ** n, self.den ** n, reduce=False)

    def __eq__(self, other):
        if not isinstance(other, RationalF):
            try:
                other = self._lift(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.field == other.field and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def expand(self, target=Tag.F0, tprec=8, uprec=None) -> PatchSeries:
        return expand_rational(self, target, tprec, uprec)

    def to_text(self) -> str:
        return f"rat( {self.num.to_text()} ; {self.den.to_text()} )"

    def __repr__(self):
        return self.to_text()


def v_admissible(f: RationalF) -> bool:
    """Whether f lies in k[[u, t]]: no t-pole after rewriting in (u, t), no u-pole."""
    q = f.den
    dq, dp = q.degx(), f.num.degx()
    return q.terms.get((dq, 0), 0) != 0 and (f.is_zero() or dq >= dp)


def w_admissible(f: RationalF) -> bool:
    """Whether f lies in k[x][[t]]: denominator is a nonzero constant mod t."""
    q = f.den
    return f.ord_t() >= 0 and all(j > 0 for (i, j) in q.terms if (i, j) != (0, 0)) and (0, 0) in q.terms


def expand_rational(f: RationalF, target, tprec: int, uprec=None) -> PatchSeries:
    """Expansion of f in the patch ring or field ``target`` mod ``t^tprec``.

    Coefficients that are Laurent polynomials stay exact; the others are
    u-expansions known below ``u^uprec``.
    """
    return _expand_cached(f, Tag(target), int(tprec), None if uprec is None else int(uprec))


@lru_cache(maxsize=4096)
def _expand_cached(f, target, tprec, uprec):
    F = f.field
    if target is Tag.W and not w_admissible(f):
        raise InadmissibleExpansion(f"{f.to_text()} is not in k[x][[t]]")
    if target is Tag.V and not v_admissible(f):
        raise InadmissibleExpansion(f"{f.to_text()} is not in k[[u, t]]")
    if f.is_zero():
        return PatchSeries.zero(F, target, tprec)
    a, b = f.num.t_content(), f.den.t_content()
    s = a - b
    rel = tprec - s
    if rel <= 0:
        return PatchSeries.zero(F, target, tprec)
    P = f.num.shift_t(-a).to_series(rel)
    Q = f.den.shift_t(-b).to_series(rel)
    M = DEFAULT_UPREC if uprec is None else uprec
    cap = M
    res = None
    for _ in range(8):
        res = P * Q.invert(uprec=cap)
        lo = res.min_uprec()
        if lo >= M:
            break
        cap += M - lo
    else:
        raise PrecisionError("could not reach the requested u-horizon")
    coeffs = [c.truncate(M) if c.uprec != INF else c for c in res.coeffs]
    out = PatchSeries._raw(F, Tag.F0, res.tord + s, tuple(coeffs), tprec)
    if target in (Tag.V, Tag.W):
        return out.retag(target)
    return PatchSeries._raw(F, target, out.tord, out.coeffs, out.tprec)
