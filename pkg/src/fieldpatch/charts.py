"""Group-law charts in standard position.

A chart of dimension ``d`` is a multiplication law ``f(x, y)`` on
``d`` coordinates with ``f(x, 0) = x = f(0, x)``.  Each chart carries

* symbolic coordinates (rational maps in ``2d`` variables over k(x, t)),
  used for the standard-position check and the Gauss-norm threshold, and
* an evaluator that computes ``f`` on concrete series.  Matrix groups are
  evaluated through their group law rather than the symbolic expansion.

For SO(q) with more than three variables the symbolic coordinates are a
Taylor polynomial truncated at the working degree; ``exact`` records this.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import ceil

from . import matrices as mx
from .errors import (
    CharacteristicTwo,
    GuardFailure,
    NonMonicModulus,
    NoRadiusFound,
    SingularForm,
    StandardPositionError,
    ThresholdViolation,
)
from .mpoly import MPoly, RatMap, rational_gauss_bound
from .rational import RationalF, expand_rational
from .scalars import Field
from .series import DEFAULT_UPREC, INF, PatchSeries, Tag

WORKING_DEGREE = 3


@dataclass(frozen=True)
class Threshold:
    s: Fraction
    N0: int


@dataclass(frozen=True)
class PositionReport:
    ok: bool
    violation: str | None = None
    coord: int | None = None

    def __str__(self):
        if self.ok:
            return "OK"
        return f"violation: {self.violation} (coordinate {self.coord})"


@dataclass(frozen=True, eq=False)
class Chart:
    kind: str  # "gl", "so", "weil" or "raw"
    d: int
    field: Field
    coords: tuple  # RatMap per coordinate, variables x_1..x_d, y_1..y_d
    exact: bool = True
    degree: int | None = None  # truncation degree when not exact
    n: int | None = None
    Q: tuple | None = None
    base: "Chart | None" = None
    modulus: tuple | None = None  # monic, low to high, RationalF entries
    _cache: dict = dc_field(default_factory=dict, compare=False, repr=False)

    # evaluation --------------------------------------------------------------
    def multiply(self, xs, ys, tprec=None, uprec=None):
        """Chart coordinates of the product of the points with coordinates xs, ys."""
        xs, ys = list(xs), list(ys)
        tprec = _tprec(xs + ys) if tprec is None else tprec
        if self.kind == "gl":
            X = _square(xs, self.n)
            Y = _square(ys, self.n)
            Z = mx.add(mx.add(X, Y), mx.mul(X, Y))
            return [z for row in Z for z in row]
        if self.kind == "so":
            return _so_compose(self, xs, ys, tprec, uprec)
        if self.kind == "weil":
            e = len(self.modulus) - 1
            mod = [_const_series(self.field, c, tprec, uprec) for c in self.modulus[:-1]]
            ax = [AlgElt([xs[i * e + j] for j in range(e)], mod) for i in range(self.base.d)]
            ay = [AlgElt([ys[i * e + j] for j in range(e)], mod) for i in range(self.base.d)]
            out = self.base.multiply(ax, ay, tprec, uprec)
            return [c for z in out for c in z.comps]
        vals = xs + ys
        return [rm.evaluate(vals, tprec, uprec) for rm in self.coords]

    def element(self, xs, tprec=None, uprec=None):
        """Matrix realization of a point, for matrix charts (GL_n and SO(q))."""
        tprec = _tprec(xs) if tprec is None else tprec
        if self.kind == "gl":
            X = _square(list(xs), self.n)
            return mx.add(mx.identity(self.field, self.n, tprec), X)
        if self.kind == "so":
            X = _so_matrix(self, list(xs), tprec, uprec)
            I = mx.identity(self.field, self.n, tprec)
            return mx.mul(mx.add(I, X), mx.inverse(mx.sub(I, X), uprec))
        raise TypeError(f"{self.kind} chart has no matrix realization")

    def coordinates_of(self, g, uprec=None):
        """Inverse of :meth:`element`."""
        n = self.n
        tprec = _tprec([a for r in g for a in r])
        I = mx.identity(self.field, n, tprec)
        if self.kind == "gl":
            return [a for row in mx.sub(g, I) for a in row]
        if self.kind == "so":
            X = mx.mul(mx.sub(g, I), mx.inverse(mx.add(g, I), uprec))
            S = mx.mul(_series_matrix(self.field, self.Q, tprec, uprec), X)
            return [S[i][j] for i, j in _pairs(n)]
        raise TypeError(f"{self.kind} chart has no matrix realization")

    def threshold(self, scap: int = 32) -> Threshold:
        key = ("threshold", scap)
        if key not in self._cache:
            self._cache[key] = chart_epsilon(self, scap)
        return self._cache[key]

    def describe(self) -> str:
        from .textio import format_chart

        return format_chart(self)


def _tprec(vals):
    ts = []
    for v in vals:
        if isinstance(v, PatchSeries):
            ts.append(v.tprec)
        elif isinstance(v, AlgElt):
            ts.extend(c.tprec for c in v.comps)
    return min(ts) if ts else 1


def _square(flat, n):
    return [flat[i * n:(i + 1) * n] for i in range(n)]


def _pairs(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


@lru_cache(maxsize=None)
def _const_series_cached(f, tprec, uprec):
    return expand_rational(f, Tag.FRAT, tprec, uprec)


def _const_series(field, c, tprec, uprec):
    if isinstance(c, RationalF):
        return _const_series_cached(c, tprec, DEFAULT_UPREC if uprec is None else uprec)
    return PatchSeries.const(field, c, Tag.FRAT, tprec)


def _series_matrix(field, Q, tprec, uprec):
    return [[_const_series(field, c, tprec, uprec) for c in row] for row in Q]


def _cmul(elem, c, tprec, uprec):
    """Multiply an element by a coefficient of k(x, t); constants just scale."""
    if isinstance(c, RationalF):
        if c.is_zero():
            return None
        if c.is_polynomial() and c.num.terms.keys() == {(0, 0)}:
            return _scale(elem, c.num.terms[0, 0])
        return elem * _const_series(c.field, c, tprec, uprec)
    if c == 0:
        return None
    return _scale(elem, c)


def _scale(elem, c):
    return elem.scale(c)


def _lincomb(pairs, tprec, uprec):
    acc = None
    for elem, c in pairs:
        term = _cmul(elem, c, tprec, uprec)
        if term is None:
            continue
        acc = term if acc is None else acc + term
    return acc


# ----------------------------------------------------------------------------
# algebra elements for Weil restriction


class AlgElt:
    """An element of ``F0[s]/(m(s))`` for a monic ``m`` with F-coefficients."""

    __slots__ = ("comps", "mod")

    def __init__(self, comps, mod):
        self.comps = list(comps)
        self.mod = mod  # expansions of m_0, ..., m_{e-1}

    @property
    def e(self):
        return len(self.comps)

    def _wrap(self, comps):
        return AlgElt(comps, self.mod)

    def _const(self, c):
        z = [self.comps[0] - self.comps[0] for _ in range(self.e)]
        z[0] = z[0] + c
        return self._wrap(z)

    def __add__(self, other):
        if not isinstance(other, AlgElt):
            other = self._const(other)
        return self._wrap([a + b for a, b in zip(self.comps, other.comps)])

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, AlgElt):
            other = self._const(other)
        return self._wrap([a - b for a, b in zip(self.comps, other.comps)])

    def __rsub__(self, other):
        return self._const(other) - self

    def __neg__(self):
        return self._wrap([-a for a in self.comps])

    def scale(self, c):
        return self._wrap([a.scale(c) for a in self.comps])

    def __mul__(self, other):
        if isinstance(other, PatchSeries):
            return self._wrap([a * other for a in self.comps])
        if not isinstance(other, AlgElt):
            return self.scale(other)
        e = self.e
        prod = [None] * (2 * e - 1)
        for i, a in enumerate(self.comps):
            for j, b in enumerate(other.comps):
                term = a * b
                prod[i + j] = term if prod[i + j] is None else prod[i + j] + term
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k]
            for i in range(e):
                prod[k - e + i] = prod[k - e + i] - c * self.mod[i]
        return self._wrap(prod[:e])

    def mult_matrix(self):
        e = self.e
        cols = []
        basis = self._const(1)
        for j in range(e):
            cols.append((self * basis).comps)
            basis = basis * self._basis_s()
        return [[cols[j][i] for j in range(e)] for i in range(e)]

    def _basis_s(self):
        z = [self.comps[0] - self.comps[0] for _ in range(self.e)]
        if self.e > 1:
            z[1] = z[1] + 1
        else:
            z[0] = z[0] - self.mod[0]
        return self._wrap(z)

    def invert(self, uprec=None):
        M = self.mult_matrix()
        Minv = mx.inverse(M, uprec)
        return self._wrap([Minv[i][0] for i in range(self.e)])


# ----------------------------------------------------------------------------
# GL_n


def gl_chart(n: int, field: Field) -> Chart:
    """(I + X)(I + Y) = I + f(X, Y), i.e. f = X + Y + XY entrywise."""
    if n < 1:
        raise ValueError("n must be >= 1")
    d = n * n
    nv = 2 * d
    one = RationalF.const(field, 1)
    coords = []
    for i in range(n):
        for j in range(n):
            terms = {}
            ex = [0] * nv
            ex[i * n + j] = 1
            terms[tuple(ex)] = one
            ey = [0] * nv
            ey[d + i * n + j] = 1
            terms[tuple(ey)] = one
            for k in range(n):
                e = [0] * nv
                e[i * n + k] += 1
                e[d + k * n + j] += 1
                terms[tuple(e)] = one
            coords.append(RatMap(MPoly(nv, terms)))
    return Chart(kind="gl", d=d, field=field, coords=tuple(coords), n=n)


# ----------------------------------------------------------------------------
# SO(q) via the Cayley transform


def _rmat_inverse(Q):
    """Inverse of a small matrix over k(x, t) by cofactors."""
    n = len(Q)
    d = _rdet(Q)
    if d.is_zero():
        raise SingularForm("Gram matrix is singular")
    inv = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(Q) if k != i]
            c = _rdet(minor) if minor else RationalF.const(d.field, 1)
            inv[j][i] = (-c if (i + j) % 2 else c) / d
    return inv, d


def _rdet(A):
    n = len(A)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return A[0][0]
    acc = None
    for j in range(n):
        if A[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = A[0][j] * _rdet(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc if acc is not None else A[0][0] - A[0][0]


def cayley_chart(Q, degree: int = WORKING_DEGREE) -> Chart:
    """Chart of SO(q) at the identity through c(X) = (I + X)(I - X)^{-1}.

    The skew space is parameterized by the basis Q^{-1}(E_ij - E_ji), i < j
    in lexicographic order; the coordinate for (i, j) is entry (i, j) of QX.
    """
    Q = tuple(tuple(c for c in row) for row in Q)
    return _cayley_cached(Q, degree)


@lru_cache(maxsize=64)
def _cayley_cached(Q, degree):
    n = len(Q)
    field = Q[0][0].field
    if field.p == 2:
        raise CharacteristicTwo("Cayley charts need char k != 2")
    for i in range(n):
        for j in range(n):
            if Q[i][j] != Q[j][i]:
                raise SingularForm("Gram matrix is not symmetric")
    Qinv, delta = _rmat_inverse([list(r) for r in Q])
    d = n * (n - 1) // 2
    coords = tuple(_cayley_taylor(Q, Qinv, delta, n, degree))
    ch = Chart(kind="so", d=d, field=field, coords=coords, exact=False, degree=degree, n=n, Q=Q)
    ch._cache["Qinv"] = tuple(tuple(r) for r in Qinv)
    ch._cache["delta"] = delta
    return ch


def _so_matrix(ch, xs, tprec, uprec):
    """X = sum_k x_k Q^{-1}(E_ij - E_ji)."""
    n = ch.n
    Qinv = ch._cache["Qinv"]
    F = ch.field
    zero = xs[0] - xs[0]
    X = [[zero] * n for _ in range(n)]
    for k, (i, j) in enumerate(_pairs(n)):
        for r in range(n):
            a = _cmul(xs[k], Qinv[r][i], tprec, uprec)
            if a is not None:
                X[r][j] = X[r][j] + a
            b = _cmul(xs[k], Qinv[r][j], tprec, uprec)
            if b is not None:
                X[r][i] = X[r][i] - b
    return X


def _so_compose(ch, xs, ys, tprec, uprec):
    n = ch.n
    if n == 2:
        # B^2 = -I/det Q, so the law is z = (x + y) / (1 - xy/det Q)
        kappa = -ch._cache["delta"].inv()
        x, y = xs[0], ys[0]
        den = _cmul(x * y, kappa, tprec, uprec)
        den = 1 + den if den is not None else None
        num = x + y
        return [num if den is None else num * den.invert(uprec=uprec)]
    if n == 3:
        return _so3_compose(ch, xs, ys, tprec, uprec)
    return so_compose_matrix(ch, xs, ys, tprec, uprec)


def _so3_compose(ch, xs, ys, tprec, uprec):
    """Closed form for three variables.

    With QX = [a]_x (cross-product matrix) the Cayley parameters compose as
    a'' = (a + a' + Q^{-1}(a x a')) / (1 - a^T Q a' / det Q).
    """
    Q = ch.Q
    Qinv = ch._cache["Qinv"]
    dinv = ch._cache["delta"].inv()
    a = [-xs[2], xs[1], -xs[0]]
    b = [-ys[2], ys[1], -ys[0]]
    cross = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    dot_terms = []
    for i in range(3):
        for j in range(3):
            if not Q[i][j].is_zero():
                dot_terms.append((a[i] * b[j], Q[i][j] * dinv))
    num = []
    for r in range(3):
        lc = _lincomb([(cross[k], Qinv[r][k]) for k in range(3)], tprec, uprec)
        v = a[r] + b[r]
        num.append(v if lc is None else v + lc)
    dot = _lincomb(dot_terms, tprec, uprec)
    if dot is not None:
        inv = (1 - dot).invert(uprec=uprec)
        num = [c * inv for c in num]
    return [-num[2], num[1], -num[0]]


def so_compose_matrix(ch, xs, ys, tprec, uprec):
    """Z = (I - X)^{-1}(X + Y)(I + XY)^{-1}(I - X), read off from QZ."""
    n = ch.n
    X = _so_matrix(ch, xs, tprec, uprec)
    Y = _so_matrix(ch, ys, tprec, uprec)
    I = mx.identity(ch.field, n, tprec)
    ImX = mx.sub(I, X)
    Z = mx.mul(mx.inverse(ImX, uprec), mx.add(X, Y))
    Z = mx.mul(Z, mx.inverse(mx.add(I, mx.mul(X, Y)), uprec))
    Z = mx.mul(Z, ImX)
    Qs = _series_matrix(ch.field, ch.Q, tprec, uprec)
    out = []
    for i, j in _pairs(n):
        acc = None
        for k in range(n):
            term = _cmul(Z[k][j], ch.Q[i][k], tprec, uprec)
            if term is not None:
                acc = term if acc is None else acc + term
        out.append(acc if acc is not None else Qs[0][0] * 0)
    return out


def _var(nv, k, one):
    return MPoly.var(nv, k, one)


def _cayley_taylor(Q, Qinv, delta, n, D):
    """Taylor polynomials of the composition law up to total degree D."""
    field = delta.field
    one = RationalF.const(field, 1)
    d = n * (n - 1) // 2
    nv = 2 * d
    xs = [_var(nv, k, one) for k in range(d)]
    ys = [_var(nv, d + k, one) for k in range(d)]
    if n == 2:
        kappa = -delta.inv()
        b = (xs[0] * ys[0]).scale(-kappa)  # den = 1 - b
        num = xs[0] + ys[0]
        return [RatMap(_geometric(num, b, D))]
    if n == 3:
        a = [-xs[2], xs[1], -xs[0]]
        bb = [-ys[2], ys[1], -ys[0]]
        cross = [a[1] * bb[2] - a[2] * bb[1], a[2] * bb[0] - a[0] * bb[2], a[0] * bb[1] - a[1] * bb[0]]
        dinv = delta.inv()
        dot = MPoly(nv)
        for i in range(3):
            for j in range(3):
                if not Q[i][j].is_zero():
                    dot = dot + (a[i] * bb[j]).scale(Q[i][j] * dinv)
        num = []
        for r in range(3):
            v = a[r] + bb[r]
            for k in range(3):
                if not Qinv[r][k].is_zero():
                    v = v + cross[k].scale(Qinv[r][k])
            num.append(_geometric(v, dot, D))
        return [RatMap(p) for p in (-num[2], num[1], -num[0])]
    return _cayley_taylor_matrix(Q, Qinv, n, D)


def _geometric(num, b, D):
    """Truncation of num / (1 - b) at total degree D (b has no constant term)."""
    acc = num.truncate(D)
    power = num
    while True:
        power = power.mul(b, maxdeg=D)
        if power.is_zero():
            return acc
        acc = acc + power


def _cayley_taylor_matrix(Q, Qinv, n, D):
    field = Q[0][0].field
    one = RationalF.const(field, 1)
    pairs = _pairs(n)
    d = len(pairs)
    nv = 2 * d
    zero = MPoly(nv)

    def skew(offset):
        X = [[zero] * n for _ in range(n)]
        for k, (i, j) in enumerate(pairs):
            v = _var(nv, offset + k, one)
            for r in range(n):
                if not Qinv[r][i].is_zero():
                    X[r][j] = X[r][j] + v.scale(Qinv[r][i])
                if not Qinv[r][j].is_zero():
                    X[r][i] = X[r][i] - v.scale(Qinv[r][j])
        return X

    def mmul(A, B):
        return [[_msum([A[i][k].mul(B[k][j], maxdeg=D) for k in range(n)], nv) for j in range(n)] for i in range(n)]

    def madd(A, B):
        return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]

    I = [[MPoly.const(nv, one) if i == j else zero for j in range(n)] for i in range(n)]

    def geom(A):  # sum of A^k truncated
        acc, power = I, I
        for _ in range(D):
            power = mmul(power, A)
            acc = madd(acc, power)
        return acc

    X, Y = skew(0), skew(d)
    XY = mmul(X, Y)
    negXY = [[-e for e in r] for r in XY]
    ImX = [[I[i][j] - X[i][j] for j in range(n)] for i in range(n)]
    Z = mmul(mmul(mmul(geom(X), madd(X, Y)), geom(negXY)), ImX)
    out = []
    for i, j in pairs:
        acc = zero
        for k in range(n):
            if not Q[i][k].is_zero():
                acc = acc + Z[k][j].scale(Q[i][k])
        out.append(RatMap(acc))
    return out


def _msum(ps, nv):
    acc = MPoly(nv)
    for p in ps:
        acc = acc + p
    return acc


# ----------------------------------------------------------------------------
# Weil restriction


def weil_restrict_chart(ch: Chart, modulus) -> Chart:
    """Restriction of scalars along F[s]/(m(s)); ``modulus`` lists m_0..m_e."""
    modulus = tuple(c if isinstance(c, RationalF) else RationalF.const(ch.field, c) for c in modulus)
    e = len(modulus) - 1
    if e < 1:
        raise NonMonicModulus("modulus must have degree >= 1")
    if modulus[-1] != 1:
        raise NonMonicModulus("modulus must be monic")
    if e == 1:
        return ch
    d = ch.d
    nv = 2 * d * e
    one = RationalF.const(ch.field, 1)
    images = []
    for k in range(2 * d):
        off = (0 if k < d else d * e) + (k % d) * e
        images.append([_var(nv, off + j, one) for j in range(e)])
    coords = []
    for rm in ch.coords:
        N = _alg_eval(rm.num, images, modulus, nv)
        if rm.is_polynomial():
            coords.extend(RatMap(c) for c in N)
            continue
        Dv = _alg_eval(rm.den, images, modulus, nv)
        M = _alg_mult_matrix(Dv, modulus, nv)
        adj = _adjugate_generic(M)
        det = _det_generic(M)
        c0 = det.constant_term()
        scale = c0.inv()
        det = det.scale(scale)
        for i in range(e):
            num_i = MPoly(nv)
            for j in range(e):
                num_i = num_i + adj[i][j] * N[j]
            coords.append(RatMap(num_i.scale(scale), det))
    return Chart(kind="weil", d=d * e, field=ch.field, coords=tuple(coords), exact=ch.exact,
                 degree=ch.degree, base=ch, modulus=modulus)


def _alg_mul(A, B, modulus, nv):
    e = len(A)
    prod = [MPoly(nv) for _ in range(2 * e - 1)]
    for i, a in enumerate(A):
        if a.is_zero():
            continue
        for j, b in enumerate(B):
            if not b.is_zero():
                prod[i + j] = prod[i + j] + a * b
    for k in range(2 * e - 2, e - 1, -1):
        c = prod[k]
        if c.is_zero():
            continue
        for i in range(e):
            if not modulus[i].is_zero():
                prod[k - e + i] = prod[k - e + i] - c.scale(modulus[i])
    return prod[:e]


def _alg_eval(p: MPoly, images, modulus, nv):
    e = len(modulus) - 1
    total = [MPoly(nv) for _ in range(e)]
    for expo, c in p.terms.items():
        term = [MPoly.const(nv, c)] + [MPoly(nv) for _ in range(e - 1)]
        for k, m in enumerate(expo):
            for _ in range(m):
                term = _alg_mul(term, images[k], modulus, nv)
        total = [a + b for a, b in zip(total, term)]
    return total


def _alg_mult_matrix(D, modulus, nv):
    e = len(D)
    one = RationalF.const(modulus[0].field, 1)
    cols = []
    basis = [MPoly.const(nv, one)] + [MPoly(nv) for _ in range(e - 1)]
    s = [MPoly(nv) for _ in range(e)]
    s[1] = MPoly.const(nv, one)
    for _ in range(e):
        cols.append(_alg_mul(D, basis, modulus, nv))
        basis = _alg_mul(basis, s, modulus, nv)
    return [[cols[j][i] for j in range(e)] for i in range(e)]


def _det_generic(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    acc = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det_generic(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def _adjugate_generic(M):
    n = len(M)
    if n == 1:
        return [[MPoly.const(M[0][0].nvars, RationalF.const(next(iter(M[0][0].terms.values())).field, 1))]]
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]
            c = _det_generic(minor)
            out[j][i] = -c if (i + j) % 2 else c
    return out


# ----------------------------------------------------------------------------
# raw charts


def raw_chart(coords, field: Field) -> Chart:
    coords = tuple(coords)
    nv = coords[0].nvars
    if nv % 2 or any(c.nvars != nv for c in coords) or len(coords) != nv // 2:
        raise ValueError("a raw chart needs d rational maps in 2d variables")
    return Chart(kind="raw", d=len(coords), field=field, coords=coords)


# ----------------------------------------------------------------------------
# standard position and thresholds


def check_standard_position(ch: Chart) -> PositionReport:
    d = ch.d
    zero = (0,) * (2 * d)
    for i, rm in enumerate(ch.coords):
        c0 = rm.num.terms.get(zero)
        if c0 is not None and not _is_zero(c0):
            return PositionReport(False, "constant term", i)
        den0 = rm.den.terms.get(zero)
        if den0 is None or _is_zero(den0):
            return PositionReport(False, "denominator not a unit at the origin", i)
        lin = rm.num.linear_coeffs()
        want = {i: den0, d + i: den0}
        if {k: v for k, v in lin.items() if not _is_zero(v)} != want:
            return PositionReport(False, "linear part", i)
    for i, rm in enumerate(ch.coords):
        for side, var in (("f(x, 0) = x", i), ("f(0, y) = y", d + i)):
            kill = range(d, 2 * d) if var < d else range(d)
            num = rm.num.restrict(kill)
            den = rm.den.restrict(kill)
            one = _one_of(den)
            lhs = num - MPoly.var(2 * d, var, one) * den
            if not ch.exact:
                lhs = lhs.truncate(ch.degree)
            if not lhs.is_zero():
                return PositionReport(False, f"unit law {side}", i)
    return PositionReport(True)


def _is_zero(c):
    return c.is_zero() if hasattr(c, "is_zero") else c == 0


def _one_of(p: MPoly):
    c = next(iter(p.terms.values()))
    if isinstance(c, RationalF):
        return RationalF.const(c.field, 1)
    return 1


def chart_epsilon(ch: Chart, scap: int = 32) -> Threshold:
    """Least half-integer s with every coordinate of Gauss value >= 0; N0 = 1 + 2s."""
    rep = check_standard_position(ch)
    if not rep.ok:
        raise StandardPositionError(str(rep))
    return _epsilon_of_maps(ch.coords, scap)


def _epsilon_of_maps(maps, scap):
    k = 0
    while Fraction(k, 2) <= scap:
        s = Fraction(k, 2)
        if all(rational_gauss_bound(rm, s) >= 0 for rm in maps):
            return Threshold(s=s, N0=ceil(1 + 2 * s))
        k += 1
    raise NoRadiusFound(f"no weight s <= {scap} bounds every coordinate")


def _vec_ord(vs):
    return min((v.ord_t() for v in vs), default=INF)


def taylor_error_check(ch: Chart, coord: int, a, h, tprec=None, uprec=None) -> bool:
    """ord_t(f(a + h) - f(a) - L(h)) >= 1 + ord_t(h) for coordinate ``coord``."""
    d = ch.d
    a, h = list(a), list(h)
    ah = [p + q for p, q in zip(a, h)]
    fa = ch.multiply(a[:d], a[d:], tprec, uprec)[coord]
    fah = ch.multiply(ah[:d], ah[d:], tprec, uprec)[coord]
    rem = fah - fa - h[coord] - h[d + coord]
    oh = _vec_ord(h)
    if oh == INF:
        return rem.ord_t() == INF
    return rem.ord_t() >= 1 + oh


def local_invert(maps, target, N, N0=None, uprec=None, trace=None):
    """Solve map(b) = target near 0 by b <- b + (target - map(b)).

    ``maps`` are d rational maps in d variables with linear part the
    identity.  The defect must gain at least one t-order per step.
    """
    maps = list(maps)
    target = [c.truncate(tprec=N) for c in target]
    if N0 is None:
        N0 = _epsilon_of_maps(maps, 32).N0
    if _vec_ord(target) < N0:
        raise ThresholdViolation(f"target has t-order {_vec_ord(target)} < N0 = {N0}")
    b = [c - c for c in target]
    prev = None
    for _ in range(N - N0 + 2):
        img = [rm.evaluate(b, N, uprec) for rm in maps]
        defect = [tc - ic for tc, ic in zip(target, img)]
        o = _vec_ord(defect)
        if trace is not None:
            trace.append(o)
        if prev is not None and o < prev + 1:
            raise GuardFailure(f"defect order {o} after {prev}: no contraction")
        if o >= N:
            return b
        prev = o
        b = [bi + di for bi, di in zip(b, defect)]
    raise GuardFailure("local inversion did not converge")
