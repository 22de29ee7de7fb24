"""Patching of vector spaces and tensor objects, and the isotropy demo.

Conventions.  A patching problem has local data over F1 (side 1, at
infinity) and over F2 (side 2, along the affine line), and a transition
T with x1 = T x2 on the branch.  Factoring T = g1 g2, the global
coordinates are y = g1^{-1} x1 = g2 x2.  A tensor with p contravariant and
q covariant indices transforms under x' = A x by A on upper and A^{-1} on
lower indices (so a Gram matrix G becomes A^{-T} G A^{-1}).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import matrices as mx
from .charts import cayley_chart
from .errors import (
    BranchMismatch,
    CharacteristicTwo,
    DegenerateMirror,
    ExactnessFailure,
    TransitionNotIso,
)
from .factorization import FactorCert, gl_factor, group_factor
from .rational import RationalF, expand_rational
from .series import INF, PatchSeries, Tag
from .splitting import intersect_reconstruct


@dataclass(frozen=True)
class Tensor:
    p: int
    q: int
    n: int
    data: tuple  # flat, row-major over (upper indices, lower indices)

    @classmethod
    def from_flat(cls, p, q, flat):
        flat = tuple(flat)
        k = p + q
        n = round(len(flat) ** (1 / k)) if k else 1
        if n ** k != len(flat):
            raise ValueError(f"{len(flat)} entries is not n^{k}")
        return cls(p, q, n, flat)

    @classmethod
    def gram(cls, G):
        return cls(0, 2, len(G), tuple(e for row in G for e in row))

    def flat(self):
        return self.data

    def index(self, idx):
        k = 0
        for i in idx:
            k = k * self.n + i
        return k

    def __getitem__(self, idx):
        return self.data[self.index(idx)]

    def as_matrix(self):
        if self.p + self.q != 2:
            raise ValueError("not a 2-index tensor")
        n = self.n
        return [list(self.data[i * n:(i + 1) * n]) for i in range(n)]

    def map(self, fn):
        return Tensor(self.p, self.q, self.n, tuple(fn(e) for e in self.data))


@dataclass(frozen=True)
class TensorObject:
    n: int
    tensors: tuple

    def map(self, fn):
        return TensorObject(self.n, tuple(t.map(fn) for t in self.tensors))


@dataclass(frozen=True)
class PatchingProblem:
    n: int
    side1: TensorObject
    side2: TensorObject
    transition: tuple  # rows of series over F0


@dataclass(frozen=True)
class PatchResult:
    obj: TensorObject  # over k(x, t)
    g1: tuple
    g2: tuple
    cert: FactorCert


def _as_series(e, tag, N, M):
    if isinstance(e, RationalF):
        return expand_rational(e, tag, N, M)
    if isinstance(e, PatchSeries):
        return e.truncate(tprec=N)
    raise TypeError(f"tensor entry of type {type(e).__name__}")


def transport_tensor(T: Tensor, A, Ainv) -> Tensor:
    """The tensor in coordinates x' = A x."""
    n, p, q = T.n, T.p, T.q
    out = []
    for idx in product(range(n), repeat=p + q):
        I, J = idx[:p], idx[p:]
        acc = None
        for src in product(range(n), repeat=p + q):
            K, L = src[:p], src[p:]
            coef = None
            for r in range(p):
                a = A[I[r]][K[r]]
                coef = a if coef is None else coef * a
            for s in range(q):
                a = Ainv[L[s]][J[s]]
                coef = a if coef is None else coef * a
            e = T[src]
            term = e if coef is None else coef * e
            acc = term if acc is None else acc + term
        out.append(acc)
    return Tensor(p, q, n, tuple(out))


def transport(obj: TensorObject, A, Ainv) -> TensorObject:
    return TensorObject(obj.n, tuple(transport_tensor(t, A, Ainv) for t in obj.tensors))


def _objects_congruent(a: TensorObject, b: TensorObject) -> bool:
    return all(x.congruent(y) for ta, tb in zip(a.tensors, b.tensors) for x, y in zip(ta.data, tb.data))


def patch_vector_space(transition, N, uprec=None):
    """Trivialize the patching problem (F1^n, F2^n, transition): returns (g1, g2, cert)."""
    return gl_factor(transition, N, uprec)


def patch_tensor_object(pp: PatchingProblem, degbounds, N: int, uprec=None) -> PatchResult:
    """Glue the two local objects into one over k(x, t)."""
    T = [list(r) for r in pp.transition]
    side1 = pp.side1.map(lambda e: _as_series(e, Tag.F1, N, uprec))
    side2 = pp.side2.map(lambda e: _as_series(e, Tag.F2, N, uprec))
    Tinv = mx.inverse(T, uprec)
    if not _objects_congruent(transport(side1, Tinv, T), side2):
        raise TransitionNotIso("the transition does not carry side 1 to side 2")
    g1, g2, cert = gl_factor(T, N, uprec)
    g1inv = mx.inverse(g1, uprec)
    g2inv = mx.inverse(g2, uprec)
    o1 = transport(side1, g1inv, g1)
    o2 = transport(side2, g2, g2inv)
    if not _objects_congruent(o1, o2):
        raise BranchMismatch("transported objects disagree on the branch")
    tensors = []
    for t1, t2 in zip(o1.tensors, o2.tensors):
        ents = tuple(intersect_reconstruct(a, b, degbounds) for a, b in zip(t1.data, t2.data))
        tensors.append(Tensor(t1.p, t1.q, t1.n, ents))
    out = TensorObject(pp.n, tuple(tensors))
    # re-expansion check: the glued object goes back to both sides
    e1 = out.map(lambda f: expand_rational(f, Tag.F1, N, uprec))
    e2 = out.map(lambda f: expand_rational(f, Tag.F2, N, uprec))
    if not (_objects_congruent(transport(e1, g1, g1inv), side1)
            and _objects_congruent(transport(e2, g2inv, g2), side2)):
        raise ExactnessFailure("reconstructed object does not re-expand to the local data")
    return PatchResult(out, tuple(map(tuple, g1)), tuple(map(tuple, g2)), cert)


# ----------------------------------------------------------------------------
# reflections


def _bilinear(Qs, v, w):
    acc = None
    n = len(v)
    for i in range(n):
        for j in range(n):
            term = v[i] * Qs[i][j] * w[j]
            acc = term if acc is None else acc + term
    return acc


def _nonzero(s: PatchSeries) -> bool:
    return s.ord_t() != INF


def reflection(Qs, w, uprec=None):
    """Matrix of v -> v - 2 b(v, w)/q(w) w."""
    n = len(w)
    qw = _bilinear(Qs, w, w)
    F = qw.field
    c = qw.invert(uprec=uprec).scale(2)
    Qw = [None] * n
    for j in range(n):
        acc = None
        for k in range(n):
            term = Qs[k][j] * w[k]
            acc = term if acc is None else acc + term
        Qw[j] = acc
    I = mx.identity(F, n, qw.tprec)
    return [[I[i][j] - w[i] * Qw[j] * c for j in range(n)] for i in range(n)]


def _matvec(A, v):
    return [_sum([A[i][j] * v[j] for j in range(len(v))]) for i in range(len(A))]


def _sum(xs):
    acc = xs[0]
    for x in xs[1:]:
        acc = acc + x
    return acc


def isometry_between(Q, v1, v2, want_special=False, N=None, uprec=None):
    """An element g of O(q)(F0) with g v1 = v2, built from reflections."""
    F = (v1[0]).field
    if F.p == 2:
        raise CharacteristicTwo("reflections need char k != 2")
    N = N or min(c.tprec for c in list(v1) + list(v2))
    Qs = [[_as_series(e, Tag.F0, N, uprec) for e in row] for row in Q]
    v1 = [c.truncate(tprec=N) for c in v1]
    v2 = [c.truncate(tprec=N) for c in v2]
    n = len(v1)
    diff = [a - b for a, b in zip(v1, v2)]
    if all(not _nonzero(c) for c in diff):
        g = mx.identity(F, n, N)
    elif _nonzero(_bilinear(Qs, diff, diff)):
        g = reflection(Qs, diff, uprec)
    else:
        s = [a + b for a, b in zip(v1, v2)]
        if not (_nonzero(_bilinear(Qs, s, s)) and _nonzero(_bilinear(Qs, v2, v2))):
            raise DegenerateMirror("no usable mirror for this pair at the given precision")
        g = mx.mul(reflection(Qs, v2, uprec), reflection(Qs, s, uprec))
    if want_special and mx.det(g).congruent(PatchSeries.const(F, -1, Tag.F0, N)):
        e = _mirror_fixing(Qs, v2, N)
        g = mx.mul(reflection(Qs, e, uprec), g)
    return g


def _mirror_fixing(Qs, v2, N):
    """A vector e with b(e, v2) = 0 and q(e) != 0."""
    F = v2[0].field
    n = len(v2)
    one = PatchSeries.const(F, 1, Tag.F0, N)
    zero = PatchSeries.zero(F, Tag.F0, N)
    basis = [[one if i == j else zero for j in range(n)] for i in range(n)]
    bs = [_bilinear(Qs, b, v2) for b in basis]
    for i in range(n):
        if not _nonzero(bs[i]) and _nonzero(_bilinear(Qs, basis[i], basis[i])):
            return basis[i]
    for i in range(n):
        for j in range(i + 1, n):
            e = [basis[i][k] * bs[j] - basis[j][k] * bs[i] for k in range(n)]
            if any(_nonzero(c) for c in e) and _nonzero(_bilinear(Qs, e, e)):
                return e
    raise DegenerateMirror("no anisotropic vector orthogonal to v2 found")


# ----------------------------------------------------------------------------
# local-global isotropy


@dataclass(frozen=True)
class IsotropyReport:
    y: tuple  # witness over k(x, t)
    q_y: RationalF
    trace: tuple
    cert: FactorCert

    def lines(self):
        return [
            "witness " + " ; ".join(c.to_text() for c in self.y),
            "q(y) " + self.q_y.to_text(),
            "trace " + " ".join(str(o) for o in self.trace),
        ]


def quadratic_value(Q, y):
    """q(y) = y^T Q y in exact rational-function arithmetic."""
    acc = RationalF.const(Q[0][0].field, 0)
    n = len(y)
    for i in range(n):
        for j in range(n):
            if not Q[i][j].is_zero() and not y[i].is_zero() and not y[j].is_zero():
                acc = acc + y[i] * Q[i][j] * y[j]
    return acc


def isotropy_local_global_demo(Q, y0, perturbation, N: int, degbounds, uprec=None) -> IsotropyReport:
    """Round trip: local witnesses from y0, factor the transition, glue back over F."""
    Q = [list(r) for r in Q]
    y0 = list(y0)
    if not quadratic_value(Q, y0).is_zero():
        raise ExactnessFailure("the supplied witness is not isotropic")
    ch = cayley_chart(Q)
    z = [c.truncate(tprec=N) for c in perturbation]
    z1, z2, cert = group_factor(ch, z, N, uprec)
    g0 = ch.element(z, N, uprec)
    g1 = ch.element(z1, N, uprec)
    g2 = ch.element(z2, N, uprec)
    x_inf = [expand_rational(c, Tag.F1, N, uprec) for c in y0]
    x_aff = _matvec(mx.inverse(g0, uprec), [expand_rational(c, Tag.F2, N, uprec) for c in y0])
    y_inf = _matvec(mx.inverse(g1, uprec), x_inf)
    y_aff = _matvec(g2, x_aff)
    if not all(a.congruent(b) for a, b in zip(y_inf, y_aff)):
        raise BranchMismatch("the two transported witnesses disagree on the branch")
    y = tuple(intersect_reconstruct(a, b, degbounds) for a, b in zip(y_inf, y_aff))
    qy = quadratic_value(Q, y)
    if not qy.is_zero():
        raise ExactnessFailure(f"reconstructed witness is not isotropic: q(y) != 0 (degrees {qy.degx()}, {qy.degt()}); "
                               "raise the precision or the degree bounds")
    if all(c.is_zero() for c in y):
        raise ExactnessFailure("reconstructed witness is zero")
    return IsotropyReport(y=y, q_y=qy, trace=cert.trace, cert=cert)
