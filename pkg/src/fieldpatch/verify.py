"""Independent re-checking of factorization certificates.

Nothing here calls the factorization engine or the chart machinery: the
group law is recomputed from the chart text with local matrix code, and
matrix inverses are replaced by geometric series.  Only series arithmetic,
rational expansion and the text parser are shared.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import VerificationFailure
from .rational import RationalF, expand_rational
from .series import DEFAULT_UPREC, PatchSeries, Tag
from .textio import Parser, parse_cert

_SIDE1 = {Tag.V, Tag.F1, Tag.FRAT}
_SIDE2 = {Tag.W, Tag.F2, Tag.FRAT}


@dataclass
class Report:
    checks: list = dc_field(default_factory=list)

    def add(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.checks)

    def lines(self):
        return [f"{'ok  ' if ok else 'FAIL'} {name}" + (f" ({d})" if d else "") for name, ok, d in self.checks]


# arithmetic over A = F0[s]/(m); elements are lists of e series -----------------


class _Alg:
    def __init__(self, F, N, modulus):
        self.F, self.N = F, N
        self.m = [expand_rational(c, Tag.FRAT, N, None) for c in modulus]
        self.e = len(modulus) - 1

    def zero(self):
        return [PatchSeries.zero(self.F, Tag.F0, self.N) for _ in range(self.e)]

    def const(self, c):
        z = self.zero()
        z[0] = c if isinstance(c, PatchSeries) else PatchSeries.const(self.F, c, Tag.F0, self.N)
        return z

    def add(self, a, b):
        return [x + y for x, y in zip(a, b)]

    def sub(self, a, b):
        return [x - y for x, y in zip(a, b)]

    def mul(self, a, b):
        e = self.e
        prod = [PatchSeries.zero(self.F, Tag.F0, self.N) for _ in range(2 * e - 1)]
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                if not y.is_zero():
                    prod[i + j] = prod[i + j] + x * y
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k]
            if c.is_zero():
                continue
            for j in range(e):
                prod[k - e + j] = prod[k - e + j] - c * self.m[j]
        return prod[:e]

    def is_zero(self, a, N):
        return all(c.tprec >= N and c.is_zero() for c in a)


def _mzero(A, n, m=None):
    return [[A.zero() for _ in range(m or n)] for _ in range(n)]


def _meye(A, n):
    M = _mzero(A, n)
    for i in range(n):
        M[i][i] = A.const(1)
    return M


def _mmul(A, X, Y):
    out = _mzero(A, len(X), len(Y[0]))
    for i in range(len(X)):
        for j in range(len(Y[0])):
            acc = A.zero()
            for k in range(len(Y)):
                acc = A.add(acc, A.mul(X[i][k], Y[k][j]))
            out[i][j] = acc
    return out


def _madd(A, X, Y):
    return [[A.add(a, b) for a, b in zip(r, s)] for r, s in zip(X, Y)]


def _msub(A, X, Y):
    return [[A.sub(a, b) for a, b in zip(r, s)] for r, s in zip(X, Y)]


def _mzero_at(A, X, N):
    return all(A.is_zero(a, N) for r in X for a in r)


def _neumann(A, X, N):
    """(I - X)^{-1} as sum of X^k, valid when X has positive t-order."""
    n = len(X)
    acc = _meye(A, n)
    P = _meye(A, n)
    for _ in range(N):
        P = _mmul(A, P, X)
        acc = _madd(A, acc, P)
    return acc


# chart descriptions ------------------------------------------------------------


def _read_chart(text, F):
    p = Parser(text, F)
    desc = _chart_desc(p)
    if not p.at_end():
        raise VerificationFailure("trailing text in chart description")
    return desc


def _chart_desc(p):
    p.expect("id", "chart")
    kind = p.expect("id")
    if kind == "gl":
        return ("gl", p.int_())
    if kind == "so":
        p.expect("p", "{")
        Q = p.matrix(p.rat)
        p.expect("p", "}")
        return ("so", Q)
    if kind == "weil":
        p.expect("p", "{")
        base = _chart_desc(p)
        p.expect("p", ";")
        p.expect("id", "spoly")
        mod = p._list(p.rat)
        p.expect("p", "}")
        return ("weil", base, mod)
    if kind == "raw":
        d = p.int_()
        p.expect("p", "{")
        maps = [p.ratmap()]
        while p.accept("p", ";"):
            maps.append(p.ratmap())
        p.expect("p", "}")
        return ("raw", d, maps)
    raise VerificationFailure(f"unknown chart kind {kind}")


def _skew_basis(A, Q, N):
    """Matrices Q^{-1}(E_ij - E_ji), i < j, over A, with Q^{-1} by elimination over k(x, t)."""
    n = len(Q)
    Qi = _rat_inverse(Q)
    basis = []
    for i in range(n):
        for j in range(i + 1, n):
            B = _mzero(A, n)
            for r in range(n):
                if not Qi[r][i].is_zero():
                    B[r][j] = A.const(expand_rational(Qi[r][i], Tag.FRAT, N, None))
                if not Qi[r][j].is_zero():
                    B[r][i] = A.const(-expand_rational(Qi[r][j], Tag.FRAT, N, None))
            basis.append(B)
    return basis


def _rat_inverse(Q):
    n = len(Q)
    F = Q[0][0].num.field
    M = [list(r) + [RationalF.const(F, 1 if i == j else 0) for j in range(n)] for i, r in enumerate(Q)]
    for c in range(n):
        piv = next(r for r in range(c, n) if not M[r][c].is_zero())
        M[c], M[piv] = M[piv], M[c]
        inv = M[c][c].inv()
        M[c] = [e * inv for e in M[c]]
        for r in range(n):
            if r != c and not M[r][c].is_zero():
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [r[n:] for r in M]


def _group_element(A, desc, coords, N):
    """Image of chart coordinates (elements of A) in a matrix group over A, or None for raw charts."""
    kind = desc[0]
    if kind == "gl":
        n = desc[1]
        X = [[coords[i * n + j] for j in range(n)] for i in range(n)]
        return _madd(A, _meye(A, n), X)
    if kind == "so":
        Q = desc[1]
        n = len(Q)
        X = _mzero(A, n)
        for z, B in zip(coords, _skew_basis(A, Q, N)):
            X = _madd(A, X, [[A.mul(z, b) for b in r] for r in B])
        return _mmul(A, _madd(A, _meye(A, n), X), _neumann(A, X, N))
    return None


def _lift_to_alg(A, comps):
    """Coordinates of the restricted chart, grouped by base coordinate, as elements of A."""
    e = A.e
    return [list(comps[i * e:(i + 1) * e]) for i in range(len(comps) // e)]


def _eval_ratmap(A, rm, vals, N):
    def ev(poly):
        acc = A.zero()
        for ex, c in poly.terms.items():
            term = A.const(expand_rational(c, Tag.FRAT, N, None))
            for v, k in zip(vals, ex):
                for _ in range(k):
                    term = A.mul(term, v)
            acc = A.add(acc, term)
        return acc

    num, den = ev(rm.num), ev(rm.den)
    c0 = den[0].coeff(0)
    if c0.is_zero() or any(d.ord_t() < 1 for d in den[1:]):
        raise VerificationFailure("denominator of a chart map is not a unit at the origin")
    # den = c0 (1 - b) with b of positive t-order: invert by a geometric series
    c = A.const(PatchSeries.from_laurents(A.F, [c0], Tag.F0, 0, N))
    cinv = A.const(PatchSeries.from_laurents(A.F, [c0.inverse(DEFAULT_UPREC)], Tag.F0, 0, N))
    b = A.sub(c, den)
    b = A.mul(b, cinv)
    acc, P = A.const(1), A.const(1)
    for _ in range(N):
        P = A.mul(P, b)
        acc = A.add(acc, P)
    return A.mul(num, A.mul(acc, cinv))


def _check_chart_product(rep, desc, F, z0, z1, z2, N, modulus=None):
    A = _Alg(F, N, modulus or [RationalF.const(F, 0), RationalF.const(F, 1)])
    if modulus is None:
        a0, a1, a2 = ([[c] for c in z] for z in (z0, z1, z2))
    else:
        a0, a1, a2 = (_lift_to_alg(A, z) for z in (z0, z1, z2))
    kind = desc[0]
    if kind in ("gl", "so"):
        G0, G1, G2 = (_group_element(A, desc, a, N) for a in (a0, a1, a2))
        rep.add("product of factor images equals image of input", _mzero_at(A, _msub(A, _mmul(A, G1, G2), G0), N))
        if kind == "so":
            Q = [[A.const(expand_rational(q, Tag.FRAT, N, None)) for q in r] for r in desc[1]]
            for name, G in (("factor1", G1), ("factor2", G2)):
                Gt = [list(c) for c in zip(*G)]
                rep.add(f"{name} preserves the Gram matrix", _mzero_at(A, _msub(A, _mmul(A, _mmul(A, Gt, Q), G), Q), N))
        return
    if kind == "raw":
        _, d, maps = desc
        vals = a1 + a2
        ok = all(A.is_zero(A.sub(_eval_ratmap(A, rm, vals, N), a0[i]), N) for i, rm in enumerate(maps))
        rep.add("chart product of factors equals input", ok)
        return
    if kind == "weil":
        if modulus is not None:
            raise VerificationFailure("nested restriction of scalars is not supported by the verifier")
        _check_chart_product(rep, desc[1], F, z0, z1, z2, N, desc[2])
        return
    raise VerificationFailure(f"unknown chart kind {kind}")


def _strict_trace(trace, N):
    return all(b > a for a, b in zip(trace, trace[1:])) and bool(trace) and trace[-1] >= N


def verify_cert(cert) -> Report:
    """Re-check every claim of a certificate; returns a report (``report.ok``)."""
    rep = Report()
    N, F = cert.tprec, cert.field
    rep.add("residual order reaches the stated precision", cert.residual_ord >= N, f"{cert.residual_ord} vs {N}")
    rep.add("residual trace strictly increasing", _strict_trace(cert.trace, N), " ".join(map(str, cert.trace)))
    if cert.kind == "gl":
        g0, g1, g2 = ([list(r) for r in m] for m in (cert.inputs, cert.factor1, cert.factor2))
        rep.add("factor1 tags on the infinity side", all(e.tag in _SIDE1 for r in g1 for e in r))
        rep.add("factor2 tags on the affine side", all(e.tag in _SIDE2 for r in g2 for e in r))
        A = _Alg(F, N, [RationalF.const(F, 0), RationalF.const(F, 1)])
        wrap = lambda M: [[[e] for e in r] for r in M]
        diff = _msub(A, _mmul(A, wrap(g1), wrap(g2)), wrap(g0))
        rep.add("g1 * g2 equals g0", _mzero_at(A, diff, N))
        return rep
    if cert.kind in ("newton", "group"):
        rep.add("factor1 pure on the infinity side", all(e.tag is Tag.V and e.is_valid() for e in cert.factor1))
        rep.add("factor2 pure on the affine side", all(e.tag is Tag.W and e.is_valid() for e in cert.factor2))
        desc = _read_chart(cert.chart, F)
        _check_chart_product(rep, desc, F, list(cert.inputs), list(cert.factor1), list(cert.factor2), N)
        return rep
    rep.add(f"known certificate kind ({cert.kind})", False)
    return rep


def verify_text(text: str) -> Report:
    return verify_cert(parse_cert(text))
