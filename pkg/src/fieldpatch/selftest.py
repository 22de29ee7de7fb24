"""Seeded property suites over every module, run by ``fieldpatch selftest``."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import generators as gen
from . import matrices as mx
from .charts import cayley_chart, check_standard_position, gl_chart, taylor_error_check
from .config import SessionConfig
from .errors import FieldPatchError
from .factorization import gl_factor, group_factor
from .patching import Tensor, TensorObject, isometry_between, patch_tensor_object
from .rational import RationalF, expand_rational
from .series import PatchSeries, Tag
from .splitting import additive_factor, intersect_reconstruct
from .textio import format_cert
from .verify import verify_text


@dataclass
class SuiteResult:
    name: str
    passed: int
    total: int
    first_failure: str = ""

    @property
    def ok(self):
        return self.passed == self.total

    def line(self):
        s = f"{self.name}: {self.passed}/{self.total}"
        return s if self.ok else f"{s}  first failure: {self.first_failure}"


def _run(name, count, case):
    passed, first = 0, ""
    for i in range(count):
        try:
            ok = case(i)
        except FieldPatchError as e:
            ok, msg = False, f"case {i}: {e.code}: {e}"
        else:
            msg = f"case {i}"
        if ok:
            passed += 1
        elif not first:
            first = msg
    return SuiteResult(name, passed, count, first)


def _rat(F, c):
    return RationalF.const(F, c)


def _diag(F, *entries):
    n = len(entries)
    return [[entries[i] if i == j else _rat(F, 0) for j in range(n)] for i in range(n)]


def suite_series(cfg, rng, count):
    F, N, M = cfg.field, cfg.tprec, cfg.uprec

    def case(_):
        a, b, c = (gen.rand_series(F, rng, N, M) for _ in range(3))
        assoc = ((a * b) * c).congruent(a * (b * c))
        dist = (a * (b + c)).congruent(a * b + a * c)
        comm = (a * b) == (b * a)
        oa, ob = a.ord_t(), b.ord_t()
        val = (a * b).ord_t() == oa + ob if oa + ob < N else True
        return assoc and dist and comm and val

    return _run("series ring axioms", count, case)


def suite_split(cfg, rng, count):
    F, N, M = cfg.field, cfg.tprec, cfg.uprec

    def case(_):
        a = gen.rand_series(F, rng, N, M)
        sp = additive_factor(a)
        return (sp.v + sp.w) == a.promote(Tag.F0) and sp.v.is_valid() and sp.w.is_valid()

    return _run("additive splitting", count, case)


def suite_reconstruct(cfg, rng, count):
    F, N, M = cfg.field, cfg.tprec, cfg.uprec
    dx, dt = min(cfg.degx, 2), min(cfg.degt, 2)

    def case(_):
        f = gen.rand_rational(F, rng, dx, dt)
        a1 = expand_rational(f, Tag.F1, N, M)
        a2 = expand_rational(f, Tag.F2, N, M)
        return intersect_reconstruct(a1, a2, (dx, dt)) == f

    return _run("reconstruction", count, case)


def suite_cayley(cfg, rng, count):
    cfg.require_odd_char()
    F, N = cfg.field, cfg.tprec
    X = RationalF.x(F)
    ch = cayley_chart(_diag(F, _rat(F, 1), _rat(F, -1), X))
    Q = [[expand_rational(q, Tag.FRAT, N) for q in r] for r in ch.Q]

    def case(_):
        z = [gen.rand_small(F, rng, N) for _ in range(ch.d)]
        g = ch.element(z, N)
        return mx.congruent(mx.mul(mx.mul(mx.transpose(g), Q), g), Q)

    return _run("cayley membership", count, case)


def suite_taylor(cfg, rng, count):
    F, N = cfg.field, cfg.tprec
    charts = [gl_chart(2, F)]
    if F.p != 2:
        charts.append(cayley_chart(_diag(F, _rat(F, 1), _rat(F, -1))))
    charts = [(ch, ch.threshold(cfg.scap).N0) for ch in charts if check_standard_position(ch).ok]

    def case(i):
        ch, N0 = charts[i % len(charts)]
        a = [gen.rand_small(F, rng, N, min_ord=N0) for _ in range(2 * ch.d)]
        h = [gen.rand_small(F, rng, N, min_ord=N0) for _ in range(2 * ch.d)]
        return all(taylor_error_check(ch, k, a, h, N) for k in range(ch.d))

    return _run("taylor inequality", count, case)


def suite_gl(cfg, rng, count):
    F, N = cfg.field, cfg.tprec

    def case(i):
        g0 = gen.rand_gl_input(F, rng, 2, N)
        g1, g2, cert = gl_factor(g0, N)
        dets = (mx.det(g1) * mx.det(g2)).congruent(mx.det(g0))
        return dets and verify_text(format_cert(cert)).ok

    return _run("gl factorization + verifier", count, case)


def suite_group(cfg, rng, count):
    cfg.require_odd_char()
    F, N = cfg.field, cfg.tprec
    ch = cayley_chart(_diag(F, _rat(F, 1), _rat(F, -1), RationalF.x(F) + RationalF.t(F)))

    def case(_):
        z0 = [gen.rand_small(F, rng, N, nterms=2) for _ in range(ch.d)]
        _z1, _z2, cert = group_factor(ch, z0, N)
        return verify_text(format_cert(cert)).ok

    return _run("group factorization + verifier", count, case)


def _isotropic(F, rng, N):
    """Random isotropic vector for the form ab + cd (two hyperbolic planes)."""
    a = PatchSeries.const(F, 1, Tag.F0, N) + gen.rand_small(F, rng, N)
    c, d = gen.rand_small(F, rng, N, min_ord=0), gen.rand_small(F, rng, N, min_ord=0)
    b = -(c * d) / a
    return [a, b, c, d]


def suite_isometry(cfg, rng, count):
    cfg.require_odd_char()
    F, N = cfg.field, cfg.tprec
    o, z = _rat(F, 1), _rat(F, 0)
    Q = [[z, o, z, z], [o, z, z, z], [z, z, z, o], [z, z, o, z]]
    Qs = [[expand_rational(q, Tag.FRAT, N) for q in r] for r in Q]

    def case(i):
        v1, v2 = _isotropic(F, rng, N), _isotropic(F, rng, N)
        g = isometry_between(Q, v1, v2, want_special=bool(i % 2), N=N)
        gram = mx.congruent(mx.mul(mx.mul(mx.transpose(g), Qs), g), Qs)
        gv1 = [mx.mul(g, [[c] for c in v1])[r][0] for r in range(4)]
        gv = all(x.congruent(y) for x, y in zip(gv1, v2))
        special = not (i % 2) or mx.det(g).congruent(PatchSeries.const(F, 1, Tag.F0, N))
        return gram and gv and special

    return _run("isometries from reflections", count, case)


def suite_patching(cfg, rng, count):
    F, N = cfg.field, cfg.tprec

    def case(_):
        n = 2
        obj = TensorObject(n, (Tensor.gram(gen.rand_symmetric(F, rng, n)),))
        res = patch_tensor_object(gen.product_problem(F, rng, obj, N), (4, 4), N)
        return res.obj == obj

    return _run("object patching round trip", count, case)


SUITES = [suite_series, suite_split, suite_reconstruct, suite_cayley, suite_taylor, suite_gl,
          suite_group, suite_isometry, suite_patching]


def run_selftest(cfg: SessionConfig, count: int = 10):
    """Run every suite with its own generator derived from the seed."""
    results = []
    for k, suite in enumerate(SUITES):
        rng = random.Random(cfg.seed * 1000 + k)
        results.append(suite(cfg, rng, count))
    return results
