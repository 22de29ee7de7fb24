import random
from dataclasses import replace

from conftest import S
from fieldpatch import generators as gen
from fieldpatch.charts import cayley_chart, gl_chart, weil_restrict_chart
from fieldpatch.factorization import gl_factor, group_factor
from fieldpatch.rational import RationalF
from fieldpatch.scalars import GF, QQ
from fieldpatch.series import Tag
from fieldpatch.textio import format_cert
from fieldpatch.verify import verify_cert, verify_text


def r(c):
    return RationalF.const(QQ, c)


Q3 = [[r(1), r(0), r(0)], [r(0), r(-1), r(0)], [r(0), r(0), RationalF.x(QQ)]]


def test_accepts_gl_certificate():
    cert = gl_factor(gen.rand_gl_input(QQ, random.Random(1), 3, 10), 10, 8)[2]
    rep = verify_text(format_cert(cert))
    assert rep.ok and all(ln.startswith("ok") for ln in rep.lines())


def test_accepts_group_certificates():
    rng = random.Random(2)
    N = 10
    for ch in (cayley_chart(Q3), weil_restrict_chart(gl_chart(1, QQ), (-RationalF.x(QQ), r(0), r(1)))):
        z0 = [gen.rand_small(QQ, rng, N, nterms=2) for _ in range(ch.d)]
        assert verify_cert(group_factor(ch, z0, N, 10)[2]).ok


def test_accepts_over_finite_field():
    F = GF(3)
    cert = gl_factor(gen.rand_gl_input(F, random.Random(3), 2, 8), 8, 8)[2]
    assert verify_text(format_cert(cert)).ok


def test_rejects_tampered_factor():
    cert = gl_factor(gen.rand_gl_input(QQ, random.Random(1), 2, 10), 10, 8)[2]
    f1 = [list(row) for row in cert.factor1]
    f1[0][0] = f1[0][0] + S(QQ, {(5, 1): 1}, N=10, tag=Tag.V)
    bad = replace(cert, factor1=tuple(map(tuple, f1)))
    rep = verify_cert(bad)
    assert not rep.ok and any(ln.startswith("FAIL") for ln in rep.lines())


def test_rejects_wrong_side_and_short_trace():
    ch = cayley_chart(Q3)
    z0 = [S(QQ, {(1, 1): 1, (1, -1): 1}, N=8)] * 3
    cert = group_factor(ch, z0, 8, 8)[2]
    assert not verify_cert(replace(cert, factor1=cert.factor2, factor2=cert.factor1)).ok
    assert not verify_cert(replace(cert, trace=(1, 1, 8))).ok
    assert not verify_cert(replace(cert, residual_ord=4)).ok
