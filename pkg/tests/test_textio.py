import random

import pytest
from hypothesis import given

from conftest import L, S, fields, seeds
from fieldpatch import generators as gen
from fieldpatch.charts import cayley_chart, gl_chart, raw_chart, weil_restrict_chart
from fieldpatch.errors import ParseError
from fieldpatch.factorization import gl_factor, group_factor
from fieldpatch.mpoly import MPoly, RatMap
from fieldpatch.patching import Tensor, TensorObject
from fieldpatch.rational import RationalF
from fieldpatch.scalars import GF, QQ
from fieldpatch.series import Tag
from fieldpatch.textio import fmt, format_cert, parse, parse_cert


def r(c, F=QQ):
    return RationalF.const(F, c)


def roundtrip(obj, F=QQ):
    text = fmt(obj)
    back = parse(text, F)
    assert fmt(back) == text
    return back


@given(fields, seeds)
def test_series_round_trip(F, seed):
    rng = random.Random(seed)
    v = gen.rand_small(F, rng, 5, Tag.V, 0, 3, 1, 3)
    w = gen.rand_small(F, rng, 5, Tag.W, 0, 3, -3, 0)
    for a in (gen.rand_series(F, rng, 5, 4), gen.rand_series(F, rng, 5), v, w,
              v.promote(Tag.F1), w.promote(Tag.F2)):
        assert roundtrip(a, F) == a


@given(fields, seeds)
def test_rational_round_trip(F, seed):
    f = gen.rand_rational(F, random.Random(seed), 2, 2)
    assert roundtrip(f, F) == f


def test_laurent_and_vector_round_trip():
    c = L(QQ, {-1: 2, 3: QQ(1) / 3}, 5)
    assert roundtrip(c) == c
    v = [S(QQ, {(1, 1): 1}, N=3), S(QQ, {(0, 0): -1}, N=3)]
    assert list(roundtrip(v)) == v
    M = [[r(1), RationalF.x(QQ)], [r(0), RationalF.t(QQ)]]
    assert [list(row) for row in roundtrip(M)] == M


def test_chart_round_trip():
    one = r(1)
    Q = [[r(1), r(0)], [r(0), r(-1)]]
    for ch in (gl_chart(2, QQ), cayley_chart(Q), weil_restrict_chart(gl_chart(1, QQ), (-1, 0, 1)),
               raw_chart([RatMap(MPoly(2, {(1, 0): one, (0, 1): one, (1, 1): r(3)}))], QQ)):
        back = roundtrip(ch)
        assert back.kind == ch.kind and back.d == ch.d


def test_problem_and_tensor_round_trip():
    T = Tensor.gram([[r(1), r(2)], [r(2), RationalF.x(QQ)]])
    assert roundtrip(T) == T
    obj = TensorObject(2, (T,))
    pp = gen.product_problem(QQ, random.Random(0), obj, 4)
    roundtrip(pp)


def test_cert_round_trip():
    g0 = gen.rand_gl_input(QQ, random.Random(5), 2, 8)
    cert = gl_factor(g0, 8, 8)[2]
    text = format_cert(cert)
    assert parse_cert(text) == cert and format_cert(parse_cert(text)) == text
    ch = cayley_chart([[r(1), r(0)], [r(0), r(-1)]])
    cert = group_factor(ch, [S(QQ, {(1, 1): 1, (1, -1): 1}, N=8)], 8, 8)[2]
    assert format_cert(parse_cert(format_cert(cert))) == format_cert(cert)


def test_whitespace_insensitive():
    a = parse("series(F0,0,2)[{0:1|inf};{1:2|4}]", QQ)
    assert a == parse("series( F0 , 0 , 2 )\n[ { 0:1 | inf } ;\n  { 1 : 2 | 4 } ]", QQ)


def test_finite_field_scalars():
    a = parse("series(W, 0, 1) [ { -1:7 | inf } ]", GF(5))
    assert a.coeff(0)[-1] == GF(5)(2)


@pytest.mark.parametrize("text", [
    "series(F0, 0, 2) [ { 0:1 | inf } ]",
    "series(Q, 0, 1) [ { | inf } ]",
    "rat( x^0 t^0 * 1 ; )",
    "rat( x^0 t^0 * 1 ; x^0 t^0 * 0 )",
    "matrix(2,2) [ rat( x^0 t^0 * 1 ; x^0 t^0 * 1 ) ]",
    "{ 0:1 | inf } extra",
    "fieldpatch-certificate 1\nkind gl\nend",
    "series(F0, 0, 1) [ { 0:1/0 | inf } ]",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        if text.startswith("fieldpatch-certificate"):
            parse_cert(text)
        else:
            parse(text, QQ)
