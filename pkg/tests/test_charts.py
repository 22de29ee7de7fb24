import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import S, seeds
from fieldpatch import generators as gen
from fieldpatch import matrices as mx
from fieldpatch.charts import (
    cayley_chart,
    chart_epsilon,
    check_standard_position,
    gl_chart,
    local_invert,
    raw_chart,
    so_compose_matrix,
    taylor_error_check,
    weil_restrict_chart,
)
from fieldpatch.errors import CharacteristicTwo, NonMonicModulus, SingularForm, StandardPositionError
from fieldpatch.mpoly import MPoly, RatMap
from fieldpatch.rational import RationalF, expand_rational
from fieldpatch.scalars import GF, QQ
from fieldpatch.series import PatchSeries, Tag


def r(c, F=QQ):
    return RationalF.const(F, c)


def diag(*es, F=QQ):
    n = len(es)
    return [[es[i] if i == j else r(0, F) for j in range(n)] for i in range(n)]


def raw1(terms, F=QQ):
    """One-dimensional raw chart f(x, y) from {(i, j): RationalF}."""
    return raw_chart([RatMap(MPoly(2, terms))], F)


Q2 = diag(r(1), r(-1))
X = RationalF.x(QQ)
T = RationalF.t(QQ)
QS = [
    diag(r(1), r(-1)),
    [[r(2), r(1)], [r(1), r(3)]],
    diag(r(1), r(-1), X),
    diag(r(1), r(-1), X + T),
    [[r(1), r(1), r(0)], [r(1), r(0), r(2)], [r(0), r(2), X]],
]


# GL charts ------------------------------------------------------------------------


def test_gl1_coordinates():
    ch = gl_chart(1, QQ)
    one = r(1)
    assert ch.coords[0] == RatMap(MPoly(2, {(1, 0): one, (0, 1): one, (1, 1): one}))


def test_gl2_entry():
    ch = gl_chart(2, QQ)
    f11 = ch.coords[0].num.terms
    one = r(1)
    assert f11 == {(1, 0, 0, 0, 0, 0, 0, 0): one, (0, 0, 0, 0, 1, 0, 0, 0): one,
                   (1, 0, 0, 0, 1, 0, 0, 0): one, (0, 1, 0, 0, 0, 0, 1, 0): one}


def test_gl_threshold_and_position():
    for n in (1, 2, 3):
        ch = gl_chart(n, QQ)
        assert check_standard_position(ch).ok
        th = chart_epsilon(ch)
        assert (th.s, th.N0) == (0, 1)


# standard position ---------------------------------------------------------------------


def test_position_violations():
    one = r(1)
    rep = check_standard_position(raw1({(1, 0): one, (0, 1): r(2), (1, 1): one}))
    assert not rep.ok and rep.violation == "linear part"
    rep = check_standard_position(raw1({(1, 0): one, (0, 1): one, (0, 0): one}))
    assert not rep.ok and rep.violation == "constant term"
    assert str(rep) == "violation: constant term (coordinate 0)"
    with pytest.raises(StandardPositionError):
        chart_epsilon(raw1({(1, 0): one, (0, 1): r(2)}))


def test_epsilon_with_t_pole():
    one = r(1)
    tinv = RationalF(T.den, T.num)
    ch = raw1({(1, 0): one, (0, 1): one, (1, 1): tinv})
    th = chart_epsilon(ch)
    assert th.s == Fraction(1, 2) and th.N0 == 2


def test_cayley_threshold_small():
    th = chart_epsilon(cayley_chart(Q2))
    assert th.N0 <= 2


# Cayley charts ---------------------------------------------------------------------------


def test_cayley_2x2_closed_form():
    ch = cayley_chart(Q2)
    N = 8
    z = S(QQ, {(1, 1): 1, (2, -1): 2}, N=N)
    g = ch.element([z], N, 12)
    one = PatchSeries.const(QQ, 1, Tag.F0, N)
    inv = (one - z * z).invert(uprec=12)
    assert g[0][0].congruent((one + z * z) * inv)
    assert g[0][1].congruent(z * inv * 2)
    assert g[1][0].congruent(g[0][1]) and g[1][1].congruent(g[0][0])


def test_cayley_identity():
    for Q in QS:
        ch = cayley_chart(Q)
        z = [PatchSeries.zero(QQ, Tag.F0, 5)] * ch.d
        assert mx.congruent(ch.element(z, 5), mx.identity(QQ, len(Q), 5))


def test_cayley_errors():
    F2 = GF(2)
    with pytest.raises(CharacteristicTwo):
        cayley_chart(diag(r(1, F2), r(1, F2), F=F2))
    with pytest.raises(SingularForm):
        cayley_chart([[r(1), r(1)], [r(1), r(1)]])
    with pytest.raises(SingularForm):
        cayley_chart([[r(1), r(2)], [r(0), r(1)]])


def test_cayley_charts_in_standard_position():
    for Q in QS:
        assert check_standard_position(cayley_chart(Q)).ok


@pytest.mark.parametrize("Q", QS, ids=lambda Q: f"n{len(Q)}")
def test_closed_form_matches_matrix_formula(Q):
    ch = cayley_chart(Q)
    rng = random.Random(len(Q))
    N = 8
    for _ in range(3):
        xs = [gen.rand_small(QQ, rng, N) for _ in range(ch.d)]
        ys = [gen.rand_small(QQ, rng, N) for _ in range(ch.d)]
        fast = ch.multiply(xs, ys, N, 12)
        slow = so_compose_matrix(ch, xs, ys, N, 12)
        assert all(a.congruent(b) for a, b in zip(fast, slow))
        gz = ch.element(fast, N, 12)
        assert mx.congruent(mx.mul(ch.element(xs, N, 12), ch.element(ys, N, 12)), gz)


@given(seeds, st.sampled_from(range(len(QS))))
def test_cayley_membership(seed, k):
    Q = QS[k]
    ch = cayley_chart(Q)
    rng = random.Random(seed)
    N = 8
    z = [gen.rand_small(QQ, rng, N) for _ in range(ch.d)]
    g = ch.element(z, N, 12)
    Qs = [[expand_rational(q, Tag.FRAT, N) for q in row] for row in Q]
    assert mx.congruent(mx.mul(mx.mul(mx.transpose(g), Qs), g), Qs)
    back = ch.coordinates_of(g, 12)
    assert all(a.congruent(b) for a, b in zip(back, z))


# Weil restriction ---------------------------------------------------------------------------


def test_weil_dual_numbers():
    ch = weil_restrict_chart(gl_chart(1, QQ), (0, 0, 1))
    one = r(1)
    f0, f1 = (c.num.terms for c in ch.coords)
    assert f0 == {(1, 0, 0, 0): one, (0, 0, 1, 0): one, (1, 0, 1, 0): one}
    assert f1 == {(0, 1, 0, 0): one, (0, 0, 0, 1): one, (1, 0, 0, 1): one, (0, 1, 1, 0): one}
    assert check_standard_position(ch).ok


def test_weil_trivial_extension_and_errors():
    g = gl_chart(1, QQ)
    assert weil_restrict_chart(g, (3, 1)) is g
    with pytest.raises(NonMonicModulus):
        weil_restrict_chart(g, (1, 0, 2))


def test_weil_of_cayley_multiplies_in_the_algebra():
    base = cayley_chart(Q2)
    ch = weil_restrict_chart(base, (-1, 0, 1))
    rng = random.Random(3)
    N = 6
    xs = [gen.rand_small(QQ, rng, N) for _ in range(2)]
    ys = [gen.rand_small(QQ, rng, N) for _ in range(2)]
    z = ch.multiply(xs, ys, N, 12)
    # under s -> +1 and s -> -1 the restricted law becomes two copies of the base law
    for sign in (1, -1):
        proj = lambda v: [v[0] + v[1] * sign]
        assert base.multiply(proj(xs), proj(ys), N, 12)[0].congruent(proj(z)[0])


# Taylor inequality and local inversion ----------------------------------------------------------


def test_taylor_example():
    ch = gl_chart(1, QQ)
    t = S(QQ, {(1, 0): 1}, N=8)
    t2 = S(QQ, {(2, 0): 1}, N=8)
    zero = PatchSeries.zero(QQ, Tag.F0, 8)
    assert taylor_error_check(ch, 0, [t, t], [t2, zero], 8)
    assert taylor_error_check(ch, 0, [t, t], [zero, zero], 8)


@given(seeds)
def test_taylor_inequality_random(seed):
    rng = random.Random(seed)
    for ch in (gl_chart(2, QQ), cayley_chart(Q2)):
        N0 = ch.threshold().N0
        a = [gen.rand_small(QQ, rng, 8, min_ord=N0) for _ in range(2 * ch.d)]
        h = [gen.rand_small(QQ, rng, 8, min_ord=N0) for _ in range(2 * ch.d)]
        assert all(taylor_error_check(ch, k, a, h, 8) for k in range(ch.d))


def test_local_invert_identity_and_lagrange():
    one = r(1)
    ident = [RatMap(MPoly(1, {(1,): one}))]
    N = 8
    t = S(QQ, {(1, 0): 1}, N=N)
    assert local_invert(ident, [t], N)[0].congruent(t)
    sq = [RatMap(MPoly(1, {(1,): one, (2,): one}))]
    trace = []
    b = local_invert(sq, [t], N, trace=trace)[0]
    # compositional inverse of x + x^2: sum of (-1)^(n-1) Catalan(n-1) t^n
    catalan = [1, 1, 2, 5, 14, 42, 132]
    expect = S(QQ, {(n, 0): (-1) ** (n - 1) * catalan[n - 1] for n in range(1, N)}, N=N)
    assert b.congruent(expect)
    assert all(o2 > o1 for o1, o2 in zip(trace, trace[1:]))


@given(seeds)
def test_local_invert_injective(seed):
    rng = random.Random(seed)
    one = r(1)
    sq = [RatMap(MPoly(1, {(1,): one, (2,): one}))]
    a = gen.rand_small(QQ, rng, 6, min_ord=1)
    b = gen.rand_small(QQ, rng, 6, min_ord=1)
    fa = sq[0].evaluate([a], 6)
    fb = sq[0].evaluate([b], 6)
    if not a.congruent(b):
        assert not fa.congruent(fb)
