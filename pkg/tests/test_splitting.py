import random

import pytest
from hypothesis import given

from conftest import INF, L, S, fields, rat, seeds
from fieldpatch import generators as gen
from fieldpatch.errors import BranchMismatch, NoSolution, NotInRing, PrecisionError
from fieldpatch.rational import expand_rational
from fieldpatch.scalars import QQ
from fieldpatch.series import Laurent, PatchSeries, Tag
from fieldpatch.splitting import additive_factor, intersect_reconstruct, split_residue


def test_split_residue_examples():
    w, v = split_residue(L(QQ, {-2: 1, 0: 3, 1: 1, 3: 1}, 5))
    assert dict(w.terms) == {-2: 1, 0: 3} and w.is_exact()
    assert dict(v.terms) == {1: 1, 3: 1} and v.uprec == 5
    w, v = split_residue(Laurent.zero(QQ))
    assert w.is_zero() and v.is_zero()
    w, v = split_residue(L(QQ, {0: 1, 1: 1, 2: 1, 3: 1}, 4))
    assert dict(w.terms) == {0: 1} and dict(v.terms) == {1: 1, 2: 1, 3: 1}


def test_split_affine_geometric_series():
    a = S(QQ, {(i, -i): 1 for i in range(6)}, N=6)
    sp = additive_factor(a)
    assert sp.v.is_zero()
    assert sp.w == a.retag(Tag.W)


def test_split_infinity_geometric_series():
    a = S(QQ, {(i, i): 1 for i in range(6)}, N=6)
    sp = additive_factor(a)
    assert sp.w == S(QQ, {(0, 0): 1}, N=6, tag=Tag.W)
    assert sp.v == (a - PatchSeries.const(QQ, 1, Tag.F0, 6)).retag(Tag.V)


def test_split_square_coefficient():
    # 1/(1 - t(x + u)): t^2 coefficient is x^2 + 2 + u^2
    a = (PatchSeries.const(QQ, 1, Tag.F0, 4) - S(QQ, {(1, -1): 1, (1, 1): 1}, N=4)).invert()
    sp = additive_factor(a)
    assert dict(sp.w.coeff(2).terms) == {-2: 1, 0: 2}
    assert dict(sp.v.coeff(2).terms) == {2: 1}


def test_split_rejects_t_pole_and_excess_precision():
    with pytest.raises(NotInRing):
        additive_factor(S(QQ, {(-1, 0): 1}, N=3))
    with pytest.raises(PrecisionError):
        additive_factor(S(QQ, {(0, 0): 1}, N=3), N=5)


@given(fields, seeds)
def test_additive_factor_completeness(F, seed):
    r = random.Random(seed)
    a = gen.rand_series(F, r, 10, 8)
    sp = additive_factor(a)
    assert sp.v + sp.w == a
    assert sp.v.is_valid() and sp.w.is_valid()
    assert all(min(c.terms, default=1) >= 1 for c in sp.v.coeffs)
    assert all(max(c.terms, default=0) <= 0 and c.is_exact() for c in sp.w.coeffs)


@given(fields, seeds)
def test_split_is_linear(F, seed):
    r = random.Random(seed)
    c1 = gen.rand_laurent(F, r, -3, 5, 6)
    c2 = gen.rand_laurent(F, r, -3, 5, 6)
    w1, v1 = split_residue(c1)
    w2, v2 = split_residue(c2)
    w, v = split_residue(c1 + c2)
    assert w == w1 + w2 and v == v1 + v2


# reconstruction ------------------------------------------------------------------------


def test_reconstruct_geometric_series():
    a2 = S(QQ, {(i, -i): 1 for i in range(8)}, N=8, tag=Tag.F2)
    a1 = S(QQ, {(i, -i): 1 for i in range(8)}, N=8, tag=Tag.F1)
    f = intersect_reconstruct(a1, a2, (1, 1))
    assert f == rat(QQ, {(0, 0): 1}, {(0, 0): 1, (1, 1): -1})


def test_reconstruct_constant():
    a = PatchSeries.const(QQ, 3, Tag.F1, 5)
    f = intersect_reconstruct(a, PatchSeries.const(QQ, 3, Tag.F2, 5), (1, 1))
    assert f == rat(QQ, {(0, 0): 3})


def test_reconstruct_no_solution():
    N = 6
    a = S(QQ, {(i, -i * i): 1 for i in range(N)}, N=N)
    with pytest.raises(NoSolution):
        intersect_reconstruct(a, a, (3, 3))


def test_reconstruct_branch_mismatch():
    a1 = S(QQ, {(0, 1): 1}, N=4, uprec=6)
    a2 = S(QQ, {(0, 0): 1}, N=4)
    with pytest.raises(BranchMismatch):
        intersect_reconstruct(a1, a2, (1, 1))


@given(fields, seeds)
def test_reconstruct_inverts_expansion(F, seed):
    r = random.Random(seed)
    f = gen.rand_rational(F, r, 2, 2)
    a1 = expand_rational(f, Tag.F1, 12, 10)
    a2 = expand_rational(f, Tag.F2, 12, 10)
    assert intersect_reconstruct(a1, a2, (2, 2)) == f
