import random

import pytest
from hypothesis import given, settings

from conftest import S, seeds
from fieldpatch import generators as gen
from fieldpatch import matrices as mx
from fieldpatch.charts import cayley_chart
from fieldpatch.errors import CharacteristicTwo, TransitionNotIso
from fieldpatch.patching import (
    PatchingProblem,
    Tensor,
    TensorObject,
    isometry_between,
    isotropy_local_global_demo,
    patch_tensor_object,
    patch_vector_space,
    quadratic_value,
    transport,
    transport_tensor,
)
from fieldpatch.rational import RationalF, expand_rational
from fieldpatch.scalars import GF, QQ
from fieldpatch.series import PatchSeries, Tag
from fieldpatch.verify import verify_cert


def r(c, F=QQ):
    return RationalF.const(F, c)


def diag(*es):
    n = len(es)
    return [[es[i] if i == j else r(0) for j in range(n)] for i in range(n)]


def series_matrix(M, N, tag=Tag.F0):
    return [[expand_rational(e, tag, N) for e in row] for row in M]


def one(N=8):
    return PatchSeries.const(QQ, 1, Tag.F0, N)


X = RationalF.x(QQ)
Q2 = diag(r(1), r(-1))


# transport ----------------------------------------------------------------------------


def test_transport_of_gram_matrix():
    # x' = A x sends a Gram matrix G to A^-T G A^-1
    N = 6
    G = series_matrix(diag(r(1), r(2)), N)
    A = mx.identity(QQ, 2, N)
    A[0][1] = S(QQ, {(1, 0): 1}, N=N)
    Ainv = mx.inverse(A)
    out = transport_tensor(Tensor.gram(G), A, Ainv).as_matrix()
    assert mx.congruent(out, mx.mul(mx.mul(mx.transpose(Ainv), G), Ainv))


def test_transport_of_vector():
    N = 6
    A = mx.identity(QQ, 2, N)
    A[0][1] = S(QQ, {(1, 0): 2}, N=N)
    v = Tensor(1, 0, 2, (one(N), one(N)))
    out = transport_tensor(v, A, mx.inverse(A))
    assert out.data[0].congruent(one(N) + S(QQ, {(1, 0): 2}, N=N))


# vector spaces --------------------------------------------------------------------------


def test_patch_vector_space_examples():
    N = 12
    g1, g2, _ = patch_vector_space(mx.identity(QQ, 2, N), N)
    assert mx.congruent(g1, mx.identity(QQ, 2, N)) and mx.congruent(g2, mx.identity(QQ, 2, N))
    T = mx.identity(QQ, 2, N)
    T[0][0] = S(QQ, {(0, 0): 1, (1, -1): 1}, N=N)
    g1, _, _ = patch_vector_space(T, N)
    assert mx.congruent(g1, mx.identity(QQ, 2, N))
    T = gen.near_identity(QQ, random.Random(1), 3, N, nterms=2)
    assert verify_cert(patch_vector_space(T, N, 10)[2]).ok


# tensor objects ------------------------------------------------------------------------------


def test_quadratic_form_with_hyperbolic_rotation():
    N = 12
    ch = cayley_chart(Q2)
    G = Tensor.gram(Q2)
    side = TensorObject(2, (G,))
    for z in (S(QQ, {(1, 0): 1}, N=N), S(QQ, {(1, -1): 1, (1, 1): 1}, N=N)):
        T = ch.element([z], N, 12)
        res = patch_tensor_object(PatchingProblem(2, side, side, tuple(map(tuple, T))), (2, 2), N, 12)
        out = res.obj.tensors[0].as_matrix()
        # the glued form re-expands to both sides under the recorded bases
        g1, g2 = [list(x) for x in res.g1], [list(x) for x in res.g2]
        e1 = series_matrix(out, N, Tag.F1)
        e2 = series_matrix(out, N, Tag.F2)
        Qs = series_matrix(Q2, N)
        g1inv = mx.inverse(g1, 12)
        assert mx.congruent(mx.mul(mx.mul(mx.transpose(g1inv), e1), g1inv), Qs)
        assert mx.congruent(mx.mul(mx.mul(mx.transpose(g2), e2), g2), Qs)


def test_identity_transition_returns_common_object():
    G = [[r(1), X], [X, RationalF.t(QQ) + r(3)]]
    obj = TensorObject(2, (Tensor.gram(G),))
    N = 8
    res = patch_tensor_object(PatchingProblem(2, obj, obj, tuple(map(tuple, mx.identity(QQ, 2, N)))), (2, 2), N)
    assert res.obj == obj


def _matrix_algebra():
    """Structure constants c^k_ab of 2x2 matrices in the basis E11, E12, E21, E22."""
    c = [r(0)] * 64
    for i in range(2):
        for j in range(2):
            for l in range(2):
                a, b, k = 2 * i + j, 2 * j + l, 2 * i + l
                c[16 * k + 4 * a + b] = r(1)
    return Tensor(1, 2, 4, tuple(c))


def _conjugation_matrix(P, Pinv):
    """Matrix of X -> P X P^-1 on 2x2 matrices, columns indexed by E11, E12, E21, E22."""
    N = P[0][0].tprec
    A = mx.zeros(QQ, 4, 4, N)
    for m in range(4):
        E = mx.zeros(QQ, 2, 2, N)
        E[m // 2][m % 2] = one(N)
        img = mx.mul(mx.mul(P, E), Pinv)
        for k in range(4):
            A[k][m] = img[k // 2][k % 2]
    return A


def test_matrix_algebra_conjugation():
    N = 8
    P = mx.identity(QQ, 2, N)
    P[0][1] = S(QQ, {(1, 0): 1}, N=N)
    T = _conjugation_matrix(P, mx.inverse(P))
    obj = TensorObject(4, (_matrix_algebra(),))
    pp = PatchingProblem(4, obj, obj, tuple(map(tuple, T)))
    c = patch_tensor_object(pp, (2, 2), N).obj.tensors[0]
    zero = r(0)

    def mul(a, b):
        return [sum((a[i] * b[j] * c[(k, i, j)] for i in range(4) for j in range(4)), zero) for k in range(4)]

    basis = [[r(1) if i == j else zero for j in range(4)] for i in range(4)]
    ident = [r(1), zero, zero, r(1)]
    for a in basis:
        assert mul(ident, a) == a and mul(a, ident) == a
        for b in basis:
            for d in basis:
                assert mul(mul(a, b), d) == mul(a, mul(b, d))


def test_transition_not_an_isomorphism():
    N = 6
    side = TensorObject(2, (Tensor.gram(Q2),))
    T = mx.identity(QQ, 2, N)
    T[0][0] = S(QQ, {(0, 0): 1, (1, 0): 1}, N=N)
    with pytest.raises(TransitionNotIso):
        patch_tensor_object(PatchingProblem(2, side, side, tuple(map(tuple, T))), (2, 2), N)


@settings(max_examples=10)
@given(seeds)
def test_product_problems_round_trip(seed):
    rng = random.Random(seed)
    obj = TensorObject(2, (Tensor.gram(gen.rand_symmetric(QQ, rng, 2)),))
    pp = gen.product_problem(QQ, rng, obj, 10)
    assert patch_tensor_object(pp, (4, 4), 10).obj == obj


# isometries -----------------------------------------------------------------------------------


def _vec(*cs, N=8):
    return [PatchSeries.const(QQ, c, Tag.F0, N) for c in cs]


def _check_isometry(Q, g, v1, v2, N=8):
    Qs = series_matrix(Q, N)
    gv = [sum((g[i][j] * v1[j] for j in range(1, len(v1))), g[i][0] * v1[0]) for i in range(len(v1))]
    return mx.congruent(mx.mul(mx.mul(mx.transpose(g), Qs), g), Qs) and all(a.congruent(b) for a, b in zip(gv, v2))


def test_isometry_single_reflection():
    v1, v2 = _vec(1, 1), _vec(1, -1)
    g = isometry_between(Q2, v1, v2)
    assert _check_isometry(Q2, g, v1, v2)
    assert mx.congruent(g, series_matrix(diag(r(1), r(-1)), 8))


def test_isometry_equal_vectors_and_special():
    v = _vec(1, 1)
    assert mx.congruent(isometry_between(Q2, v, v), mx.identity(QQ, 2, 8))
    v1, v2 = _vec(1, 0, 0), _vec(0, 0, 1)
    Q = diag(r(1), r(-1), r(1))
    g = isometry_between(Q, v1, v2, want_special=True)
    assert _check_isometry(Q, g, v1, v2) and mx.det(g).congruent(one())


def test_isometry_needs_odd_characteristic():
    F = GF(2)
    with pytest.raises(CharacteristicTwo):
        isometry_between([[RationalF.const(F, 1)]], [PatchSeries.const(F, 1, Tag.F0, 4)],
                         [PatchSeries.const(F, 1, Tag.F0, 4)])


@settings(max_examples=20)
@given(seeds)
def test_isometry_hyperbolic_random(seed):
    rng = random.Random(seed)
    N = 8
    H = [[r(0), r(1), r(0), r(0)], [r(1), r(0), r(0), r(0)], [r(0), r(0), r(0), r(1)], [r(0), r(0), r(1), r(0)]]

    def isotropic():
        a = one(N) + gen.rand_small(QQ, rng, N)
        c, d = gen.rand_small(QQ, rng, N, min_ord=0), gen.rand_small(QQ, rng, N, min_ord=0)
        return [a, -(c * d) / a, c, d]

    v1, v2 = isotropic(), isotropic()
    g = isometry_between(H, v1, v2, want_special=True, N=N)
    assert _check_isometry(H, g, v1, v2, N) and mx.det(g).congruent(one(N))


# local-global isotropy -------------------------------------------------------------------------------


Q3 = diag(r(1), r(-1), X)
Y0 = (r(1), r(1), r(0))


def test_isotropy_first_skew_direction():
    N = 12
    z = [S(QQ, {(1, 0): 1}, N=N), PatchSeries.zero(QQ, Tag.F0, N), PatchSeries.zero(QQ, Tag.F0, N)]
    rep = isotropy_local_global_demo(Q3, Y0, z, N, (4, 4))
    assert rep.q_y.is_zero() and quadratic_value(Q3, rep.y).is_zero()
    assert rep.lines()[1] == "q(y) " + r(0).to_text()


def test_isotropy_zero_perturbation_returns_witness():
    N = 12
    z = [PatchSeries.zero(QQ, Tag.F0, N)] * 3
    assert isotropy_local_global_demo(Q3, Y0, z, N, (4, 4)).y == Y0


def test_isotropy_plane():
    N = 12
    rep = isotropy_local_global_demo(Q2, (r(1), r(1)), [S(QQ, {(1, 1): 1}, N=N)], N, (4, 4))
    assert quadratic_value(Q2, rep.y).is_zero() and any(not c.is_zero() for c in rep.y)


@settings(max_examples=5)
@given(seeds)
def test_isotropy_product_perturbations(seed):
    N = 12
    z = gen.product_perturbation(cayley_chart(Q3), random.Random(seed), N, 10)
    rep = isotropy_local_global_demo(Q3, Y0, z, N, (4, 4), 10)
    assert quadratic_value(Q3, rep.y).is_zero()
