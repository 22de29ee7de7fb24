import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from fieldpatch.rational import Poly2, RationalF
from fieldpatch.scalars import GF, QQ
from fieldpatch.series import Laurent, PatchSeries, Tag

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

FIELDS = [QQ, GF(5), GF(101)]
INF = float("inf")


@pytest.fixture(params=FIELDS, ids=lambda F: F.spec)
def field(request):
    return request.param


@pytest.fixture
def rng():
    return random.Random(12345)


def S(F, terms, N=8, tag=Tag.F0, uprec=INF):
    """Series from {(t_degree, u_exponent): coeff}."""
    return PatchSeries.from_terms(F, terms, tag, N, uprec)


def L(F, terms, uprec=INF):
    return Laurent(F, terms, uprec)


def rat(F, num, den=None):
    """RationalF from dicts {(x_deg, t_deg): coeff}."""
    d = Poly2(F, den) if den is not None else Poly2.const(F, 1)
    return RationalF(Poly2(F, num), d)


fields = st.sampled_from(FIELDS)
seeds = st.integers(min_value=0, max_value=2**32 - 1)
