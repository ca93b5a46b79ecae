import random

import pytest
from hypothesis import HealthCheck, settings

from fieldpatch.exactalg import QQ, Field, Poly, RatFunc

settings.register_profile("fieldpatch", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("fieldpatch")


def poly(*cs, F=QQ) -> Poly:
    return Poly(F, [F(c) for c in cs])


def rf(num, den=(1,), F=QQ) -> RatFunc:
    """RatFunc from ascending coefficient tuples."""
    return RatFunc(Poly(F, [F(c) for c in num]), Poly(F, [F(c) for c in den]))


X = RatFunc.x(QQ)
ONE = RatFunc.const(QQ, 1)


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture(params=[0, 5])
def field(request):
    return Field(request.param)
