import random

import pytest

from chainkit.chaincore import Complex
from chainkit.exactlin import Field, Matrix

FIELDS = [Field(2), Field(3), Field(5), Field(0)]


def S(F, n=0, k=1):
    """k copies of the sphere in degree n."""
    return Complex(F, {n: k})


def D(F, n=1):
    """Disc: identity differential from degree n to n-1."""
    return Complex(F, {n - 1: 1, n: 1}, {n: Matrix.identity(F, 1)})


def M(F, rows, cols=None):
    return Matrix.from_rows(F, rows, cols)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(params=FIELDS, ids=repr)
def field(request):
    return request.param
