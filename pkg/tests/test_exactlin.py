import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from chainkit.exactlin import Field, Matrix, complement, inverse, kernel_basis, rank, same_span, solve
from conftest import M

F2, F3 = Field(2), Field(3)


def test_rank_examples():
    assert rank(Matrix.zeros(F2, 0, 0)) == 0
    assert rank(Matrix.identity(F2, 2)) == 2
    assert rank(M(F2, [[1, 1], [1, 1]])) == 1


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(F2, 2)).shape == (2, 0)
    k = kernel_basis(Matrix.zeros(F2, 1, 3))
    assert k.shape == (3, 3) and rank(k) == 3
    k = kernel_basis(M(F2, [[1, 1]]))
    # enumerate F_2^2: the only nonzero kernel vector is (1, 1)
    vecs = [v for v in itertools.product(range(2), repeat=2) if (v[0] + v[1]) % 2 == 0 and any(v)]
    assert vecs == [(1, 1)]
    assert same_span(k, M(F2, [[1], [1]]))


def test_solve_examples():
    b = M(F3, [[1], [2]])
    assert solve(Matrix.identity(F3, 2), b) == b
    assert solve(Matrix.zeros(F3, 2, 2), Matrix.zeros(F3, 2, 1)).is_zero()
    x = solve(M(F3, [[1, 0]]), M(F3, [[2]]))
    assert x.tolist()[0][0] == 2
    assert solve(Matrix.zeros(F3, 1, 1), M(F3, [[1]])) is None


def test_complement_examples():
    assert same_span(complement(M(F2, [[1], [0]]), 2), M(F2, [[0], [1]]))
    assert complement(Matrix.identity(F2, 2), 2).cols == 0
    assert complement(M(F2, [[1], [1]]), 2) == M(F2, [[1], [0]])


def test_rational_entries():
    Q = Field(0)
    m = M(Q, [["1/2", 1], [0, "2/3"]])
    assert inverse(m) @ m == Matrix.identity(Q, 2)
    assert m.tolist()[0][0] == __import__("fractions").Fraction(1, 2)


def test_bad_prime():
    import pytest

    with pytest.raises(ValueError):
        Field(4)


mats = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=60, deadline=None)
@given(mats, st.sampled_from([2, 3, 5, 0]))
def test_rank_nullity(rows, p):
    F = Field(p)
    m = M(F, rows)
    k = kernel_basis(m)
    assert rank(m) + k.cols == m.cols
    assert (m @ k).is_zero()


@settings(max_examples=60, deadline=None)
@given(mats, st.sampled_from([2, 3, 0]))
def test_solve_consistent(rows, p):
    F = Field(p)
    m = M(F, rows)
    x0 = Matrix.from_rows(F, [[1]] * m.cols)
    b = m @ x0
    x = solve(m, b)
    assert x is not None and m @ x == b
