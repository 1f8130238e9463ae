import random

import pytest
from hypothesis import given, settings, strategies as st

from chainkit.chaincore import ChainMap, Complex, betti, euler, is_quasi_iso
from chainkit.complicial import cone_id, shift
from chainkit.conecyl import cone_complex
from chainkit.exactlin import Field
from chainkit.gen import rand_bicomplex, rand_chain_map, rand_complex, rand_level_qis
from chainkit.totred import (
    BiComplex, OuterMap, canonical_factorization, euler_alternating, outer_cone, reduce_full, reduce_once,
    single_column, tot, tot_antidiagonal, tot_map)

FIELDS = [Field(2), Field(3), Field(5), Field(0)]


def two_col_id(z):
    return BiComplex(z.field, 0, [z, z], {1: ChainMap.identity(z)})


def test_single_column(field, rng):
    for _ in range(5):
        z = rand_complex(field, rng, -2, 3, 3)
        assert tot(single_column(z)) == z
        for n in range(-3, 4):
            assert tot(single_column(z, n)) == shift(z, n)


def test_tot_of_identity_is_C(field, rng):
    z = rand_complex(field, rng, -2, 3, 3)
    assert tot(two_col_id(z)) == cone_id(z)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), fi=st.integers(0, 3), a=st.integers(-3, 2), length=st.integers(1, 4))
def test_tot_properties(seed, fi, a, length):
    rng = random.Random(seed)
    F = FIELDS[fi]
    z = rand_bicomplex(F, rng, a, a + length - 1)
    assert z.check().ok
    T = tot(z)
    assert T == tot_antidiagonal(z)
    assert euler(T) == euler_alternating(z)
    dims = {}
    for p in range(z.a, z.b + 1):
        for q in z.col(p).dims:
            dims[p + q] = dims.get(p + q, 0) + z.col(p).dim(q)
    assert all(T.dim(n) == d for n, d in dims.items())
    r = reduce_full(z)
    assert r.core == shift(T, r.m)
    sup = z.support
    assert len(r.steps) == (sup[1] - sup[0] if sup else 0)


def test_reduce_once(field, rng):
    z = rand_bicomplex(field, rng, 0, 1)
    red = reduce_once(1, z)
    assert red.check().ok
    assert red.L.b == 0
    assert betti(tot(z)) == betti(tot(red.L))
    assert red.L.col(0) == cone_complex(z.d(1))
    z2 = BiComplex(field, 0, [Complex.zero(field), Complex(field, {0: 1})])
    with pytest.raises(ValueError):
        reduce_once(0, z2)


def test_reduce_boundary(field, rng):
    zk = rand_complex(field, rng, -1, 2, 3)
    red = reduce_once(2, single_column(zk, 2))
    assert red.check().ok
    assert red.L.col(1) == cone_complex(ChainMap.zero(zk, Complex.zero(field)))
    zero = reduce_once(1, BiComplex(field, 0, [Complex.zero(field)] * 2))
    assert zero.L.is_zero() and zero.Q.is_zero()


def test_reduce_full_examples(field, rng):
    z = rand_complex(field, rng, -2, 3, 3)
    for n in (-2, 0, 3):
        r = reduce_full(single_column(z, n))
        assert r.core == shift(z, n + r.m)
    r = reduce_full(two_col_id(z))
    assert euler(r.core) == 0


def test_factorization_examples(field, rng):
    z = rand_complex(field, rng, -2, 3, 3)
    x = single_column(z)
    fa = canonical_factorization(x, ChainMap.identity(z))
    assert fa.check().ok
    assert fa.z_u == x
    assert fa.a_u == ChainMap.identity(z)
    x = rand_bicomplex(field, rng, 0, 2)
    T = tot(x)
    fa = canonical_factorization(x, ChainMap.identity(T))
    assert fa.check().ok


def test_factorization_random(field, rng):
    for n in range(0, 3):
        x = rand_bicomplex(field, rng, 0, n)
        y = rand_complex(field, rng, -2, 3, 3)
        u = rand_chain_map(rng, tot(x), y)
        fa = canonical_factorization(x, u)
        assert fa.check().ok
        assert fa.a_u @ tot_map(fa.lift) == u
        assert is_quasi_iso(fa.a_u)


def test_factorization_support(field, rng):
    x = rand_bicomplex(field, rng, -1, 1)
    with pytest.raises(ValueError):
        canonical_factorization(x, ChainMap.identity(tot(x)))


def test_level_qis_gives_tot_qis(field, rng):
    for a, b in ((0, 0), (0, 2), (-2, 1)):
        z = rand_bicomplex(field, rng, a, b)
        phi = rand_level_qis(field, rng, z)
        assert phi.check().ok and phi.is_level_quasi_iso()
        t = tot_map(phi)
        assert t.is_chain_map() and is_quasi_iso(t)


def test_tot_map_functorial(field, rng):
    z = rand_bicomplex(field, rng, -1, 1)
    assert tot_map(OuterMap.identity(z)) == ChainMap.identity(tot(z))
    phi = rand_level_qis(field, rng, z)
    psi = rand_level_qis(field, rng, phi.target)
    assert tot_map(psi @ phi) == tot_map(psi) @ tot_map(phi)


def test_outer_cone_exactness(field, rng):
    z = rand_bicomplex(field, rng, 0, 2)
    phi = rand_level_qis(field, rng, z)
    c = outer_cone(phi)
    assert c.check().ok
    lhs, rhs = tot(c), cone_complex(tot_map(phi))
    assert all(lhs.dim(n) == rhs.dim(n) for n in set(lhs.dims) | set(rhs.dims))
    assert betti(lhs) == betti(rhs) == {}
    assert euler(lhs) == euler(tot(phi.target)) - euler(tot(z))
