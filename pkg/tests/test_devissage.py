import random

import pytest
from hypothesis import given, settings, strategies as st

from chainkit.chaincore import ChainMap, Complex, betti, direct_sum, euler, is_quasi_iso
from chainkit.complicial import shift
from chainkit.devissage import (
    b_gamma, build_devissage, ca_identity_report, cell_membership, euler_of_T, geq, graded_euler, graded_euler_of,
    grid_A, grid_B, grid_C, grid_D, grid_E, grid_functor, heart, is_m_connected, leq, telescoping_holds,
    validate_devissage)
from chainkit.exactlin import Field, ShapeMismatch
from chainkit.filtered import FilteredObject, embed
from chainkit.gen import rand_complex, rand_heart

from conftest import D, S

FIELDS = [Field(2), Field(3), Field(5), Field(0)]


def test_cell_membership(field):
    assert [cell_membership(S(field, 2), 2, m) for m in ("=", "<=", ">=")] == [True] * 3
    assert all(cell_membership(D(field, 1), n, m) for n in range(-3, 4) for m in ("=", "<=", ">="))
    assert not cell_membership(direct_sum(S(field, 0), S(field, 3)), 2, "<=")
    assert cell_membership(S(field, 1), 2, "≤") and not cell_membership(S(field, 1), 2, "≥")
    with pytest.raises(ValueError):
        cell_membership(S(field, 0), 0, "<")


def test_m_connected(field):
    Z = Complex.zero(field)
    x = rand_complex(field, random.Random(1), -2, 2, 3)
    assert all(is_m_connected(ChainMap.identity(x), m) for m in range(-4, 5))
    f = ChainMap.zero(Z, S(field, 5))
    assert is_m_connected(f, 4) and not is_m_connected(f, 5)
    g = ChainMap.zero(S(field, 0), Z)
    assert is_m_connected(g, 0) and not is_m_connected(g, 1)


def test_validate_examples(field):
    Z = Complex.zero(field)
    assert validate_devissage(FilteredObject.zero(field))[0] is not None
    x = FilteredObject(field, 0, [Z, S(field, 1)], [ChainMap.zero(Z, S(field, 1))])
    dv, rep = validate_devissage(x)
    assert dv is not None and rep.ok
    x = FilteredObject(field, 0, [Z, S(field, 5)], [ChainMap.zero(Z, S(field, 5))])
    dv, rep = validate_devissage(x)
    assert dv is None and not rep.ok and "step 0" in rep.message


def test_build_examples(field):
    s = S(field, 0)
    b = build_devissage(s)
    assert b.filtration.x.stalk == s and b.a == ChainMap.identity(s)
    assert graded_euler(b.filtration) == {0: 1}
    b = build_devissage(D(field, 1))
    assert b.filtration.x.is_zero() and b.a.target == D(field, 1) and is_quasi_iso(b.a)
    assert graded_euler(b.filtration) == {}
    b = build_devissage(direct_sum(S(field, 0), S(field, 1)))
    assert b.filtration.x.b - b.filtration.x.a == 1
    assert graded_euler(b.filtration) == {0: 1, 1: -1}


def test_graded_euler_examples(field):
    assert graded_euler_of(embed(S(field, 0))) == {0: 1}
    assert graded_euler_of(FilteredObject.zero(field)) == {}


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), fi=st.integers(0, 3))
def test_build_random(seed, fi):
    rng = random.Random(seed)
    z = rand_complex(FIELDS[fi], rng, -3, 4, 4)
    bd = build_devissage(z)
    x = bd.filtration.x
    dv, rep = validate_devissage(x)
    assert rep.ok and dv is not None
    assert bd.a.target == z and bd.a.source == x.stalk and is_quasi_iso(bd.a)
    assert telescoping_holds(x) and sum(graded_euler(bd.filtration).values()) == euler(z)
    for k in range(x.a, x.b + 1):
        assert leq(k, x.stage(k))
    assert euler_of_T(z)


def test_acyclic_stalk_stages_in_heart(field, rng):
    # x_∞ acyclic: a two-stage filtration S(0) -> C S(0)
    from chainkit.complicial import cone_id, iota
    s = S(field, 0)
    x = FilteredObject(field, 0, [s, cone_id(s)], [iota(s)])
    dv, rep = validate_devissage(x)
    assert rep.ok
    assert all(heart(k, x.stage(k)) for k in range(x.a, x.b))


def test_T_system(field, rng):
    for n in range(-2, 3):
        h = rand_heart(field, rng, n)
        assert heart(n, h) and heart(n + 1, shift(h, 1))
    assert euler(shift(S(field, 0), 1)) == -1
    assert euler(shift(D(field, 1), 1)) == 0
    assert geq(0, S(field, 0)) and not leq(-1, S(field, 0))


def hearts(F, rng, a, b):
    return [rand_heart(F, rng, a + j) for j in range(b - a + 1)]


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), fi=st.integers(0, 3), a=st.integers(-2, 1), length=st.integers(1, 3))
def test_grid_identities(seed, fi, a, length):
    rng = random.Random(seed)
    F = FIELDS[fi]
    b = a + length
    v = hearts(F, rng, a, b)
    rep = ca_identity_report(a, b, v)
    assert rep.ok, rep.message
    A = grid_A(a, b, v)
    assert validate_devissage(A)[1].ok
    w = v[:-1]
    assert graded_euler_of(grid_A(a, b, grid_E(a, b, w))) == graded_euler_of(grid_B(a, b, w)) == b_gamma(a, b, w)
    Bx = grid_B(a, b, w)
    assert all(heart(k, Bx.stage(k)) for k in range(a, b + 1))
    assert betti(Bx.stalk) == {}
    assert grid_D(a, b, Bx) == [Bx.stage(k) for k in range(a, b)]
    C = grid_C(a, b, A)
    assert C[0] == v[0] and len(C) == len(v)


def test_grid_zero_and_errors(field):
    Z = Complex.zero(field)
    assert grid_A(0, 1, [Z, Z]).is_zero()
    with pytest.raises(ShapeMismatch):
        grid_A(0, 2, [Z, Z])
    with pytest.raises(ValueError):
        grid_A(0, 1, [S(field, 1), Z])
    with pytest.raises(ValueError):
        grid_functor("Z", 0, 1, [])
    assert grid_functor("E", 0, 1, [S(field, 0)])[1] == shift(S(field, 0), 1)
