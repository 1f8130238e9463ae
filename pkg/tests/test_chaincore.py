import pytest

from chainkit.chaincore import (
    ChainMap, Complex, betti, direct_sum, direct_sum_maps, euler, homology, is_contractible, is_quasi_iso,
    minimal_model, validate_complex)
from chainkit.complicial import cone_id
from chainkit.exactlin import Field, Matrix, ShapeMismatch
from chainkit.gen import rand_chain_map, rand_complex
from conftest import D, S

F2 = Field(2)


def test_validate_examples():
    assert validate_complex(Complex.zero(F2)).ok
    assert validate_complex(S(F2)).ok
    bad = Complex(F2, {0: 1, 1: 1, 2: 1}, {1: Matrix.identity(F2, 1), 2: Matrix.identity(F2, 1)})
    rep = validate_complex(bad)
    assert not rep.ok and "2" in rep.message


def test_direct_sum_examples():
    assert direct_sum(S(F2), Complex.zero(F2)) == S(F2)
    s = direct_sum(S(F2, 0), S(F2, 1))
    assert s.dims == {0: 1, 1: 1} and s.d(1).is_zero()
    assert direct_sum(D(F2), D(F2)).d(1) == Matrix.identity(F2, 2)


def test_homology_examples():
    assert homology(S(F2)).dims() == {0: 1}
    assert betti(D(F2)) == {}
    two = Complex(F2, {0: 1, 1: 1}, {1: Matrix.zeros(F2, 1, 1)})
    assert betti(two) == {0: 1, 1: 1}


def test_euler_examples():
    assert euler(Complex.zero(F2)) == 0
    assert euler(S(F2, 3)) == -1
    assert euler(D(F2)) == 0


def test_quasi_iso_examples():
    x = S(F2)
    assert is_quasi_iso(ChainMap.identity(x))
    Z = Complex.zero(F2)
    assert is_quasi_iso(ChainMap.zero(Z, D(F2)))
    assert not is_quasi_iso(ChainMap.zero(Z, S(F2)))


def test_contractible_examples():
    assert is_contractible(Complex.zero(F2))
    assert is_contractible(cone_id(S(F2)))
    assert not is_contractible(S(F2))


def test_minimal_model_examples():
    mm = minimal_model(S(F2))
    assert mm.model == S(F2) and mm.p == ChainMap.identity(S(F2)) and mm.s == mm.p
    mm = minimal_model(D(F2))
    assert mm.model.is_zero() and mm.check().ok
    two = Complex(F2, {0: 1, 1: 1})
    mm = minimal_model(two)
    assert mm.model == two and all(mm.h_at(n).is_zero() for n in range(-1, 3))


def test_chain_map_shape_errors():
    with pytest.raises(ShapeMismatch):
        ChainMap(S(F2), S(F2), {0: Matrix.identity(F2, 2)})


def test_random_minimal_models(field, rng):
    for _ in range(20):
        x = rand_complex(field, rng, -2, 3, 3)
        mm = minimal_model(x)
        assert mm.check().ok
        assert all(m.is_zero() for m in mm.model.diffs.values())
        assert is_quasi_iso(mm.p) and is_quasi_iso(mm.s)


def test_direct_sum_maps(field, rng):
    x, y = rand_complex(field, rng, -1, 2, 2), rand_complex(field, rng, -1, 2, 2)
    f, g = rand_chain_map(rng, x, y), rand_chain_map(rng, y, x)
    s = direct_sum_maps(f, g)
    assert s.is_chain_map()
    assert euler(direct_sum(x, y)) == euler(x) + euler(y)
