import pytest

from chainkit.chaincore import ChainMap, Complex
from chainkit.complicial import (
    FUNCTORS, apply_functor, apply_functor_map, cone_id, iota, l, nat, shift, tau, verify_complicial_identities)
from chainkit.exactlin import Field, Matrix
from chainkit.gen import rand_chain_map, rand_complex
from conftest import D, M, S

F2, F3 = Field(2), Field(3)


def test_functor_examples():
    c = apply_functor("C", S(F3))
    assert c.dims == {0: 1, 1: 1} and c.d(1) == M(F3, [[-1]])
    t = apply_functor("T", S(F3))
    assert t == S(F3, 1)
    p = apply_functor("P", S(F3))
    assert p.dims == {-1: 1, 0: 1} and p.d(0) == M(F3, [[-1]])


def test_functor_map_examples(rng):
    x = rand_complex(F3, rng, -1, 2, 2)
    assert apply_functor_map("C", ChainMap.identity(x)) == ChainMap.identity(cone_id(x))
    assert apply_functor_map("T", ChainMap.zero(x, x)).is_zero()
    f = ChainMap(S(F3), D(F3), {0: Matrix.identity(F3, 1)})
    assert f.is_chain_map()
    Cf = apply_functor_map("C", f)
    assert Cf.is_chain_map()
    assert Cf[1] == M(F3, [[1], [0]])  # (S_0 ⊕ S_1) -> (D_0 ⊕ D_1), block diag(f_0, f_1)
    assert Cf[0] == M(F3, [[1]])


def test_nat_examples(rng):
    assert iota(S(F2))[0] == M(F2, [[1]])
    x = rand_complex(F3, rng, -2, 2, 3)
    t = tau("T", "T", x)
    assert t == -ChainMap.identity(shift(x, 2))
    assert l(x) == -ChainMap.identity(shift(cone_id(x), 1))
    assert nat("l", x) == l(x)
    with pytest.raises(KeyError):
        nat("tau", x)


def test_tau_pairs_are_chain_maps(field, rng):
    x = rand_complex(field, rng, -2, 2, 3)
    for a in FUNCTORS:
        for b in FUNCTORS:
            assert tau(a, b, x).is_chain_map()


def test_identities_trivial():
    assert verify_complicial_identities(Complex.zero(F2)).ok
    assert verify_complicial_identities(S(F2)).ok


def test_identities_random(field, rng):
    for _ in range(5):
        x = rand_complex(field, rng, -2, 2, 3)
        rep = verify_complicial_identities(x)
        assert rep.ok, rep.message


def test_functors_on_maps_compose(field, rng):
    x, y, z = (rand_complex(field, rng, -1, 2, 2) for _ in range(3))
    f, g = rand_chain_map(rng, x, y), rand_chain_map(rng, y, z)
    for tag in FUNCTORS:
        assert apply_functor_map(tag, g @ f) == apply_functor_map(tag, g) @ apply_functor_map(tag, f)
