import pytest

from chainkit.chaincore import ChainMap, minimal_model
from chainkit.exactlin import Field, Matrix
from chainkit.gen import null_homotopic, rand_chain_map, rand_complex, rand_family, rand_grid
from chainkit.homotopy import (
    CHomotopy, HomotopyError, HomotopySquare, bullet_C, bullet_P, cc_interchange_witness, convert_A, convert_B, identity_square,
    make_c_homotopy, make_p_homotopy, merge_homotopy_inverses, star_C, star_P, zero_homotopy)
from conftest import D

F2, F3 = Field(2), Field(3)


def contraction(F):
    x = D(F)
    return make_c_homotopy(ChainMap.identity(x), ChainMap.zero(x, x), {0: Matrix.identity(F, 1)})


def test_make_examples(rng):
    x = rand_complex(F3, rng, -1, 2, 2)
    f = rand_chain_map(rng, x, x)
    assert make_c_homotopy(f, f, {}) == zero_homotopy(f)
    assert contraction(F3).is_valid()
    g = f + ChainMap.identity(x)
    if not x.is_zero():
        with pytest.raises(HomotopyError):
            make_c_homotopy(f, g, {})


def test_conversion_examples(field, rng):
    x = rand_complex(field, rng, -1, 2, 2)
    f = rand_chain_map(rng, x, x)
    assert convert_A(zero_homotopy(f)) == make_p_homotopy(f, f, {})
    H = contraction(field)
    assert convert_B(convert_A(H)) == H
    y = rand_complex(field, rng, -1, 2, 2)
    f = rand_chain_map(rng, x, y)
    h = rand_family(field, rng, x, y, 1)
    P = make_p_homotopy(f, f - null_homotopic(x, y, h), h)
    assert convert_A(convert_B(P)) == P


def test_square_units(field, rng):
    objs, horiz, vert, sq = rand_grid(field, rng, 2, 2)
    s = sq[0][0]
    assert star_C(identity_square(s.g), s) == s
    assert star_C(s, identity_square(s.f)) == s
    z = identity_square(s.f)
    assert star_C(z, z) == z


def test_star_associative_and_P_agrees(field, rng):
    objs, horiz, vert, sq = rand_grid(field, rng, 4, 3)
    a, b, c = sq[0][0], sq[1][0], sq[2][0]
    assert star_C(c, star_C(b, a)) == star_C(star_C(c, b), a)
    assert star_P(b, a) == star_C(b, a)
    assert bullet_P(sq[0][1], a) == bullet_C(sq[0][1], a)


def test_interchange_witness(field, rng):
    objs, horiz, vert, sq = rand_grid(field, rng, 3, 3)
    W = cc_interchange_witness(sq[0][0], sq[1][0], sq[0][1], sq[1][1])
    assert W.is_valid()


def test_interchange_zero():
    F = F2
    x = D(F)
    i = ChainMap.identity(x)
    s = identity_square(i)
    W = cc_interchange_witness(s, s, s, s)
    assert W.is_valid() and W.S.is_zero()


def test_merge_inverses(field, rng):
    x = rand_complex(field, rng, -2, 2, 3)
    mm = minimal_model(x)
    # s: model -> x, p: x -> model with p s = id and s p ~ id
    f, g, h = mm.p, mm.s, mm.s
    H = make_c_homotopy(h @ f, ChainMap.identity(x), {n: -mm.h_at(n) for n in x.dims})
    if not H.is_valid():
        H = make_c_homotopy(h @ f, ChainMap.identity(x), {n: mm.h_at(n) for n in x.dims})
    K = zero_homotopy(f @ g)
    A, B = merge_homotopy_inverses(f, g, h, H, K)
    assert A.is_valid() and B.is_valid()


def test_merge_trivial():
    x = D(F2)
    i = ChainMap.identity(x)
    A, B = merge_homotopy_inverses(i, i, i, zero_homotopy(i), zero_homotopy(i))
    assert A == zero_homotopy(i) and B == zero_homotopy(i)


def test_square_rejects_bad_homotopy(rng):
    x = rand_complex(F3, rng, 0, 1, 2)
    while x.is_zero():
        x = rand_complex(F3, rng, 0, 1, 2)
    i = ChainMap.identity(x)
    with pytest.raises(HomotopyError):
        HomotopySquare(i, i, i, i, CHomotopy(i, i + i, {}))
