"""The ten acceptance criteria, exact tolerance, one pass/fail line each.

Run under pytest, or directly with `python3 tests/test_acceptance.py`.
"""
import json
import random
import sys
import time

import pytest

from chainkit import cli
from chainkit.chaincore import ChainMap, Complex, euler, is_quasi_iso
from chainkit.complicial import cone_id, shift, verify_complicial_identities
from chainkit.conecyl import cone_complex, hfib_complex, puppe_exactness
from chainkit.devissage import (
    b_gamma, build_devissage, ca_identity_report, euler_of_T, graded_euler, graded_euler_of, grid_A, grid_B, grid_E,
    leq, validate_devissage)
from chainkit.exactlin import Field, rank
from chainkit.filtered import compose_diagram_maps, strictify
from chainkit.gen import (
    rand_bicomplex, rand_chain_map, rand_complex, rand_diagram_chain, rand_field, rand_grid, rand_heart, rand_map)
from chainkit.homotopy import cc_interchange_witness, convert_A, convert_B, star_C
from chainkit.totred import (
    canonical_factorization, euler_alternating, reduce_full, single_column, tot, tot_antidiagonal, tot_map)

FIELDS = [Field(2), Field(3), Field(5), Field(0)]


def c1():
    bad = 0
    for F in FIELDS:
        rng = random.Random(1000 + F.p)
        for _ in range(200):
            x = rand_complex(F, rng, -3, 4, 4)
            if not verify_complicial_identities(x).ok:
                bad += 1
    return bad == 0, f"{800 - bad}/800 complexes", 30


def c2():
    rng = random.Random(2)
    bad = 0
    for i in range(100):
        F = FIELDS[i % 4]
        _, _, _, sq = rand_grid(F, rng, 4, 3)
        ok = True
        for s in (sq[0][0], sq[1][1], sq[2][0]):
            P = convert_A(s.H)
            ok &= convert_B(P) == s.H and convert_A(convert_B(P)) == P
        ok &= star_C(sq[2][0], star_C(sq[1][0], sq[0][0])) == star_C(star_C(sq[2][0], sq[1][0]), sq[0][0])
        ok &= cc_interchange_witness(sq[0][0], sq[1][0], sq[0][1], sq[1][1]).is_valid()
        bad += not ok
    return bad == 0, f"{100 - bad}/100 quadruples", 10


def c3():
    rng = random.Random(3)
    bad = 0
    for i in range(200):
        f = rand_map(FIELDS[i % 4], rng, -3, 3, 3)
        ok = euler(cone_complex(f)) == euler(f.target) - euler(f.source) and puppe_exactness(f).ok
        bad += not ok
    return bad == 0, f"{200 - bad}/200 maps", 20


def c4():
    rng = random.Random(4)
    bad = 0
    for i in range(50):
        F = FIELDS[i % 4]
        x = rand_complex(F, rng, -3, 4, 4)
        Z = Complex.zero(F)
        ok = (cone_complex(ChainMap.identity(x)) == cone_id(x)
              and cone_complex(ChainMap.zero(x, Z)) == shift(x, 1)
              and cone_complex(ChainMap.zero(Z, x)) == x
              and hfib_complex(ChainMap.zero(Z, x)) == shift(x, -1))
        bad += not ok
    return bad == 0, f"{50 - bad}/50 complexes", None


def c5():
    rng = random.Random(5)
    bad = 0
    for i in range(50):
        z = rand_complex(FIELDS[i % 4], rng, -3, 4, 4)
        bad += not all(tot(single_column(z, n)) == shift(z, n) for n in range(-3, 4))
    for i in range(100):
        a = rng.randint(-3, 2)
        z = rand_bicomplex(FIELDS[i % 4], rng, a, a + rng.randint(0, 3))
        T = tot(z)
        r = reduce_full(z)
        ok = r.core == shift(T, r.m) and euler(T) == euler_alternating(z) and T == tot_antidiagonal(z)
        bad += not ok
    return bad == 0, f"{150 - bad}/150 cases", 30


def c6():
    rng = random.Random(6)
    bad = 0
    for i in range(100):
        F = FIELDS[i % 4]
        x = rand_bicomplex(F, rng, 0, i % 3)
        u = rand_chain_map(rng, tot(x), rand_complex(F, rng, -2, 3, 3))
        fa = canonical_factorization(x, u)
        ok = fa.a_u @ tot_map(fa.lift) == u and is_quasi_iso(fa.a_u)
        bad += not ok
    return bad == 0, f"{100 - bad}/100 pairs", 20


def c7():
    rng = random.Random(7)
    bad = 0
    for i in range(200):
        z = rand_complex(FIELDS[i % 4], rng, -3, 4, 4)
        bd = build_devissage(z)
        x = bd.filtration.x
        ok = (validate_devissage(x)[1].ok and is_quasi_iso(bd.a)
              and sum(graded_euler(bd.filtration).values()) == euler(z)
              and all(leq(k, x.stage(k)) for k in range(x.a, x.b + 1)))
        bad += not ok
    return bad == 0, f"{200 - bad}/200 complexes", 30


def c8():
    rng = random.Random(8)
    bad = 0
    for i in range(100):
        F = FIELDS[i % 4]
        a = rng.randint(-2, 1)
        b = a + rng.randint(1, 3)
        v = [rand_heart(F, rng, a + j) for j in range(b - a + 1)]
        w = v[:-1]
        Bw = grid_B(a, b, w)
        ok = (ca_identity_report(a, b, v).ok
              and graded_euler_of(grid_A(a, b, grid_E(a, b, w))) == graded_euler_of(Bw) == b_gamma(a, b, w)
              and all(euler_of_T(c) for c in v)
              and all(euler_of_T(Bw.stage(k)) for k in range(a, b + 1)))
        bad += not ok
    return bad == 0, f"{100 - bad}/100 heart tuples", 10


def c9():
    rng = random.Random(9)
    bad = 0
    for i in range(50):
        F = FIELDS[i % 4]
        a = rng.randint(-2, 1)
        length = 1 + i % 4
        xs, (fH, gK) = rand_diagram_chain(F, rng, a, length, count=2, max_dim=2)
        b = a + length - 1
        r1, r2 = strictify(a, b, fH), strictify(a, b, gK)
        ok = compose_diagram_maps(r2, r1) == strictify(a, b, compose_diagram_maps(gK, fH))
        for r in (r1, r2):
            for obj in (r.source, r.target):
                for n in range(obj.a, obj.b):
                    m = obj.i(n)
                    ok &= all(rank(m[d]) == m.source.dim(d) for d in m.source.dims)
        bad += not ok
    return bad == 0, f"{50 - bad}/50 pairs", 20


def c10():
    argv = ["suite", "--seed", "7", "--count", "200"]
    outs = []
    for _ in range(2):
        args = cli.build_parser().parse_args(argv)
        rep, status = args.fn(args)
        outs.append((cli.dumps(rep), status))
    same = outs[0][0] == outs[1][0] and outs[0][1] == 0 == outs[1][1]
    rng = random.Random(10)
    bad = 0
    for i in range(100):
        F = rand_field(rng)
        x = rand_complex(F, rng, -3, 4, 4)
        f = rand_chain_map(rng, x, rand_complex(F, rng, -3, 4, 4))
        z = rand_bicomplex(F, rng, -1, 1)
        ok = (cli.complex_from_doc(json.loads(cli.dumps(cli.complex_to_doc(x)))) == x
              and cli.map_from_doc(json.loads(cli.dumps(cli.map_to_doc(f)))) == f
              and cli.bicomplex_from_doc(json.loads(cli.dumps(cli.bicomplex_to_doc(z)))) == z)
        bad += not ok
    return same and bad == 0, f"suite identical={same}, round trips {100 - bad}/100", 60


CRITERIA = [
    ("1 complicial identities", c1),
    ("2 homotopy calculus", c2),
    ("3 cone and Puppe", c3),
    ("4 convention equalities", c4),
    ("5 Tot and reduction", c5),
    ("6 canonical factorization", c6),
    ("7 devissage shadow", c7),
    ("8 K0 grid", c8),
    ("9 strictification", c9),
    ("10 CLI reproducibility", c10),
]


def evaluate(fn):
    t0 = time.perf_counter()
    ok, detail, budget = fn()
    dt = time.perf_counter() - t0
    in_time = budget is None or dt < budget
    return ok and in_time, f"{detail}, {dt:.1f} s" + (f" (budget {budget} s)" if budget else "")


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[n.split()[0] for n, _ in CRITERIA])
def test_criterion(name, fn, capsys):
    ok, detail = evaluate(fn)
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {name}: {detail}")
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for name, fn in CRITERIA:
        ok, detail = evaluate(fn)
        failed += not ok
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {name}: {detail}")
    sys.exit(1 if failed else 0)
