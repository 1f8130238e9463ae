"""Seeded random generators for complexes, chain maps and homotopies."""
from __future__ import annotations

import random
from typing import Dict, Optional

from .chaincore import ChainMap, Complex, minimal_model
from .exactlin import Field, Matrix, kernel_basis


def rand_matrix(F: Field, rng: random.Random, rows: int, cols: int, lo: int = -2, hi: int = 2) -> Matrix:
    return Matrix.from_rows(F, [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)], cols)


def rand_complex(F: Field, rng: random.Random, lo: int = -3, hi: int = 4, max_dim: int = 4) -> Complex:
    """Sample dims, then d_n = K·B·A with K a basis of ker d_{n-1} and a random middle dimension."""
    dims = {n: rng.randint(0, max_dim) for n in range(lo, hi + 1)}
    diffs: Dict[int, Matrix] = {}
    for n in range(lo + 1, hi + 1):
        prev = diffs.get(n - 1)
        K = kernel_basis(prev) if prev is not None else Matrix.identity(F, dims[n - 1])
        mid = rng.randint(0, min(K.cols, dims[n]))
        diffs[n] = K @ rand_matrix(F, rng, K.cols, mid) @ rand_matrix(F, rng, mid, dims[n])
    return Complex(F, dims, diffs)


def rand_family(F: Field, rng: random.Random, x: Complex, y: Complex, deg: int) -> Dict[int, Matrix]:
    """Random degreewise family x_n -> y_{n+deg}."""
    return {n: rand_matrix(F, rng, y.dim(n + deg), k) for n, k in x.dims.items() if y.dim(n + deg)}


def null_homotopic(x: Complex, y: Complex, h: Dict[int, Matrix]) -> ChainMap:
    """d h + h d for a family h_n: x_n -> y_{n+1}."""
    F = x.field

    def at(n):
        m = h.get(n)
        return m if m is not None else Matrix.zeros(F, y.dim(n + 1), x.dim(n))

    return ChainMap(x, y, {n: y.d(n + 1) @ at(n) + at(n - 1) @ x.d(n) for n in x.dims})


def rand_chain_map(rng: random.Random, x: Complex, y: Complex) -> ChainMap:
    """s_y·M·p_x plus a random null-homotopic map; reaches every homotopy class."""
    F = x.field
    mx, my = minimal_model(x), minimal_model(y)
    M = ChainMap(mx.model, my.model, rand_family(F, rng, mx.model, my.model, 0))
    return my.s @ M @ mx.p + null_homotopic(x, y, rand_family(F, rng, x, y, 1))


def rand_map(F: Field, rng: random.Random, lo: int = -2, hi: int = 2, max_dim: int = 3,
             x: Optional[Complex] = None) -> ChainMap:
    if x is None:
        x = rand_complex(F, rng, lo, hi, max_dim)
    y = rand_complex(F, rng, lo, hi, max_dim)
    return rand_chain_map(rng, x, y)


def rand_field(rng: random.Random) -> Field:
    return Field(rng.choice([2, 3, 5, 0]))


def zero_homotopy_family(F: Field, rng: random.Random, x: Complex, y: Complex) -> Dict[int, Matrix]:
    """k = d t - t d for a random degree-2 family t; satisfies d k + k d = 0."""
    t = rand_family(F, rng, x, y, 2)

    def at(n):
        m = t.get(n)
        return m if m is not None else Matrix.zeros(F, y.dim(n + 2), x.dim(n))

    return {n: y.d(n + 2) @ at(n) - at(n - 1) @ x.d(n) for n in x.dims if y.dim(n + 1)}


def _inclusion(x: Complex, xp: Complex) -> ChainMap:
    """x -> x ⊕ p, (id; 0)."""
    F = x.field
    from .exactlin import block
    return ChainMap(x, xp, {n: block(F, [k, xp.dim(n) - k], [k], {(0, 0): 1}) for n, k in x.dims.items()})


def _upper(rng: random.Random, f: ChainMap, p: Complex, pp: Complex) -> ChainMap:
    """[[f, m], [0, n]]: x ⊕ p -> x' ⊕ p' with m, n random chain maps."""
    from .chaincore import direct_sum
    from .exactlin import block
    F = f.field
    x, xt = f.source, f.target
    m, n_ = rand_chain_map(rng, p, xt), rand_chain_map(rng, p, pp)
    src, tgt = direct_sum(x, p), direct_sum(xt, pp)
    mats = {
        k: block(F, [xt.dim(k), pp.dim(k)], [x.dim(k), p.dim(k)], {(0, 0): f[k], (0, 1): m[k], (1, 1): n_[k]})
        for k in src.dims
    }
    return ChainMap(src, tgt, mats)


def rand_grid(F: Field, rng: random.Random, rows: int = 3, cols: int = 3, lo: int = -2, hi: int = 2, max_dim: int = 2):
    """A rows x cols grid of homotopy commutative squares.

    Returns (objs, horiz, vert, squares): objs[i][j]; horiz[i][j]: objs[i][j] -> objs[i][j+1];
    vert[i][j]: objs[i][j] -> objs[i+1][j]; squares[i][j] the HomotopySquare
    (vert[i][j], vert[i][j+1], H) from horiz[i][j] to horiz[i+1][j].
    Each row is the previous one plus a random summand, with perturbed maps.
    """
    from .chaincore import direct_sum
    from .homotopy import CHomotopy, HomotopySquare

    def rc():
        return rand_complex(F, rng, lo, hi, max_dim)

    objs = [[rc() for _ in range(cols)]]
    horiz = [[rand_chain_map(rng, objs[0][j], objs[0][j + 1]) for j in range(cols - 1)]]
    hfam = [[None] * (cols - 1)]
    vert = []
    for i in range(1, rows):
        ps = [rc() for _ in range(cols)]
        row = [direct_sum(o, p) for o, p in zip(objs[-1], ps)]
        vert.append([_inclusion(o, y) for o, y in zip(objs[-1], row)])
        hs, fams = [], []
        for j in range(cols - 1):
            fam = rand_family(F, rng, row[j], row[j + 1], 1)
            hs.append(_upper(rng, horiz[-1][j], ps[j], ps[j + 1]) + null_homotopic(row[j], row[j + 1], fam))
            fams.append(fam)
        objs.append(row)
        horiz.append(hs)
        hfam.append(fams)
    squares = []
    for i in range(rows - 1):
        sq_row = []
        for j in range(cols - 1):
            f, g = horiz[i][j], horiz[i + 1][j]
            a, b = vert[i][j], vert[i][j + 1]
            # g a - b f = (d h + h d) a, so h·a is a homotopy; add a random closed family
            x, yt = f.source, g.target
            fam = hfam[i + 1][j]
            base = {n: fam[n] @ a[n] for n in x.dims if n in fam}
            k = zero_homotopy_family(F, rng, x, yt)
            h = {n: base.get(n, Matrix.zeros(F, yt.dim(n + 1), x.dim(n))) + k.get(n, Matrix.zeros(F, yt.dim(n + 1), x.dim(n)))
                 for n in x.dims if yt.dim(n + 1)}
            sq_row.append(HomotopySquare(f, g, a, b, CHomotopy(g @ a, b @ f, h)))
        squares.append(sq_row)
    return objs, horiz, vert, squares


def rand_diagram_chain(F: Field, rng: random.Random, a: int, length: int, count: int = 2, **kw):
    """count composable DiagramMaps between random filtered objects on [a, a+length-1]."""
    from .filtered import DiagramMap, FilteredObject

    objs, horiz, vert, squares = rand_grid(F, rng, count + 1, length, **kw)
    xs = [FilteredObject(F, a, objs[i], horiz[i]) for i in range(count + 1)]
    maps = []
    for i in range(count):
        f = {a + j: vert[i][j] for j in range(length)}
        H = {a + j: squares[i][j].H for j in range(length - 1)}
        maps.append(DiagramMap(xs[i], xs[i + 1], f, H))
    return xs, maps


def rand_heart(F: Field, rng: random.Random, n: int, max_dim: int = 3) -> Complex:
    """Homology concentrated in degree n: S(n)^h plus disks, in a random basis."""
    from .exactlin import block, inverse, rank

    h = rng.randint(0, max_dim)
    disks = {k: rng.randint(0, 2) for k in range(n - 1, n + 3)}  # D(k): k-1 <- k
    dims = {}
    for k, c in disks.items():
        dims[k] = dims.get(k, 0) + c
        dims[k - 1] = dims.get(k - 1, 0) + c
    dims[n] = dims.get(n, 0) + h
    # order in each degree: disk tops, disk bottoms, then homology
    diffs = {}
    for k in sorted(dims):
        tops, bots = disks.get(k, 0), disks.get(k + 1, 0)
        ptops, pbots = disks.get(k - 1, 0), disks.get(k, 0)
        rows = [ptops, pbots, dims.get(k - 1, 0) - ptops - pbots]
        cols = [tops, bots, dims[k] - tops - bots]
        diffs[k] = block(F, rows, cols, {(1, 0): 1})
    # conjugate by random invertible matrices
    g = {}
    for k, m in dims.items():
        while True:
            cand = rand_matrix(F, rng, m, m)
            if rank(cand) == m:
                g[k] = cand
                break
    new = {k: g[k - 1] @ diffs[k] @ inverse(g[k]) for k in diffs if dims.get(k - 1, 0) and dims[k]}
    return Complex(F, dims, new)


def rand_bicomplex(F: Field, rng: random.Random, a: int, b: int, lo: int = -1, hi: int = 2, max_dim: int = 2):
    """Columns A_n ⊕ B_n with D_n = g_n: B_n -> A_{n-1}, twisted by [[1, 0], [m, 1]], m: A -> B."""
    from .chaincore import direct_sum
    from .exactlin import block
    from .totred import BiComplex

    As = {n: rand_complex(F, rng, lo, hi, max_dim) for n in range(a, b + 1)}
    Bs = {n: rand_complex(F, rng, lo, hi, max_dim) for n in range(a, b + 1)}
    cols = {n: direct_sum(As[n], Bs[n]) for n in As}
    g = {n: rand_chain_map(rng, Bs[n], As[n - 1]) for n in range(a + 1, b + 1)}
    m = {n: rand_chain_map(rng, As[n], Bs[n]) for n in As}

    def sizes(n, k):
        return [As[n].dim(k), Bs[n].dim(k)]

    D = {}
    for n in range(a + 1, b + 1):
        mats = {}
        for k in cols[n].dims:
            G, Ms, Mt = g[n][k], m[n][k], m[n - 1][k]
            mats[k] = block(F, sizes(n - 1, k), sizes(n, k), {
                (0, 0): -(G @ Ms), (0, 1): G, (1, 0): -(Mt @ G @ Ms), (1, 1): Mt @ G})
        D[n] = ChainMap(cols[n], cols[n - 1], mats)
    return BiComplex(F, a, [cols[n] for n in range(a, b + 1)], D)


def rand_level_qis(F: Field, rng: random.Random, z, max_dim: int = 2):
    """Outer map z -> z ⊕ C w, the inclusion of z; levelwise a quasi-isomorphism."""
    from .chaincore import direct_sum, direct_sum_maps
    from .complicial import cone_id, cone_id_map
    from .totred import BiComplex, OuterMap

    w = rand_bicomplex(F, rng, z.a, z.b, max_dim=max_dim)
    cols = [direct_sum(z.col(n), cone_id(w.col(n))) for n in range(z.a, z.b + 1)]
    D = {n: direct_sum_maps(z.d(n), cone_id_map(w.d(n))) for n in range(z.a + 1, z.b + 1)}
    zp = BiComplex(F, z.a, cols, D)
    comps = {n: _inclusion(z.col(n), zp.col(n)) for n in range(z.a, z.b + 1)}
    return OuterMap(z, zp, comps)
