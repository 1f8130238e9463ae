"""Mapping cones, cylinders, homotopy fibers and path spaces.

Cone f is the chosen pushout of f and ι: (Cone f)_n = x_{n-1} ⊕ y_n with
d = [[-d^x, 0], [-f, d^y]], so Cone id_x = Cx, Cone(x -> 0) = Tx and
Cone(0 -> x) = x hold on the nose.  hFib f = x ×_y Py has
(hFib f)_n = x_n ⊕ y_{n+1} and equals Cone(T^{-1} f).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .chaincore import (
    ChainMap,
    Complex,
    Report,
    direct_sum,
    homology_degree,
    is_quasi_iso,
)
from .complicial import cone_id, cone_id_map, iota, j, path, q, shift, shift_map
from .exactlin import (
    Matrix,
    ShapeMismatch,
    block,
    hstack,
    preimage,
    rank,
    same_span,
    solve,
    vstack,
)
from .homotopy import HomotopySquare, PHomotopy, c_homotopy_from_map


def _zero(F, rows, cols):
    return Matrix.zeros(F, rows, cols)


# mapping cone ----------------------------------------------------------------

def cone_complex(f: ChainMap) -> Complex:
    x, y = f.source, f.target
    F = f.field
    degs = set(y.dims) | {k + 1 for k in x.dims}
    dims = {n: x.dim(n - 1) + y.dim(n) for n in degs}
    diffs = {
        n: block(
            F,
            [x.dim(n - 2), y.dim(n - 1)],
            [x.dim(n - 1), y.dim(n)],
            {(0, 0): -x.d(n - 1), (1, 0): -f[n - 1], (1, 1): y.d(n)},
        )
        for n in degs | {k + 1 for k in degs}
    }
    return Complex(F, dims, diffs)


@dataclass(frozen=True)
class ConeData:
    f: ChainMap
    cone: Complex
    kappa: ChainMap  # y -> Cone f, (0; id)
    mu: ChainMap  # Cx -> Cone f, diag(id, f)
    psi: ChainMap  # Cone f -> Tx, (id, 0)

    def check(self) -> Report:
        f, x = self.f, self.f.source
        checks = [
            ("kappa chain map", self.kappa.is_chain_map()),
            ("mu chain map", self.mu.is_chain_map()),
            ("psi chain map", self.psi.is_chain_map()),
            ("psi kappa = 0", (self.psi @ self.kappa).is_zero()),
            ("mu iota = kappa f", self.mu @ iota(x) == self.kappa @ f),
            ("psi mu = pi", self.psi @ self.mu == _pi(x)),
            ("y -> Cone -> Tx split exact", _split_exact(self.kappa, self.psi)),
        ]
        return _report(checks)


def _pi(x: Complex) -> ChainMap:
    from .complicial import pi

    return pi(x)


def cone(f: ChainMap) -> ConeData:
    x, y = f.source, f.target
    F = f.field
    K = cone_complex(f)
    kappa = ChainMap(y, K, {n: block(F, [x.dim(n - 1), k], [k], {(1, 0): 1}) for n, k in y.dims.items()})
    mu = ChainMap(
        cone_id(x),
        K,
        {n: block(F, [x.dim(n - 1), y.dim(n)], [x.dim(n - 1), x.dim(n)], {(0, 0): 1, (1, 1): f[n]}) for n in K.dims},
    )
    psi = ChainMap(K, shift(x), {n: block(F, [x.dim(n - 1)], [x.dim(n - 1), y.dim(n)], {(0, 0): 1}) for n in K.dims})
    return ConeData(f, K, kappa, mu, psi)


def cone_of_square(sq: HomotopySquare) -> ChainMap:
    """Cone(a, b, H)_n = [[a_{n-1}, 0], [h_{n-1}, b_n]]: Cone f -> Cone g."""
    src, tgt = cone_complex(sq.f), cone_complex(sq.g)
    x, xt = sq.f.source, sq.f.target
    y, yt = sq.g.source, sq.g.target
    F = x.field
    mats = {
        n: block(
            F,
            [y.dim(n - 1), yt.dim(n)],
            [x.dim(n - 1), xt.dim(n)],
            {(0, 0): sq.a[n - 1], (1, 0): sq.H.h_at(n - 1), (1, 1): sq.b[n]},
        )
        for n in src.dims
    }
    return ChainMap(src, tgt, mats)


def square(f: ChainMap, g: ChainMap, a: ChainMap, b: ChainMap, H: Optional[ChainMap] = None) -> HomotopySquare:
    """A square (a, b, H) from [f] to [g] with H given as a morphism Cx -> y' (or strict)."""
    if H is None:
        return HomotopySquare(f, g, a, b)
    return HomotopySquare(f, g, a, b, c_homotopy_from_map(g @ a, b @ f, H))


def cone_map(f: ChainMap, g: ChainMap, a: ChainMap, b: ChainMap, H: Optional[ChainMap] = None) -> ChainMap:
    """Cone(a, b, H) for a square given by its parts."""
    return cone_of_square(square(f, g, a, b, H))


# mapping cylinder ------------------------------------------------------------

@dataclass(frozen=True)
class CylData:
    f: ChainMap
    cyl: Complex  # y ⊕ Cx
    xi1: ChainMap  # x -> Cyl, (f; -ι)
    xi2: ChainMap  # y -> Cyl, (id; 0)
    xi3: ChainMap  # Cx -> Cyl, (0; id)
    eta: ChainMap  # Cyl -> Cone, (κ, μ)
    upsilon: ChainMap  # Cyl -> y, (id, 0)

    def check(self) -> Report:
        f = self.f
        checks = [
            ("maps are chain maps", all(m.is_chain_map() for m in (self.xi1, self.xi2, self.xi3, self.eta, self.upsilon))),
            ("upsilon xi2 = id", self.upsilon @ self.xi2 == ChainMap.identity(f.target)),
            ("upsilon xi1 = f", self.upsilon @ self.xi1 == f),
            ("x -> Cyl -> Cone split exact", _split_exact(self.xi1, self.eta)),
        ]
        return _report(checks)


def cyl(f: ChainMap) -> CylData:
    x, y = f.source, f.target
    F = f.field
    Cx = cone_id(x)
    Y = direct_sum(y, Cx)
    cd = cone(f)

    def sizes(n):
        return [y.dim(n), x.dim(n - 1), x.dim(n)]

    xi1 = ChainMap(x, Y, {n: block(F, sizes(n), [k], {(0, 0): f[n], (2, 0): -1}) for n, k in x.dims.items()})
    xi2 = ChainMap(y, Y, {n: block(F, sizes(n), [k], {(0, 0): 1}) for n, k in y.dims.items()})
    xi3 = ChainMap(Cx, Y, {n: block(F, sizes(n), [x.dim(n - 1), x.dim(n)], {(1, 0): 1, (2, 1): 1}) for n in Cx.dims})
    eta = ChainMap(
        Y,
        cd.cone,
        {n: block(F, [x.dim(n - 1), y.dim(n)], sizes(n), {(1, 0): 1, (0, 1): 1, (1, 2): f[n]}) for n in Y.dims},
    )
    upsilon = ChainMap(Y, y, {n: block(F, [y.dim(n)], sizes(n), {(0, 0): 1}) for n in Y.dims})
    return CylData(f, Y, xi1, xi2, xi3, eta, upsilon)


def cyl_of_square(sq: HomotopySquare) -> ChainMap:
    """Cyl(a, b, H) = [[b, -H], [0, Ca]]: Cyl f -> Cyl g."""
    src, tgt = cyl(sq.f).cyl, cyl(sq.g).cyl
    x, xt = sq.f.source, sq.f.target
    y, yt = sq.g.source, sq.g.target
    F = x.field
    Hm, Ca = sq.H.H, cone_id_map(sq.a)
    mats = {
        n: block(
            F,
            [yt.dim(n), y.dim(n - 1) + y.dim(n)],
            [xt.dim(n), x.dim(n - 1) + x.dim(n)],
            {(0, 0): sq.b[n], (0, 1): -Hm[n], (1, 1): Ca[n]},
        )
        for n in src.dims
    }
    return ChainMap(src, tgt, mats)


# homotopy fiber and path space -----------------------------------------------

@dataclass(frozen=True)
class FibData:
    f: ChainMap
    hfib: Complex  # x_n ⊕ y_{n+1}
    pat: Complex  # x ⊕ Py
    nu: ChainMap  # hFib -> Py, diag(f, id)
    upsilon: ChainMap  # hFib -> x, (id, 0)
    lam: ChainMap  # T^{-1}y -> hFib, (0; id)
    rho: ChainMap  # hFib -> Pat, (υ; -ν)
    t1: ChainMap  # Pat -> x, (id, 0)
    t2: ChainMap  # Pat -> y, (f, q)
    chi: ChainMap  # x -> Pat, (id; 0)

    def check(self) -> Report:
        f, x, y = self.f, self.f.source, self.f.target
        maps = (self.nu, self.upsilon, self.lam, self.rho, self.t1, self.t2, self.chi)
        checks = [
            ("maps are chain maps", all(m.is_chain_map() for m in maps)),
            ("pullback square q ν = f υ", q(y) @ self.nu == f @ self.upsilon),
            ("ν λ = j", self.nu @ self.lam == j(y)),
            ("υ λ = 0", (self.upsilon @ self.lam).is_zero()),
            ("t1 χ = id", self.t1 @ self.chi == ChainMap.identity(x)),
            ("t2 χ = f", self.t2 @ self.chi == f),
            ("hFib -> Pat -> y split exact", _split_exact(self.rho, self.t2)),
        ]
        return _report(checks)


def hfib_complex(f: ChainMap) -> Complex:
    return cone_complex(shift_map(f, -1))


def hfib(f: ChainMap) -> FibData:
    x, y = f.source, f.target
    F = f.field
    Hf = hfib_complex(f)
    Py = path(y)
    Pat = direct_sum(x, Py)

    def hs(n):
        return [x.dim(n), y.dim(n + 1)]

    def ps(n):
        return [x.dim(n), y.dim(n), y.dim(n + 1)]

    nu = ChainMap(Hf, Py, {n: block(F, [y.dim(n), y.dim(n + 1)], hs(n), {(0, 0): f[n], (1, 1): 1}) for n in Hf.dims})
    upsilon = ChainMap(Hf, x, {n: block(F, [x.dim(n)], hs(n), {(0, 0): 1}) for n in Hf.dims})
    Tinv_y = shift(y, -1)
    lam = ChainMap(Tinv_y, Hf, {n: block(F, hs(n), [k], {(1, 0): 1}) for n, k in Tinv_y.dims.items()})
    rho = ChainMap(Hf, Pat, {n: block(F, ps(n), hs(n), {(0, 0): 1, (1, 0): -f[n], (2, 1): -1}) for n in Hf.dims})
    t1 = ChainMap(Pat, x, {n: block(F, [x.dim(n)], ps(n), {(0, 0): 1}) for n in Pat.dims})
    t2 = ChainMap(Pat, y, {n: block(F, [y.dim(n)], ps(n), {(0, 0): f[n], (0, 1): 1}) for n in Pat.dims})
    chi = ChainMap(x, Pat, {n: block(F, ps(n), [k], {(0, 0): 1}) for n, k in x.dims.items()})
    return FibData(f, Hf, Pat, nu, upsilon, lam, rho, t1, t2, chi)


def pat(f: ChainMap) -> Complex:
    return direct_sum(f.source, path(f.target))


def cone_to_shifted_hfib(f: ChainMap) -> ChainMap:
    """The canonical isomorphism Cone f -> T hFib f, diag(id, -id).

    It is the T-structure isomorphism Cone(T g) -> T Cone g, diag(-id, id),
    followed by T of the comparison Cone T^{-1} f -> hFib f, which is -id
    for the chosen sequences.
    """
    x, y = f.source, f.target
    F = f.field
    K = cone_complex(f)
    THf = shift(hfib_complex(f), 1)
    return ChainMap(K, THf, {n: block(F, [x.dim(n - 1), y.dim(n)], [x.dim(n - 1), y.dim(n)], {(0, 0): 1, (1, 1): -1}) for n in K.dims})


# comparison maps -------------------------------------------------------------

def r_C_cone(f: ChainMap) -> ChainMap:
    """r^{C,Cone}_f: C Cone f -> Cy; r^{C,Cone}·C(κ) = id and r^{C,Cone}·C(μ) = C(f)·r."""
    x, y = f.source, f.target
    F = f.field
    CK = cone_id(cone_complex(f))
    Cy = cone_id(y)
    mats = {
        n: block(
            F,
            [y.dim(n - 1), y.dim(n)],
            [x.dim(n - 2), y.dim(n - 1), x.dim(n - 1), y.dim(n)],
            {(0, 1): 1, (0, 2): f[n - 1], (1, 3): 1},
        )
        for n in CK.dims
    }
    return ChainMap(CK, Cy, mats)


def r_cone_C(f: ChainMap) -> ChainMap:
    """r^{Cone,C}_f: Cone(Cf) -> Cy; r^{Cone,C}·(κ∗C) = id and r^{Cone,C}·(μ∗C) = C(f)·r."""
    x, y = f.source, f.target
    F = f.field
    KC = cone_complex(cone_id_map(f))
    Cy = cone_id(y)
    mats = {
        n: block(
            F,
            [y.dim(n - 1), y.dim(n)],
            [x.dim(n - 2), x.dim(n - 1), y.dim(n - 1), y.dim(n)],
            {(0, 1): f[n - 1], (0, 2): 1, (1, 3): 1},
        )
        for n in KC.dims
    }
    return ChainMap(KC, Cy, mats)


def theta(f: ChainMap) -> ChainMap:
    """Θ_f = Cone(id_y, 0)·r^{C,Cone}_f: C Cone f -> Ty."""
    y = f.target
    zero_y = ChainMap.zero(y, Complex.zero(y.field))
    Cone_id0 = cone_map(ChainMap.identity(y), zero_y, ChainMap.identity(y), zero_y)
    return Cone_id0 @ r_C_cone(f)


def sigma_T_cone(f: ChainMap) -> ChainMap:
    """σ_T^{Cone}: T Cone f -> Cone Tf, diag(-id, id).

    Characterized by σ·(T κ_f) = κ_{Tf} and σ·(T μ_f) = μ_{Tf}·τ^{T,C}_x.
    """
    x, y = f.source, f.target
    F = f.field
    TK = shift(cone_complex(f), 1)
    KT = cone_complex(shift_map(f, 1))
    return ChainMap(TK, KT, {n: block(F, [x.dim(n - 2), y.dim(n - 1)], [x.dim(n - 2), y.dim(n - 1)], {(0, 0): -1, (1, 1): 1}) for n in TK.dims})


def cone_cone_swap(sq: HomotopySquare) -> ChainMap:
    """The isomorphism Cone Cone(a, b, H) -> Cone Cone(f, f', -H).

    Degree n blocks x_{n-2} ⊕ y_{n-1} ⊕ x'_{n-1} ⊕ y'_n go to
    x_{n-2} ⊕ x'_{n-1} ⊕ y_{n-1} ⊕ y'_n: the middle blocks swap and x is negated.
    """
    f, fp, a, b = sq.f, sq.g, sq.a, sq.b
    x, y, xp, yp = f.source, f.target, fp.source, fp.target
    F = f.field
    left = cone_complex(cone_of_square(sq))
    transposed = HomotopySquare(a, b, f, fp, sq.H.reverse())
    right = cone_complex(cone_of_square(transposed))
    mats = {
        n: block(
            F,
            [x.dim(n - 2), xp.dim(n - 1), y.dim(n - 1), yp.dim(n)],
            [x.dim(n - 2), y.dim(n - 1), xp.dim(n - 1), yp.dim(n)],
            {(0, 0): -1, (1, 2): 1, (2, 1): 1, (3, 3): 1},
        )
        for n in left.dims
    }
    return ChainMap(left, right, mats)


def transpose_square(sq: HomotopySquare) -> HomotopySquare:
    """(f, f', -H) from [a] to [b]."""
    return HomotopySquare(sq.a, sq.b, sq.f, sq.g, sq.H.reverse())


# homotopy pushout and pullback -----------------------------------------------

@dataclass(frozen=True)
class HomotopyPushout:
    f: ChainMap  # y -> x
    g: ChainMap  # y -> z
    obj: Complex  # Cone((f; g))
    i_g: ChainMap  # x -> obj
    i_f: ChainMap  # z -> obj
    mu: ChainMap  # Cy -> obj, the structure homotopy from i_f g to i_g f
    inclusion: ChainMap  # y -> Cy ⊕ x ⊕ z
    projection: ChainMap  # Cy ⊕ x ⊕ z -> obj

    def square(self) -> HomotopySquare:
        """(g, i_g, μ) from [f: y -> x] to [i_f: z -> obj]."""
        return square(self.f, self.i_f, self.g, self.i_g, self.mu)

    def check(self) -> Report:
        checks = [
            ("structure square valid", self.square().is_valid()),
            ("sequence split exact", _split_exact(self.inclusion, self.projection)),
        ]
        return _report(checks)

    def factor(self, sq: HomotopySquare) -> ChainMap:
        """The unique a with f' = a i_f, g' = a i_g, H = a μ for a square (g, g', H) from [f] to [f']."""
        if sq.f != self.f or sq.a != self.g:
            raise ShapeMismatch("square does not start at this span")
        u = sq.g.target
        cols = [self.i_f, self.i_g, self.mu]
        rhs = [sq.g, sq.b, sq.H.H]
        return _solve_out_of(self.obj, u, cols, rhs)


def homotopy_pushout(f: ChainMap, g: ChainMap) -> HomotopyPushout:
    """x ⊔_{y,h} z := Cone(y -> x ⊕ z) for x <-f- y -g-> z."""
    if f.source != g.source:
        raise ShapeMismatch("maps do not share a source")
    y, x, z = f.source, f.target, g.target
    F = y.field
    xz = direct_sum(x, z)
    fg = ChainMap(y, xz, {n: vstack(F, k, [f[n], g[n]]) for n, k in y.dims.items()})
    cd = cone(fg)
    P = cd.cone

    def ps(n):
        return [y.dim(n - 1), x.dim(n), z.dim(n)]

    i_g = ChainMap(x, P, {n: block(F, ps(n), [k], {(1, 0): -1}) for n, k in x.dims.items()})
    i_f = ChainMap(z, P, {n: block(F, ps(n), [k], {(2, 0): 1}) for n, k in z.dims.items()})
    Cy = cone_id(y)
    mid = direct_sum(Cy, xz)
    inc = ChainMap(
        y,
        mid,
        {n: block(F, [y.dim(n - 1), k, x.dim(n), z.dim(n)], [k], {(1, 0): 1, (2, 0): f[n], (3, 0): g[n]}) for n, k in y.dims.items()},
    )
    proj_mats = {}
    for n in mid.dims:
        proj_mats[n] = hstack(F, P.dim(n), [cd.mu[n], i_g[n], -i_f[n]])
    proj = ChainMap(mid, P, proj_mats)
    return HomotopyPushout(f, g, P, i_g, i_f, cd.mu, inc, proj)


@dataclass(frozen=True)
class HomotopyPullback:
    f: ChainMap  # x -> y
    g: ChainMap  # z -> y
    obj: Complex  # hFib((f g))
    p_g: ChainMap  # obj -> x
    p_f: ChainMap  # obj -> z
    u: ChainMap  # obj -> Py, a P-homotopy from g p_f to f p_g
    inclusion: ChainMap  # obj -> Py ⊕ x ⊕ z
    projection: ChainMap  # Py ⊕ x ⊕ z -> y

    def homotopy(self) -> PHomotopy:
        from .homotopy import p_homotopy_from_map

        return p_homotopy_from_map(self.g @ self.p_f, self.f @ self.p_g, self.u)

    def check(self) -> Report:
        try:
            ok = self.homotopy().is_valid()
        except ValueError:
            ok = False
        checks = [
            ("structure P-homotopy valid", ok),
            ("sequence split exact", _split_exact(self.inclusion, self.projection)),
        ]
        return _report(checks)

    def factor(self, gp: ChainMap, fp: ChainMap, H: ChainMap) -> ChainMap:
        """The unique a with g' = p_g a, f' = p_f a, H = u a for g': w -> x, f': w -> z, H: w -> Py."""
        w = gp.source
        return _solve_into(w, self.obj, [self.p_g, self.p_f, self.u], [gp, fp, H])


def homotopy_pullback(f: ChainMap, g: ChainMap) -> HomotopyPullback:
    """x ×_{y,h} z := hFib(x ⊕ z -> y) for x -f-> y <-g- z."""
    if f.target != g.target:
        raise ShapeMismatch("maps do not share a target")
    x, y, z = f.source, f.target, g.source
    F = y.field
    xz = direct_sum(x, z)
    fg = ChainMap(xz, y, {n: hstack(F, y.dim(n), [f[n], g[n]]) for n in xz.dims})
    fd = hfib(fg)
    P = fd.hfib

    def hs(n):
        return [x.dim(n), z.dim(n), y.dim(n + 1)]

    p_g = ChainMap(P, x, {n: block(F, [x.dim(n)], hs(n), {(0, 0): -1}) for n in P.dims})
    p_f = ChainMap(P, z, {n: block(F, [z.dim(n)], hs(n), {(0, 1): 1}) for n in P.dims})
    Py = path(y)
    mid = direct_sum(Py, xz)
    inc = ChainMap(P, mid, {n: vstack(F, P.dim(n), [fd.nu[n], p_g[n], -p_f[n]]) for n in P.dims})
    proj = ChainMap(
        mid,
        y,
        {n: block(F, [y.dim(n)], [y.dim(n), y.dim(n + 1), x.dim(n), z.dim(n)], {(0, 0): 1, (0, 2): f[n], (0, 3): g[n]}) for n in mid.dims},
    )
    return HomotopyPullback(f, g, P, p_g, p_f, fd.nu, inc, proj)


def _solve_out_of(P: Complex, u: Complex, cols, rhs) -> ChainMap:
    """Solve a·c_i = r_i for a: P -> u; the c_i must be jointly surjective."""
    F = P.field
    mats = {}
    for n in P.dims:
        M = hstack(F, P.dim(n), [c[n] for c in cols])
        B = hstack(F, u.dim(n), [t[n] for t in rhs])
        if rank(M) != P.dim(n):
            raise ValueError("structure maps are not jointly surjective")
        sol = solve(M.T, B.T)
        if sol is None:
            raise ValueError("no factorization exists")
        mats[n] = sol.T
    a = ChainMap(P, u, mats)
    if not a.is_chain_map() or any(a @ c != t for c, t in zip(cols, rhs)):
        raise ValueError("factorization is not a chain map")
    return a


def _solve_into(w: Complex, P: Complex, rows, rhs) -> ChainMap:
    F = P.field
    mats = {}
    for n in w.dims:
        M = vstack(F, P.dim(n), [c[n] for c in rows])
        B = vstack(F, w.dim(n), [t[n] for t in rhs])
        if rank(M) != P.dim(n):
            raise ValueError("structure maps are not jointly injective")
        sol = solve(M, B)
        if sol is None:
            raise ValueError("no factorization exists")
        mats[n] = sol
    a = ChainMap(w, P, mats)
    if not a.is_chain_map() or any(c @ a != t for c, t in zip(rows, rhs)):
        raise ValueError("factorization is not a chain map")
    return a


# cone of a composition -------------------------------------------------------

@dataclass(frozen=True)
class ConeOfComposition:
    inclusion: ChainMap  # Cone f -> Cone gf ⊕ Cy
    projection: ChainMap  # Cone gf ⊕ Cy -> Cone g
    comparison: ChainMap  # Cone(κ_f, κ_gf): Cone g -> Cone Cone(id_x, g)

    def check(self) -> Report:
        checks = [
            ("sequence split exact", _split_exact(self.inclusion, self.projection)),
            ("comparison chain map", self.comparison.is_chain_map()),
            ("comparison quasi-isomorphism", is_quasi_iso(self.comparison)),
        ]
        return _report(checks)


def cone_of_composition(f: ChainMap, g: ChainMap) -> ConeOfComposition:
    if f.target != g.source:
        raise ShapeMismatch("maps are not composable")
    x, y, z = f.source, f.target, g.target
    F = x.field
    gf = g @ f
    idx, idy, idz = ChainMap.identity(x), ChainMap.identity(y), ChainMap.identity(z)
    c1 = cone_map(f, gf, idx, g)  # Cone(id_x, g): Cone f -> Cone gf
    c2 = cone_map(f, idy, f, idy)  # Cone(f, id_y): Cone f -> Cy
    c3 = cone_map(gf, g, f, idz)  # Cone(f, id_z): Cone gf -> Cone g
    c4 = cone_map(idy, g, idy, g)  # Cone(id_y, g): Cy -> Cone g
    Kf, Kgf, Kg, Cy = c1.source, c1.target, c3.target, c2.target
    mid = direct_sum(Kgf, Cy)
    inc = ChainMap(Kf, mid, {n: vstack(F, Kf.dim(n), [c1[n], -c2[n]]) for n in Kf.dims})
    proj = ChainMap(mid, Kg, {n: hstack(F, Kg.dim(n), [c3[n], c4[n]]) for n in mid.dims})
    comp = cone_map(g, c1, cone(f).kappa, cone(gf).kappa)
    return ConeOfComposition(inc, proj, comp)


# exactness helpers -----------------------------------------------------------

def _split_exact(i: ChainMap, p: ChainMap) -> bool:
    """Degreewise: i injective, p surjective, image i = kernel p."""
    if i.target != p.source or not (p @ i).is_zero():
        return False
    for n, k in i.target.dims.items():
        a, b = rank(i[n]), rank(p[n])
        if a != i.source.dim(n) or b != p.target.dim(n) or a + b != k:
            return False
    return True


def is_degreewise_split_exact(i: ChainMap, p: ChainMap) -> bool:
    return _split_exact(i, p)


def _report(checks) -> Report:
    bad = [name for name, ok in checks if not ok]
    return Report(not bad, "valid" if not bad else "failed: " + ", ".join(bad), tuple(checks))


# Puppe sequence --------------------------------------------------------------

def connecting_map(f: ChainMap, n: int) -> Matrix:
    """δ': Cone f_n -> x_{n-1} on chains, the projection onto the x-block."""
    x, y = f.source, f.target
    return block(f.field, [x.dim(n - 1)], [x.dim(n - 1), y.dim(n)], {(0, 0): 1})


def puppe_exactness(f: ChainMap) -> Report:
    """Exactness of ... -> H_n(x) -> H_n(y) -> H_n(Cone f) -> H_{n-1}(x) -> ... at every slot.

    Exactness at a slot A -a-> B -b-> C is checked on cycles:
    {z in Z(B): b z in B(C)} = a Z(A) + B(B).
    """
    x, y = f.source, f.target
    cd = cone(f)
    K = cd.cone
    F = f.field
    degs = set(x.degrees(1)) | set(y.degrees(1)) | set(K.degrees(1))
    checks = []
    for n in sorted(degs):
        hx, hy, hk = homology_degree(x, n), homology_degree(y, n), homology_degree(K, n)
        hx1 = homology_degree(x, n - 1)
        # at y: H_n(x) -> H_n(y) -> H_n(Cone)
        ker = preimage(cd.kappa[n], hy.cycles, hk.boundaries)
        img = hstack(F, y.dim(n), [f[n] @ hx.cycles, hy.boundaries])
        checks.append((f"exact at H_{n}(y)", same_span(ker, img)))
        # at Cone: H_n(y) -> H_n(Cone) -> H_{n-1}(x)
        delta = connecting_map(f, n)
        ker = preimage(delta, hk.cycles, hx1.boundaries)
        img = hstack(F, K.dim(n), [cd.kappa[n] @ hy.cycles, hk.boundaries])
        checks.append((f"exact at H_{n}(Cone f)", same_span(ker, img)))
        # at x: H_{n+1}(Cone) -> H_n(x) -> H_n(y)
        hk1 = homology_degree(K, n + 1)
        ker = preimage(f[n], hx.cycles, hy.boundaries)
        img = hstack(F, x.dim(n), [connecting_map(f, n + 1) @ hk1.cycles, hx.boundaries])
        checks.append((f"exact at H_{n}(x)", same_span(ker, img)))
    return _report(checks)
