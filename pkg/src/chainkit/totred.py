"""Complexes of complexes: Tot, the 𝔔/𝔏/𝔲/𝔳 reduction and the canonical factorization.

A BiComplex is a bounded outer complex z_a <- ... <- z_b of Complexes with
outer differentials D_n: z_n -> z_{n-1}.  Tot is the cone recursion
Tot(z) = Cone(Tot(σ_{≥1} z [-1]) -> z_0), so Tot of a single column z at
outer degree n is T^n z on the nose.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .chaincore import ChainMap, Complex, Report, euler, is_quasi_iso
from .complicial import cone_id, iota, shift, shift_map
from .conecyl import cone, cone_complex, cone_map, cone_of_square
from .exactlin import Field, Matrix, ShapeMismatch, block, hstack, solve_sylvester_system
from .homotopy import HomotopySquare, make_c_homotopy


class BiComplex:
    """Outer complex of Complexes on [a, a + len(cols) - 1]."""

    __slots__ = ("field", "a", "cols", "D")

    def __init__(self, field: Field, a: int, cols: Sequence[Complex], D: Optional[Dict[int, ChainMap]] = None):
        cols = list(cols) or [Complex.zero(field)]
        self.field, self.a, self.cols = field, a, tuple(cols)
        b = a + len(cols) - 1
        self.D: Dict[int, ChainMap] = {}
        for n, m in (D or {}).items():
            if not a < n <= b:
                if m.is_zero():
                    continue
                raise ShapeMismatch(f"outer differential D_{n} outside the support")
            if m.source != self.col(n) or m.target != self.col(n - 1):
                raise ShapeMismatch(f"D_{n} does not fit the columns")
            self.D[n] = m

    @property
    def b(self) -> int:
        return self.a + len(self.cols) - 1

    def col(self, n: int) -> Complex:
        if self.a <= n <= self.b:
            return self.cols[n - self.a]
        return Complex.zero(self.field)

    def d(self, n: int) -> ChainMap:
        m = self.D.get(n)
        return m if m is not None else ChainMap.zero(self.col(n), self.col(n - 1))

    @property
    def support(self) -> Optional[Tuple[int, int]]:
        nz = [self.a + k for k, c in enumerate(self.cols) if not c.is_zero()]
        return (nz[0], nz[-1]) if nz else None

    def is_zero(self) -> bool:
        return self.support is None

    def check(self) -> Report:
        checks = []
        for n in range(self.a + 1, self.b + 1):
            checks.append((f"D_{n} chain map", self.d(n).is_chain_map()))
        for n in range(self.a + 2, self.b + 1):
            checks.append((f"D_{n - 1} D_{n} = 0", (self.d(n - 1) @ self.d(n)).is_zero()))
        bad = [c for c, ok in checks if not ok]
        return Report(not bad, "valid" if not bad else "failed: " + ", ".join(bad), tuple(checks))

    def reindex(self, k: int) -> "BiComplex":
        """Outer degree n moves to n + k; differentials unchanged."""
        return BiComplex(self.field, self.a + k, self.cols, {n + k: m for n, m in self.D.items()})

    def outer_shift(self, k: int) -> "BiComplex":
        """The standard shift: outer degree n moves to n + k and D picks up (-1)^k."""
        s = -1 if k % 2 else 1
        return BiComplex(self.field, self.a + k, self.cols, {n + k: m.scale(s) for n, m in self.D.items()})

    def sigma_geq(self, n: int) -> "BiComplex":
        lo = max(n, self.a)
        if lo > self.b:
            return BiComplex(self.field, n, [])
        return BiComplex(self.field, lo, self.cols[lo - self.a:], {k: m for k, m in self.D.items() if k > lo})

    def window(self, lo: int, hi: int) -> "BiComplex":
        lo, hi = min(lo, self.a), max(hi, self.b)
        return BiComplex(self.field, lo, [self.col(n) for n in range(lo, hi + 1)], dict(self.D))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiComplex):
            return NotImplemented
        lo, hi = min(self.a, other.a), max(self.b, other.b)
        return all(self.col(n) == other.col(n) for n in range(lo, hi + 1)) and all(
            self.d(n) == other.d(n) for n in range(lo + 1, hi + 1)
        )

    def __repr__(self):
        return f"BiComplex([{self.a},{self.b}], cols={[c.dims for c in self.cols]})"


class OuterMap:
    """φ_n: z_n -> z'_n commuting with the outer differentials."""

    __slots__ = ("source", "target", "comps")

    def __init__(self, source: BiComplex, target: BiComplex, comps: Dict[int, ChainMap]):
        self.source, self.target = source, target
        self.comps = {}
        for n, m in comps.items():
            if m.source != source.col(n) or m.target != target.col(n):
                raise ShapeMismatch(f"component {n} does not fit the columns")
            self.comps[n] = m

    def at(self, n: int) -> ChainMap:
        m = self.comps.get(n)
        return m if m is not None else ChainMap.zero(self.source.col(n), self.target.col(n))

    def _range(self):
        lo = min(self.source.a, self.target.a)
        hi = max(self.source.b, self.target.b)
        return lo, hi

    def check(self) -> Report:
        lo, hi = self._range()
        checks = [(f"φ_{n} chain map", self.at(n).is_chain_map()) for n in range(lo, hi + 1)]
        for n in range(lo + 1, hi + 1):
            checks.append((f"D φ_{n} = φ_{n-1} D", self.target.d(n) @ self.at(n) == self.at(n - 1) @ self.source.d(n)))
        bad = [c for c, ok in checks if not ok]
        return Report(not bad, "valid" if not bad else "failed: " + ", ".join(bad), tuple(checks))

    def reindex(self, k: int) -> "OuterMap":
        return OuterMap(self.source.reindex(k), self.target.reindex(k), {n + k: m for n, m in self.comps.items()})

    def sigma_geq(self, n: int) -> "OuterMap":
        return OuterMap(self.source.sigma_geq(n), self.target.sigma_geq(n), {k: m for k, m in self.comps.items() if k >= n})

    def __matmul__(self, other: "OuterMap") -> "OuterMap":
        lo = min(self.source.a, other.source.a)
        hi = max(self.target.b, other.target.b, other.source.b)
        return OuterMap(other.source, self.target, {n: self.at(n) @ other.at(n) for n in range(lo, hi + 1)})

    def is_level_quasi_iso(self) -> bool:
        lo, hi = self._range()
        return all(is_quasi_iso(self.at(n)) for n in range(lo, hi + 1))

    @classmethod
    def identity(cls, z: BiComplex) -> "OuterMap":
        return cls(z, z, {n: ChainMap.identity(z.col(n)) for n in range(z.a, z.b + 1)})


def single_column(z: Complex, n: int = 0) -> BiComplex:
    """𝔧(z)[n]: z in outer degree n."""
    return BiComplex(z.field, n, [z])


# Tot --------------------------------------------------------------------------

def _m(z: BiComplex) -> int:
    s = z.support
    return max(0, -s[0]) if s else 0


def _bottom_map(T: Complex, w: BiComplex, z0: Complex, D1: ChainMap) -> ChainMap:
    """Tot(w) -> z_0 given by D_1 on the last block w_0 and zero elsewhere."""
    F = z0.field
    mats = {}
    for n in T.dims:
        k = w.col(0).dim(n)
        zero = Matrix.zeros(F, z0.dim(n), T.dim(n) - k)
        mats[n] = hstack(F, z0.dim(n), [zero, D1[n]])
    return ChainMap(T, z0, mats)


def _tot_geq0(z: BiComplex) -> Tuple[Complex, Optional[ChainMap]]:
    """Tot of z with outer support in degrees >= 0, and the map Tot(σ_{≥1}z[-1]) -> z_0."""
    s = z.support
    if s is None:
        return Complex.zero(z.field), None
    if s[1] <= 0:
        return z.col(0), None
    w = z.sigma_geq(1).reindex(-1)
    T, _ = _tot_geq0(w)
    g = _bottom_map(T, w, z.col(0), z.d(1))
    return cone_complex(g), g


def tot(z: BiComplex) -> Complex:
    m = _m(z)
    T, _ = _tot_geq0(z.reindex(m))
    return shift(T, -m) if m else T


def bottom_map(z: BiComplex) -> ChainMap:
    """d̲_0: Tot(σ_{≥1} z [-1]) -> z_0 for z with outer support in degrees >= 0."""
    w = z.sigma_geq(1).reindex(-1)
    T = tot(w)
    return _bottom_map(T, w, z.col(0), z.d(1))


def _tot_map_geq0(phi: OuterMap) -> ChainMap:
    z, zp = phi.source, phi.target
    sz, szp = z.support, zp.support
    top = max([s[1] for s in (sz, szp) if s] + [0])
    if top <= 0:
        return ChainMap(tot(z), tot(zp), phi.at(0).mats)
    w, wp = z.sigma_geq(1).reindex(-1), zp.sigma_geq(1).reindex(-1)
    a = _tot_map_geq0(phi.sigma_geq(1).reindex(-1))
    g = _bottom_map(tot(w), w, z.col(0), z.d(1))
    gp = _bottom_map(tot(wp), wp, zp.col(0), zp.d(1))
    return cone_map(g, gp, a, phi.at(0))


def tot_map(phi: OuterMap) -> ChainMap:
    m = max(_m(phi.source), _m(phi.target))
    t = _tot_map_geq0(phi.reindex(m))
    return shift_map(t, -m) if m else t


def tot_antidiagonal(z: BiComplex) -> Complex:
    """Independent oracle: ⊕_p (z_p)_{n-p}, inner d signed (-1)^p, outer D_p signed (-1)^p."""
    F = z.field
    degs = set()
    for p in range(z.a, z.b + 1):
        degs |= {p + q for q in z.col(p).dims}
    ps = list(range(z.b, z.a - 1, -1))
    dims = {n: sum(z.col(p).dim(n - p) for p in ps) for n in degs}
    diffs = {}
    for n in degs | {k + 1 for k in degs}:
        rows = [z.col(p).dim(n - 1 - p) for p in ps]
        cols = [z.col(p).dim(n - p) for p in ps]
        ents = {}
        for i, p in enumerate(ps):
            ents[(i, i)] = z.col(p).d(n - p).scale(-1 if p % 2 else 1)
            if i + 1 < len(ps):
                ents[(i + 1, i)] = z.d(p)[n - p].scale(-1 if p % 2 else 1)
        diffs[n] = block(F, rows, cols, ents)
    return Complex(F, dims, diffs)


def outer_cone(phi: OuterMap) -> BiComplex:
    """Levelwise Cone φ_n with the induced outer differentials."""
    z, zp = phi.source, phi.target
    lo, hi = phi._range()
    cols = [cone_complex(phi.at(n)) for n in range(lo, hi + 1)]
    D = {n: cone_map(phi.at(n), phi.at(n - 1), z.d(n), zp.d(n)) for n in range(lo + 1, hi + 1)}
    return BiComplex(z.field, lo, cols, D)


def euler_alternating(z: BiComplex) -> int:
    return sum((-1) ** (p % 2) * euler(z.col(p)) for p in range(z.a, z.b + 1))


# 𝔔_k, 𝔏_k, 𝔲_k, 𝔳_k -------------------------------------------------------------

@dataclass(frozen=True)
class Reduction:
    k: int
    source: BiComplex
    Q: BiComplex
    L: BiComplex
    u: OuterMap  # source -> Q, a Frobenius quasi-isomorphism
    v: OuterMap  # L -> Q, levelwise the identity

    def check(self) -> Report:
        checks = [
            ("Q valid", self.Q.check().ok),
            ("L valid", self.L.check().ok),
            ("u outer map", self.u.check().ok),
            ("v outer map", self.v.check().ok),
            ("Tot u quasi-iso", is_quasi_iso(tot_map(self.u))),
            ("Tot v quasi-iso", is_quasi_iso(tot_map(self.v))),
        ]
        bad = [c for c, ok in checks if not ok]
        return Report(not bad, "valid" if not bad else "failed: " + ", ".join(bad), tuple(checks))


def reduce_once(k: int, z: BiComplex) -> Reduction:
    """𝔔_k z, 𝔏_k z, 𝔲_k, 𝔳_k for z with outer support <= k."""
    s = z.support
    if s is not None and s[1] > k:
        raise ValueError(f"outer support exceeds {k}")
    F = z.field
    lo = min(z.a, k - 1)
    Dk = z.d(k)
    cd = cone(Dk)
    low = {n: z.col(n) for n in range(lo, k - 1)}
    lowD = {n: z.d(n) for n in range(lo + 1, k - 1)}
    top = ChainMap(cd.cone, z.col(k - 2), cone_map(Dk, ChainMap.zero(Complex.zero(F), z.col(k - 2)), ChainMap.zero(z.col(k), Complex.zero(F)), z.d(k - 1)).mats)
    L = BiComplex(F, lo, [low[n] for n in range(lo, k - 1)] + [cd.cone], {**lowD, k - 1: top})
    Q = BiComplex(F, lo, [low[n] for n in range(lo, k - 1)] + [cd.cone, cone_id(z.col(k))], {**lowD, k - 1: top, k: cd.mu})
    zz = z.window(lo, k)
    u = OuterMap(zz, Q, {**{n: ChainMap.identity(low[n]) for n in low}, k - 1: cd.kappa, k: iota(z.col(k))})
    v = OuterMap(L, Q, {n: ChainMap.identity(L.col(n)) for n in range(lo, k)})
    return Reduction(k, zz, Q, L, u, v)


@dataclass(frozen=True)
class FullReduction:
    m: int
    core: Complex
    position: int
    steps: Tuple[Reduction, ...]


def reduce_full(z: BiComplex) -> FullReduction:
    """Apply 𝔏_b, ..., 𝔏_{a+1}; the result is T^m Tot z in outer degree a, m = -a."""
    s = z.support
    if s is None:
        return FullReduction(0, Complex.zero(z.field), z.a, ())
    a, b = s
    cur = z.window(a, b)
    steps = []
    for k in range(b, a, -1):
        red = reduce_once(k, cur)
        steps.append(red)
        cur = red.L
    return FullReduction(-a, cur.col(a), a, tuple(steps))


# canonical factorization ------------------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    x: BiComplex
    u: ChainMap
    xbar: BiComplex
    u_x: OuterMap  # x -> xbar
    z_u: BiComplex
    g_u: OuterMap  # xbar -> z_u
    lift: OuterMap  # g_u u_x
    a_u: ChainMap  # Tot z_u -> y

    def check(self) -> Report:
        checks = [
            ("xbar valid", self.xbar.check().ok),
            ("z_u valid", self.z_u.check().ok),
            ("u_x outer map", self.u_x.check().ok),
            ("g_u outer map", self.g_u.check().ok),
            ("a_u chain map", self.a_u.is_chain_map()),
            ("u = a_u Tot(lift)", self.a_u @ tot_map(self.lift) == self.u),
            ("a_u quasi-iso", is_quasi_iso(self.a_u)),
        ]
        bad = [c for c, ok in checks if not ok]
        return Report(not bad, "valid" if not bad else "failed: " + ", ".join(bad), tuple(checks))


def d_prime_tower(x: BiComplex) -> Dict[int, ChainMap]:
    """d'_{n+1} = 0 -> x_n and d'_k = Cone(0, d_k): Cone d'_{k+1} -> x_{k-1}."""
    F = x.field
    n = x.b
    Z = Complex.zero(F)
    dp = {n + 1: ChainMap.zero(Z, x.col(n))}
    for k in range(n, 0, -1):
        prev = dp[k + 1]
        dp[k] = cone_map(prev, ChainMap.zero(Z, x.col(k - 1)), ChainMap.zero(prev.source, Z), x.d(k))
    return dp


def canonical_factorization(x: BiComplex, u: ChainMap) -> Factorization:
    """u = a_u Tot(g_u 𝔲_x) with a_u a quasi-isomorphism, for x supported in [0, n]."""
    s = x.support
    if s is not None and s[0] < 0:
        raise ValueError("outer support must lie in degrees >= 0")
    F = x.field
    x = x.window(0, max(x.b, 0))
    n = x.b
    if u.source != tot(x):
        raise ShapeMismatch("u must start at Tot x")
    y = u.target
    dp = d_prime_tower(x)
    cones = {k: cone(dp[k + 1]) for k in range(0, n + 1)}
    xbar_cols = [cones[k].cone for k in range(0, n + 1)]
    xbar_D = {k: cones[k - 1].kappa @ dp[k] for k in range(1, n + 1)}
    xbar = BiComplex(F, 0, xbar_cols, xbar_D)
    u_x = OuterMap(x, xbar, {k: cones[k].kappa for k in range(0, n + 1)})
    if n == 0:
        z_u = BiComplex(F, 0, [y])
        g_u = OuterMap(xbar, z_u, {0: u})
    else:
        z_cols = [y] + [cone_id(xbar_cols[k]) for k in range(1, n + 1)]
        z_D = {1: u @ cones[0].mu}
        for k in range(2, n + 1):
            z_D[k] = iota(xbar_cols[k - 1]) @ cones[k - 1].mu
        z_u = BiComplex(F, 0, z_cols, z_D)
        g_u = OuterMap(xbar, z_u, {0: u, **{k: iota(xbar_cols[k]) for k in range(1, n + 1)}})
    lift = g_u @ u_x
    a_u = _factor_a(x, u, z_u, lift)
    return Factorization(x, u, xbar, u_x, z_u, g_u, lift, a_u)


def _factor_a(x: BiComplex, u: ChainMap, z_u: BiComplex, lift: OuterMap) -> ChainMap:
    """a_u = Cone(0, id_y, H): Tot z_u -> y with H a null-homotopy of d̲_0 agreeing with u on Tot(lift)."""
    y = u.target
    F = y.field
    if z_u.b == 0:
        return ChainMap(tot(z_u), y, {n: Matrix.identity(F, y.dim(n)) for n in y.dims})
    g = bottom_map(z_u)  # A -> y
    A = g.source
    L = _tot_map_geq0(lift.sigma_geq(1).reindex(-1))  # A_x -> A
    Ax = L.source
    # unknowns θ_n: A_{n-1} -> y_n with d θ + θ d = -g and θ L = u on the first block of Tot x
    degs = sorted(set(A.dims) | {k + 1 for k in A.dims})
    unknowns = {n: (y.dim(n), A.dim(n - 1)) for n in degs}
    eqs = []
    for m in sorted(set(A.dims)):
        terms = [(m, Matrix.identity(F, y.dim(m)), A.d(m))]
        if m + 1 in unknowns:
            terms.append((m + 1, y.d(m + 1), Matrix.identity(F, A.dim(m))))
        eqs.append((terms, -g[m]))
    for n in degs:
        k = Ax.dim(n - 1)
        if not k:
            continue
        first = u[n].submatrix(0, y.dim(n), 0, k)
        eqs.append(([(n, Matrix.identity(F, y.dim(n)), L[n - 1])], first))
    sol = solve_sylvester_system(F, unknowns, eqs)
    if sol is None:
        raise ValueError("no null-homotopy compatible with u")
    Z = Complex.zero(F)
    H = make_c_homotopy(ChainMap.zero(A, y), g, {n - 1: m for n, m in sol.items()})
    sq = HomotopySquare(g, ChainMap.zero(Z, y), ChainMap.zero(A, Z), ChainMap.identity(y), H)
    return cone_of_square(sq)
