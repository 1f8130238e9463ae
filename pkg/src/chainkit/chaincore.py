"""Bounded chain complexes of finite-dimensional vector spaces.

Homological convention: d_n maps degree n to degree n-1 and has shape
dims(n-1) x dims(n).
"""
from __future__ import annotations

import functools

from dataclasses import dataclass, field as dc_field
from typing import Dict, Mapping, Optional, Tuple

from .exactlin import (
    Field,
    FieldMismatch,
    Matrix,
    ShapeMismatch,
    block_diag,
    column_space,
    complement,
    hstack,
    inverse,
    kernel_basis,
    rank,
    solve,
)


class Complex:
    """A bounded chain complex.  Zero dimensions and empty differentials are not stored."""

    __slots__ = ("field", "dims", "diffs", "memo")

    def __init__(self, field: Field, dims: Mapping[int, int], diffs: Optional[Mapping[int, Matrix]] = None):
        self.field = field
        # functor images are cached here; values are immutable so this is safe
        self.memo: Dict = {}
        self.dims: Dict[int, int] = {int(n): int(k) for n, k in sorted(dims.items()) if k}
        if any(k < 0 for k in self.dims.values()):
            raise ValueError("negative dimension")
        self.diffs: Dict[int, Matrix] = {}
        for n, m in sorted((diffs or {}).items()):
            n = int(n)
            if m.field != field:
                raise FieldMismatch(f"differential d_{n} over {m.field}, complex over {field}")
            shape = (self.dim(n - 1), self.dim(n))
            if m.shape != shape:
                raise ShapeMismatch(f"d_{n} has shape {m.shape}, expected {shape}")
            if shape[0] and shape[1]:
                self.diffs[n] = m

    @classmethod
    def zero(cls, field: Field) -> "Complex":
        return cls(field, {})

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int) -> Matrix:
        m = self.diffs.get(n)
        if m is None:
            return Matrix.zeros(self.field, self.dim(n - 1), self.dim(n))
        return m

    @property
    def support(self) -> Optional[Tuple[int, int]]:
        if not self.dims:
            return None
        ks = list(self.dims)
        return (min(ks), max(ks))

    def degrees(self, pad: int = 0):
        """Degrees from min-pad to max+pad (empty for the zero complex)."""
        s = self.support
        if s is None:
            return range(0)
        return range(s[0] - pad, s[1] + pad + 1)

    def is_zero(self) -> bool:
        return not self.dims

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Complex):
            return NotImplemented
        if self.field != other.field or self.dims != other.dims:
            return False
        return all(self.d(n) == other.d(n) for n in self.degrees(1))

    def __hash__(self):
        return hash((self.field, tuple(self.dims.items())))

    def __repr__(self):
        return f"Complex({self.field}, dims={self.dims})"


@dataclass(frozen=True)
class Report:
    ok: bool
    message: str = "valid"
    checks: Tuple[Tuple[str, bool], ...] = ()

    def __bool__(self):
        return self.ok


def validate_complex(c: Complex) -> Report:
    for n, m in c.diffs.items():
        if m.shape != (c.dim(n - 1), c.dim(n)):
            return Report(False, f"d_{n} has wrong shape {m.shape}")
    for n in c.degrees(1):
        if not (c.d(n - 1) @ c.d(n)).is_zero():
            return Report(False, f"d∘d ≠ 0 at degree {n}")
    return Report(True)


class ChainMap:
    """A degreewise family f_n: source_n -> target_n."""

    __slots__ = ("source", "target", "mats")

    def __init__(self, source: Complex, target: Complex, mats: Optional[Mapping[int, Matrix]] = None):
        if source.field != target.field:
            raise FieldMismatch("chain map between complexes over different fields")
        self.source = source
        self.target = target
        self.mats: Dict[int, Matrix] = {}
        for n, m in sorted((mats or {}).items()):
            n = int(n)
            shape = (target.dim(n), source.dim(n))
            if m.shape != shape:
                raise ShapeMismatch(f"f_{n} has shape {m.shape}, expected {shape}")
            if shape[0] and shape[1]:
                self.mats[n] = m

    @property
    def field(self) -> Field:
        return self.source.field

    def __getitem__(self, n: int) -> Matrix:
        m = self.mats.get(n)
        if m is None:
            return Matrix.zeros(self.field, self.target.dim(n), self.source.dim(n))
        return m

    def degrees(self):
        lo = [s[0] for s in (self.source.support, self.target.support) if s]
        hi = [s[1] for s in (self.source.support, self.target.support) if s]
        if not lo:
            return range(0)
        return range(min(lo), max(hi) + 1)

    @classmethod
    def identity(cls, x: Complex) -> "ChainMap":
        return cls(x, x, {n: Matrix.identity(x.field, k) for n, k in x.dims.items()})

    @classmethod
    def zero(cls, x: Complex, y: Complex) -> "ChainMap":
        return cls(x, y, {})

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """self ∘ other."""
        if other.target != self.source:
            raise ShapeMismatch("composition of non-composable chain maps")
        return ChainMap(other.source, self.target, {n: self[n] @ other[n] for n in other.source.dims if self.target.dim(n)})

    def _parallel(self, other: "ChainMap"):
        if self.source != other.source or self.target != other.target:
            raise ShapeMismatch("maps are not parallel")

    def __add__(self, other: "ChainMap") -> "ChainMap":
        self._parallel(other)
        return ChainMap(self.source, self.target, {n: self[n] + other[n] for n in self.degrees()})

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        self._parallel(other)
        return ChainMap(self.source, self.target, {n: self[n] - other[n] for n in self.degrees()})

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.source, self.target, {n: -m for n, m in self.mats.items()})

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, {n: m.scale(c) for n, m in self.mats.items()})

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        return all(self[n] == other[n] for n in self.degrees())

    def __hash__(self):
        return hash((self.source, self.target))

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"

    def is_chain_map(self) -> bool:
        x, y = self.source, self.target
        rng = set(x.degrees(1)) | set(y.degrees(1))
        return all(self[n - 1] @ x.d(n) == y.d(n) @ self[n] for n in rng)

    def is_iso(self) -> bool:
        x, y = self.source, self.target
        if x.dims != y.dims:
            return False
        return all(rank(self[n]) == k for n, k in x.dims.items())

    def inverse(self) -> "ChainMap":
        if not self.is_iso():
            raise ValueError("chain map is not an isomorphism")
        return ChainMap(self.target, self.source, {n: inverse(m) for n, m in self.mats.items()})


def direct_sum(x: Complex, y: Complex) -> Complex:
    if x.field != y.field:
        raise FieldMismatch("direct sum over different fields")
    F = x.field
    degs = set(x.dims) | set(y.dims)
    dims = {n: x.dim(n) + y.dim(n) for n in degs}
    diffs = {n: block_diag(F, [x.d(n), y.d(n)]) for n in degs | {n + 1 for n in degs}}
    return Complex(F, dims, diffs)


def direct_sum_of(field: Field, xs) -> Complex:
    out = Complex.zero(field)
    for x in xs:
        out = direct_sum(out, x)
    return out


def direct_sum_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    src = direct_sum(f.source, g.source)
    tgt = direct_sum(f.target, g.target)
    F = f.field
    return ChainMap(src, tgt, {n: block_diag(F, [f[n], g[n]]) for n in src.dims})


# homology ------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyDegree:
    dim: int
    cycles: Matrix
    boundaries: Matrix
    reps: Matrix  # cycles completing the boundaries to a basis of Z_n


@dataclass
class HomologyTable:
    complex: Complex
    degrees: Dict[int, HomologyDegree] = dc_field(default_factory=dict)

    def dim(self, n: int) -> int:
        h = self.degrees.get(n)
        return h.dim if h else 0

    def dims(self) -> Dict[int, int]:
        return {n: h.dim for n, h in self.degrees.items() if h.dim}


def _extend(F: Field, base: Matrix, candidates: Matrix) -> Matrix:
    """Columns of candidates (in order) that extend base to a larger independent set."""
    chosen = []
    cur = base
    r = rank(cur)
    for j in range(candidates.cols):
        c = candidates.column(j)
        trial = hstack(F, base.rows, [cur, c])
        if rank(trial) > r:
            chosen.append(c)
            cur = trial
            r += 1
    return hstack(F, base.rows, chosen)


def homology_degree(x: Complex, n: int) -> HomologyDegree:
    F = x.field
    Z = kernel_basis(x.d(n))
    B = column_space(x.d(n + 1))
    reps = _extend(F, B, Z)
    return HomologyDegree(Z.cols - B.cols, Z, B, reps)


def homology(x: Complex) -> HomologyTable:
    return HomologyTable(x, {n: homology_degree(x, n) for n in x.dims})


def betti(x: Complex) -> Dict[int, int]:
    """Nonzero homology dimensions, via ranks only."""
    out = {}
    for n, k in x.dims.items():
        h = k - rank(x.d(n)) - rank(x.d(n + 1))
        if h:
            out[n] = h
    return out


def euler(x: Complex) -> int:
    return sum((-1) ** (n % 2) * k for n, k in x.dims.items())


def homology_coordinates(hd: HomologyDegree, v: Matrix) -> Matrix:
    """Coordinates of cycles v in the basis reps, modulo boundaries."""
    F = v.field
    basis = hstack(F, v.rows, [hd.boundaries, hd.reps])
    c = solve(basis, v)
    if c is None:
        raise ValueError("vector is not a cycle")
    nb = hd.boundaries.cols
    return c.submatrix(nb, c.rows, 0, c.cols)


def induced_map(f: ChainMap, n: int, hx: Optional[HomologyTable] = None, hy: Optional[HomologyTable] = None) -> Matrix:
    """H_n(f) in the representative bases."""
    x, y = f.source, f.target
    dx = hx.degrees.get(n) if hx else homology_degree(x, n)
    dy = hy.degrees.get(n) if hy else homology_degree(y, n)
    if dx is None:
        dx = homology_degree(x, n)
    if dy is None:
        dy = homology_degree(y, n)
    return homology_coordinates(dy, f[n] @ dx.reps)


def is_quasi_iso(f: ChainMap) -> bool:
    hx, hy = homology(f.source), homology(f.target)
    for n in f.degrees():
        a, b = hx.dim(n), hy.dim(n)
        if a != b:
            return False
        if a and rank(induced_map(f, n, hx, hy)) != a:
            return False
    return True


def is_acyclic(x: Complex) -> bool:
    return not betti(x)


def is_contractible(x: Complex) -> bool:
    # over a field acyclic complexes are contractible; minimal_model gives the contraction
    return is_acyclic(x)


# minimal models ------------------------------------------------------------

@dataclass(frozen=True)
class MinimalModel:
    model: Complex
    p: ChainMap
    s: ChainMap
    h: Dict[int, Matrix]  # h_n: x_n -> x_{n+1}

    def h_at(self, n: int) -> Matrix:
        x = self.p.source
        m = self.h.get(n)
        return m if m is not None else Matrix.zeros(x.field, x.dim(n + 1), x.dim(n))

    def check(self) -> Report:
        x, M = self.p.source, self.model
        checks = []
        checks.append(("d_model = 0", all(M.d(n).is_zero() for n in M.degrees(1))))
        checks.append(("p chain map", self.p.is_chain_map()))
        checks.append(("s chain map", self.s.is_chain_map()))
        checks.append(("p s = id", self.p @ self.s == ChainMap.identity(M)))
        ok = True
        for n in x.degrees(1):
            lhs = x.d(n + 1) @ self.h_at(n) + self.h_at(n - 1) @ x.d(n)
            rhs = Matrix.identity(x.field, x.dim(n)) - self.s[n] @ self.p[n]
            if lhs != rhs:
                ok = False
                break
        checks.append(("dh + hd = id - sp", ok))
        good = all(c for _, c in checks)
        bad = [name for name, c in checks if not c]
        return Report(good, "valid" if good else "failed: " + ", ".join(bad), tuple(checks))


# values are immutable, so repeated calls on equal complexes share one result
@functools.lru_cache(maxsize=1024)
def minimal_model(x: Complex) -> MinimalModel:
    """Split x_n = B_n ⊕ H_n ⊕ W_n with d_n: W_n ≅ B_{n-1}; contract B ⊕ W."""
    F = x.field
    W, Bs, Hs, coords = {}, {}, {}, {}
    Z = {n: kernel_basis(x.d(n)) for n in x.dims}
    for n in x.dims:
        W[n] = complement(Z[n], x.dim(n))
    for n in x.dims:
        w_next = W.get(n + 1)
        Bs[n] = x.d(n + 1) @ w_next if w_next is not None else Matrix.zeros(F, x.dim(n), 0)
        Hs[n] = _extend(F, Bs[n], Z[n])
        basis = hstack(F, x.dim(n), [Bs[n], Hs[n], W[n]])
        coords[n] = inverse(basis)
    mdims = {n: Hs[n].cols for n in x.dims}
    model = Complex(F, mdims)
    s_m, p_m, h = {}, {}, {}
    for n in x.dims:
        nb, nh = Bs[n].cols, Hs[n].cols
        s_m[n] = Hs[n]
        p_m[n] = coords[n].submatrix(nb, nb + nh, 0, x.dim(n))
        if nb:
            h[n] = W[n + 1] @ coords[n].submatrix(0, nb, 0, x.dim(n))
    return MinimalModel(model, ChainMap(x, model, p_m), ChainMap(model, x, s_m), h)
