"""Bounded filtered complexes and homotopy commutative diagrams between them.

A FilteredObject with amplitude [a, b] is x_a -> ... -> x_b, zero below a
and constant at x_b above b.  A DiagramMap (f, H) carries C-homotopies
H_n: i^y_n f_n ⇒ f_{n+1} i^x_n, stored as squares (f_n, f_{n+1}, H_n)
from [i^x_n] to [i^y_n].
"""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence

from .chaincore import ChainMap, Complex, Report, direct_sum_of, euler, is_quasi_iso
from .complicial import cone_id, cone_id_map, iota, sigma
from .conecyl import cone_complex, cone_of_square, cyl, cyl_of_square, transpose_square
from .exactlin import Field, ShapeMismatch, block
from .homotopy import (
    CHomotopy,
    HomotopySquare,
    bullet_C,
    c_homotopy_from_map,
    cc_equal,
    star_C,
)


def block_map(field: Field, srcs: Sequence[Complex], tgts: Sequence[Complex], entries: Dict) -> ChainMap:
    """ChainMap ⊕srcs -> ⊕tgts from {(row, col): ChainMap}; missing blocks are zero."""
    S, T = direct_sum_of(field, srcs), direct_sum_of(field, tgts)
    mats = {}
    for n in S.dims:
        rs = [t.dim(n) for t in tgts]
        cs = [s.dim(n) for s in srcs]
        mats[n] = block(field, rs, cs, {k: m[n] for k, m in entries.items()})
    return ChainMap(S, T, mats)


class FilteredObject:
    """x_a -> x_{a+1} -> ... -> x_b."""

    __slots__ = ("field", "a", "b", "stages", "maps")

    def __init__(self, field: Field, a: int, stages: Sequence[Complex], maps: Sequence[ChainMap]):
        if not stages:
            stages = [Complex.zero(field)]
        if len(maps) != len(stages) - 1:
            raise ShapeMismatch("need one structure map between consecutive stages")
        for k, m in enumerate(maps):
            if m.source != stages[k] or m.target != stages[k + 1]:
                raise ShapeMismatch(f"structure map {a + k} does not fit the stages")
        for s in stages:
            if s.field != field:
                raise ShapeMismatch("stages over different fields")
        self.field = field
        self.a = a
        self.b = a + len(stages) - 1
        self.stages = tuple(stages)
        self.maps = tuple(maps)

    @classmethod
    def zero(cls, field: Field, a: int = 0) -> "FilteredObject":
        return cls(field, a, [Complex.zero(field)], [])

    def stage(self, n: int) -> Complex:
        if n < self.a:
            return Complex.zero(self.field)
        return self.stages[min(n, self.b) - self.a]

    def i(self, n: int) -> ChainMap:
        """i_n: x_n -> x_{n+1}."""
        if n >= self.b:
            return ChainMap.identity(self.stage(n))
        if n < self.a:
            return ChainMap.zero(self.stage(n), self.stage(n + 1))
        return self.maps[n - self.a]

    def composite(self, m: int, n: int) -> ChainMap:
        """i_{n-1}···i_m: x_m -> x_n for m <= n."""
        out = ChainMap.identity(self.stage(m))
        for k in range(m, n):
            out = self.i(k) @ out
        return out

    @property
    def stalk(self) -> Complex:
        return self.stages[-1]

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.stages)

    def dim(self) -> int:
        """Least k with x_n = x_∞ for n >= k; -1 for the zero object."""
        if self.is_zero():
            return -1
        k = self.b
        while k > self.a and self.stages[k - 1 - self.a] == self.stalk and self.i(k - 1) == ChainMap.identity(self.stalk):
            k -= 1
        return k

    def normalized(self) -> "FilteredObject":
        """Drop leading zero stages and trailing constant stages (strict equality)."""
        st, mp, a = list(self.stages), list(self.maps), self.a
        while len(st) > 1 and st[0].is_zero():
            st.pop(0)
            mp.pop(0)
            a += 1
        while len(st) > 1 and st[-2] == st[-1] and mp[-1] == ChainMap.identity(st[-1]):
            st.pop()
            mp.pop()
        return FilteredObject(self.field, a, st, mp)

    def window(self, lo: int, hi: int) -> "FilteredObject":
        """The same filtered object stored on [lo, hi] (lo <= a, hi >= b)."""
        if lo > self.a and not all(self.stage(n).is_zero() for n in range(self.a, lo)):
            raise ValueError("window cuts off nonzero stages")
        hi = max(hi, lo)
        return FilteredObject(self.field, lo, [self.stage(n) for n in range(lo, hi + 1)], [self.i(n) for n in range(lo, hi)])

    def check(self) -> Report:
        checks = [(f"i_{self.a + k} chain map", m.is_chain_map()) for k, m in enumerate(self.maps)]
        bad = [n for n, ok in checks if not ok]
        return Report(not bad, "valid" if not bad else "failed: " + ", ".join(bad), tuple(checks))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FilteredObject):
            return NotImplemented
        x, y = self.normalized(), other.normalized()
        if x.is_zero() and y.is_zero():
            return True
        return x.a == y.a and x.stages == y.stages and x.maps == y.maps

    def __repr__(self):
        return f"FilteredObject([{self.a},{self.b}], dims={[s.dims for s in self.stages]})"


def _square(x: FilteredObject, y: FilteredObject, f: Dict[int, ChainMap], n: int, H: Optional[CHomotopy]) -> HomotopySquare:
    return HomotopySquare(x.i(n), y.i(n), f[n], f[n + 1], H)


class DiagramMap:
    """(f, H): x -> y, stored on a window [lo, hi] covering both amplitudes."""

    __slots__ = ("source", "target", "lo", "hi", "f", "squares")

    def __init__(self, source: FilteredObject, target: FilteredObject, f: Dict[int, ChainMap], H: Optional[Dict[int, CHomotopy]] = None):
        self.source, self.target = source, target
        lo = min([source.a, target.a] + list(f))
        hi = max([source.b, target.b] + list(f) + [n + 1 for n in (H or {})])
        self.lo, self.hi = lo, hi
        fm = {}
        for n in range(lo, hi + 1):
            m = f.get(n)
            if m is None:
                m = f[max(f)] if f and n > max(f) else ChainMap.zero(source.stage(n), target.stage(n))
            if m.source != source.stage(n) or m.target != target.stage(n):
                raise ShapeMismatch(f"f_{n} does not fit the stages")
            fm[n] = m
        fm[hi + 1] = fm[hi]
        fm[lo - 1] = ChainMap.zero(source.stage(lo - 1), target.stage(lo - 1))
        self.f = fm
        H = H or {}
        self.squares = {n: _square(source, target, fm, n, H.get(n)) for n in range(lo - 1, hi + 1)}
        for n in H:
            if not lo - 1 <= n <= hi:
                raise ValueError(f"H_{n} outside the stored window")

    def f_at(self, n: int) -> ChainMap:
        if n < self.lo:
            return ChainMap.zero(self.source.stage(n), self.target.stage(n))
        return self.f[min(n, self.hi)]

    def H_at(self, n: int) -> CHomotopy:
        if n in self.squares:
            return self.squares[n].H
        return _square(self.source, self.target, {n: self.f_at(n), n + 1: self.f_at(n + 1)}, n, None).H

    def square(self, n: int) -> HomotopySquare:
        if n in self.squares:
            return self.squares[n]
        return _square(self.source, self.target, {n: self.f_at(n), n + 1: self.f_at(n + 1)}, n, None)

    @property
    def f_inf(self) -> ChainMap:
        return self.f[self.hi]

    def is_strict(self) -> bool:
        return all(sq.H.H.is_zero() for sq in self.squares.values())

    def check(self) -> Report:
        checks = []
        for n in range(self.lo, self.hi + 1):
            checks.append((f"f_{n} chain map", self.f[n].is_chain_map()))
        for n, sq in self.squares.items():
            checks.append((f"H_{n} homotopy", sq.is_valid()))
        checks.append(("H vanishes at the top", self.squares[self.hi].H.H.is_zero()))
        bad = [n for n, ok in checks if not ok]
        return Report(not bad, "valid" if not bad else "failed: " + ", ".join(bad), tuple(checks))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiagramMap):
            return NotImplemented
        lo, hi = min(self.lo, other.lo) - 1, max(self.hi, other.hi) + 1
        return all(
            self.f_at(n) == other.f_at(n) and self.H_at(n) == other.H_at(n) for n in range(lo, hi + 1)
        )

    @classmethod
    def identity(cls, x: FilteredObject) -> "DiagramMap":
        return cls(x, x, {n: ChainMap.identity(x.stage(n)) for n in range(x.a, x.b + 1)})

    @classmethod
    def strict(cls, x: FilteredObject, y: FilteredObject, f: Dict[int, ChainMap]) -> "DiagramMap":
        return cls(x, y, f)


def diagram_map(x: FilteredObject, y: FilteredObject, f: Dict[int, ChainMap], H: Optional[Dict[int, ChainMap]] = None) -> DiagramMap:
    """Build (f, H) with each H_n given as a morphism C x_n -> y_{n+1}."""
    base = DiagramMap(x, y, f)
    homs = {}
    for n, Hm in (H or {}).items():
        homs[n] = c_homotopy_from_map(y.i(n) @ base.f_at(n), base.f_at(n + 1) @ x.i(n), Hm)
    return DiagramMap(x, y, f, homs)


def compose_diagram_maps(gK: DiagramMap, fH: DiagramMap) -> DiagramMap:
    """(g, K)(f, H) = (gf, K ⋆ H)."""
    if fH.target != gK.source:
        raise ShapeMismatch("diagram maps are not composable")
    lo, hi = min(fH.lo, gK.lo), max(fH.hi, gK.hi)
    f = {n: gK.f_at(n) @ fH.f_at(n) for n in range(lo, hi + 1)}
    H = {n: star_C(gK.square(n), fH.square(n)).H for n in range(lo - 1, hi + 1)}
    return DiagramMap(fH.source, gK.target, f, H)


def add_diagram_maps(fH: DiagramMap, gK: DiagramMap) -> DiagramMap:
    lo, hi = min(fH.lo, gK.lo), max(fH.hi, gK.hi)
    f = {n: fH.f_at(n) + gK.f_at(n) for n in range(lo, hi + 1)}
    H = {n: fH.H_at(n) + gK.H_at(n) for n in range(lo - 1, hi + 1)}
    return DiagramMap(fH.source, fH.target, f, H)


def cc_equal_maps(fH: DiagramMap, gK: DiagramMap) -> bool:
    """Equality in the quotient by CC-homotopy, decided by a levelwise linear solve."""
    lo, hi = min(fH.lo, gK.lo) - 1, max(fH.hi, gK.hi)
    if any(fH.f_at(n) != gK.f_at(n) for n in range(lo, hi + 2)):
        return False
    return all(cc_equal(fH.H_at(n), gK.H_at(n)) for n in range(lo, hi + 1))


# truncations, shift, stalk, embedding -----------------------------------------

def truncate(mode: str, n: int, x: FilteredObject) -> FilteredObject:
    """σ_{≤n} x (mode '<=') or σ_{≥n} x (mode '>=')."""
    F = x.field
    if mode in ("<=", "le"):
        if n < x.a:
            return FilteredObject.zero(F, n)
        return FilteredObject(F, x.a, [x.stage(k) for k in range(x.a, n + 1)], [x.i(k) for k in range(x.a, n)]).normalized()
    if mode in (">=", "ge"):
        top = max(x.b, n)
        return FilteredObject(F, n, [x.stage(k) for k in range(n, top + 1)], [x.i(k) for k in range(n, top)]).normalized()
    raise ValueError(f"unknown truncation mode {mode!r}")


def truncate_map(mode: str, n: int, fH: DiagramMap) -> DiagramMap:
    x, y = truncate(mode, n, fH.source), truncate(mode, n, fH.target)
    lo, hi = fH.lo, fH.hi
    if mode in ("<=", "le"):
        f = {k: fH.f_at(min(k, n)) for k in range(lo, max(hi, n) + 1)}
        H = {k: fH.H_at(k) for k in range(lo - 1, n)}
    else:
        f = {k: fH.f_at(k) for k in range(n, max(hi, n) + 1)}
        H = {k: fH.H_at(k) for k in range(n, max(hi, n) + 1)}
    return DiagramMap(x, y, f, H)


def truncation_unit(mode: str, n: int, x: FilteredObject) -> DiagramMap:
    """The strict maps σ_{≥n} x -> x and σ_{≤n} x -> x."""
    t = truncate(mode, n, x)
    lo, hi = min(t.a, x.a), max(t.b, x.b, n)
    if mode in ("<=", "le"):
        f = {k: x.composite(min(k, n), k) if k >= x.a else ChainMap.zero(t.stage(k), x.stage(k)) for k in range(lo, hi + 1)}
    else:
        f = {k: ChainMap.identity(x.stage(k)) if k >= n else ChainMap.zero(t.stage(k), x.stage(k)) for k in range(lo, hi + 1)}
    return DiagramMap(t, x, f)


def shift(k: int, x: FilteredObject) -> FilteredObject:
    """x[k]_n = x_{k+n}."""
    return FilteredObject(x.field, x.a - k, x.stages, x.maps)


def shift_map(k: int, fH: DiagramMap) -> DiagramMap:
    f = {n - k: m for n, m in fH.f.items() if n <= fH.hi}
    H = {n - k: sq.H for n, sq in fH.squares.items()}
    return DiagramMap(shift(k, fH.source), shift(k, fH.target), f, H)


def stalk(x: FilteredObject) -> Complex:
    return x.stalk


def embed(z: Complex, k: int = 0) -> FilteredObject:
    """𝔧(z)[k]: z concentrated from filtration degree -k on."""
    return FilteredObject(z.field, -k, [z], [])


def embed_map(u: ChainMap, k: int = 0) -> DiagramMap:
    return DiagramMap(embed(u.source, k), embed(u.target, k), {-k: u})


# level complicial structure ----------------------------------------------------

def _c_square(sq: HomotopySquare) -> HomotopySquare:
    """C of a square: (Ca, Cb, CH·σ) from [Cf] to [Cg]."""
    x = sq.f.source
    Hm = cone_id_map(sq.H.H) @ sigma(x)
    ga, bf = cone_id_map(sq.g @ sq.a), cone_id_map(sq.b @ sq.f)
    return HomotopySquare(cone_id_map(sq.f), cone_id_map(sq.g), cone_id_map(sq.a), cone_id_map(sq.b), c_homotopy_from_map(ga, bf, Hm))


def level_C(x: FilteredObject) -> FilteredObject:
    return FilteredObject(x.field, x.a, [cone_id(s) for s in x.stages], [cone_id_map(m) for m in x.maps])


def level_C_map(fH: DiagramMap) -> DiagramMap:
    f = {n: cone_id_map(m) for n, m in fH.f.items() if n <= fH.hi}
    H = {n: _c_square(sq).H for n, sq in fH.squares.items()}
    return DiagramMap(level_C(fH.source), level_C(fH.target), f, H)


# cone and skip functors --------------------------------------------------------

def cone_functor(k: int, x: FilteredObject) -> FilteredObject:
    """𝔠_k: x_n below k, C x_n from k on, with structure map ι·i_{k-1} at k-1."""
    lo, hi = min(x.a, k - 1), max(x.b, k)
    stages = [x.stage(n) if n <= k - 1 else cone_id(x.stage(n)) for n in range(lo, hi + 1)]
    maps = []
    for n in range(lo, hi):
        if n <= k - 2:
            maps.append(x.i(n))
        elif n == k - 1:
            maps.append(iota(x.stage(k)) @ x.i(k - 1))
        else:
            maps.append(cone_id_map(x.i(n)))
    return FilteredObject(x.field, lo, stages, maps).normalized()


def cone_functor_map(k: int, fH: DiagramMap) -> DiagramMap:
    x, y = fH.source, fH.target
    cx, cy = cone_functor(k, x), cone_functor(k, y)
    lo, hi = min(fH.lo, k - 1), max(fH.hi, k)
    f = {n: fH.f_at(n) if n <= k - 1 else cone_id_map(fH.f_at(n)) for n in range(lo, hi + 1)}
    H = {}
    for n in range(lo - 1, hi + 1):
        sq = fH.square(n)
        if n <= k - 2:
            H[n] = sq.H
        elif n == k - 1:
            top = HomotopySquare(iota(x.stage(k)), iota(y.stage(k)), fH.f_at(k), cone_id_map(fH.f_at(k)))
            H[n] = bullet_C(top, sq).H
        else:
            H[n] = _c_square(sq).H
    return DiagramMap(cx, cy, f, H)


def skip_functor(k: int, x: FilteredObject) -> FilteredObject:
    """𝔰_k: drop stage k, inserting i_k i_{k-1} at k-1."""
    lo, hi = min(x.a, k - 1), max(x.b, k + 1)
    stages = [x.stage(n) if n <= k - 1 else x.stage(n + 1) for n in range(lo, hi)]
    maps = []
    for n in range(lo, hi - 1):
        if n <= k - 2:
            maps.append(x.i(n))
        elif n == k - 1:
            maps.append(x.i(k) @ x.i(k - 1))
        else:
            maps.append(x.i(n + 1))
    if not stages:
        return FilteredObject.zero(x.field, lo)
    return FilteredObject(x.field, lo, stages, maps).normalized()


def skip_functor_map(k: int, fH: DiagramMap) -> DiagramMap:
    """On maps the homotopy at k-1 is the pasted square H_k • H_{k-1}."""
    sx, sy = skip_functor(k, fH.source), skip_functor(k, fH.target)
    lo, hi = min(fH.lo, k - 1), max(fH.hi, k + 1)
    f = {n: fH.f_at(n) if n <= k - 1 else fH.f_at(n + 1) for n in range(lo, hi)}
    H = {}
    for n in range(lo - 1, hi):
        if n <= k - 2:
            H[n] = fH.H_at(n)
        elif n == k - 1:
            H[n] = bullet_C(fH.square(k), fH.square(k - 1)).H
        else:
            H[n] = fH.H_at(n + 1)
    return DiagramMap(sx, sy, f, H)


# strictification ---------------------------------------------------------------

def _r_summands(x: FilteredObject, a: int, k: int) -> List[Complex]:
    """Summands of (𝔯x)_{a+k} = x_{a+k} ⊕ C x_{a+k-1} ⊕ ... ⊕ C x_a."""
    return [x.stage(a + k)] + [cone_id(x.stage(a + j)) for j in range(k - 1, -1, -1)]


def strictify_object(a: int, b: int, x: FilteredObject) -> FilteredObject:
    """𝔯_{[a,b]} x, whose structure maps are split monomorphisms."""
    _check_amplitude(a, b, x)
    F = x.field
    stages, maps = [], []
    for k in range(0, b - a + 1):
        stages.append(direct_sum_of(F, _r_summands(x, a, k)))
    for k in range(0, b - a):
        src, tgt = _r_summands(x, a, k), _r_summands(x, a, k + 1)
        xi1 = cyl(x.i(a + k)).xi1  # x_{a+k} -> x_{a+k+1} ⊕ C x_{a+k}
        ents = {(0, 0): _row_part(xi1, 0, tgt[:2]), (1, 0): _row_part(xi1, 1, tgt[:2])}
        for j in range(1, len(src)):
            ents[(j + 1, j)] = ChainMap.identity(src[j])
        maps.append(block_map(F, src, tgt, ents))
    return FilteredObject(F, a, stages, maps)


def _row_part(m: ChainMap, idx: int, parts: Sequence[Complex]) -> ChainMap:
    """The component of m landing in summand idx of ⊕parts."""
    off = lambda n: sum(p.dim(n) for p in parts[:idx])
    tgt = parts[idx]
    return ChainMap(m.source, tgt, {n: m[n].submatrix(off(n), off(n) + tgt.dim(n), 0, m.source.dim(n)) for n in m.source.dims})


def _check_amplitude(a: int, b: int, x: FilteredObject):
    if a > b:
        raise ValueError("need a <= b")
    if any(not x.stage(n).is_zero() for n in range(x.a, a)) or x.dim() > b:
        raise ValueError(f"amplitude of x is not contained in [{a},{b}]")


def strictify(a: int, b: int, fH: DiagramMap) -> DiagramMap:
    """𝔯_{[a,b]}(f, H), a strictly commuting map 𝔯x -> 𝔯y."""
    x, y = fH.source, fH.target
    _check_amplitude(a, b, x)
    _check_amplitude(a, b, y)
    F = x.field
    rx, ry = strictify_object(a, b, x), strictify_object(a, b, y)
    maps = {a: fH.f_at(a)}
    Hk = None  # ℋ_k as a dict {(row, col): ChainMap} over the summands
    for k in range(1, b - a + 1):
        src, tgt = _r_summands(x, a, k), _r_summands(y, a, k)
        cy = cyl_of_square(fH.square(a + k - 1))  # on x_{a+k} ⊕ C x_{a+k-1}
        ents = {}
        for r_ in range(2):
            for c_ in range(2):
                ents[(r_, c_)] = _sub(cy, r_, c_, src[:2], tgt[:2])
        for j in range(2, len(src)):
            ents[(j, j)] = cone_id_map(fH.f_at(a + k - j))
        if k >= 2:
            Hk = _next_H(fH, a, k, Hk)
            for (r_, c_), m in Hk.items():
                key = (r_, c_ + 2)
                ents[key] = ents[key] + m if key in ents else m
        maps[a + k] = block_map(F, src, tgt, ents)
    return DiagramMap(rx, ry, maps)


def _sub(m: ChainMap, r_: int, c_: int, srcs: Sequence[Complex], tgts: Sequence[Complex]) -> ChainMap:
    src, tgt = srcs[c_], tgts[r_]
    ro = lambda n: sum(p.dim(n) for p in tgts[:r_])
    co = lambda n: sum(p.dim(n) for p in srcs[:c_])
    return ChainMap(src, tgt, {n: m[n].submatrix(ro(n), ro(n) + tgt.dim(n), co(n), co(n) + src.dim(n)) for n in src.dims})


def _next_H(fH: DiagramMap, a: int, k: int, Hprev):
    """ℋ_k: C x_{[a,a+k-2]} -> y_{a+k} ⊕ C y_{[a+1,a+k-1]} from ℋ_{k-1} by the recurrence.

    Blocks are indexed (row, col) with rows y_{a+k}, C y_{a+k-1}, ..., C y_{a+1}
    and columns C x_{a+k-2}, ..., C x_a.
    """
    y = fH.target
    m = a + k - 1  # the new column is C x_{m-1}, H_{m-1}: C x_{m-1} -> y_m
    xi = cyl(y.i(m)).xi1  # y_m -> y_{m+1} ⊕ C y_m
    parts = [y.stage(m + 1), cone_id(y.stage(m))]
    Hm = fH.H_at(m - 1).H
    out = {(0, 0): -(_row_part(xi, 0, parts) @ Hm), (1, 0): -(_row_part(xi, 1, parts) @ Hm)}
    if Hprev:
        for (r_, c_), blk in Hprev.items():
            if r_ == 0:
                out[(0, c_ + 1)] = _row_part(xi, 0, parts) @ blk
                out[(1, c_ + 1)] = _row_part(xi, 1, parts) @ blk
            else:
                out[(r_ + 1, c_ + 1)] = blk
    return out


def strictify_comparison(a: int, b: int, x: FilteredObject) -> DiagramMap:
    """The strict level weak equivalence 𝔯x -> x, the projection onto x_n at each stage."""
    F = x.field
    rx = strictify_object(a, b, x)
    f = {}
    for k in range(0, b - a + 1):
        src = _r_summands(x, a, k)
        ents = {(0, 0): ChainMap.identity(src[0])}
        f[a + k] = block_map(F, src, [x.stage(a + k)], ents)
    return DiagramMap(rx, x, f)


# weak equivalences -------------------------------------------------------------

def is_level_weq(fH: DiagramMap) -> bool:
    return all(is_quasi_iso(fH.f_at(n)) for n in range(fH.lo, fH.hi + 1))


def is_stable_weq(fH: DiagramMap) -> bool:
    return is_quasi_iso(fH.f_inf)


# levelwise cones ---------------------------------------------------------------

def level_cone(fH: DiagramMap) -> FilteredObject:
    """Stages Cone f_n with structure maps Cone(i^x_n, i^y_n, -H_n)."""
    lo, hi = fH.lo, fH.hi
    stages = [cone_complex(fH.f_at(n)) for n in range(lo, hi + 1)]
    maps = [cone_of_square(transpose_square(fH.square(n))) for n in range(lo, hi)]
    return FilteredObject(fH.source.field, lo, stages, maps)


def euler_profile(x: FilteredObject, lo: int, hi: int) -> Dict[int, int]:
    return {n: euler(x.stage(n)) for n in range(lo, hi + 1)}
