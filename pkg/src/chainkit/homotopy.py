"""C- and P-homotopies, CC-homotopies and homotopy commutative squares.

Homotopies are stored as the classical family h_n: x_n -> y_{n+1}.  The
assembled morphisms H: Cx -> y and H': x -> Py are derived views.
"""
from __future__ import annotations

from typing import Dict, Mapping, Optional

from .chaincore import ChainMap, Complex, Report
from .complicial import (
    cone_id,
    cone_id_map,
    iota,
    path,
    q,
    r,
    s_prime,
    shift,
    shift_map,
)
from .exactlin import Matrix, ShapeMismatch, block, solve_sylvester_system


class HomotopyError(ValueError):
    pass


Family = Mapping[int, Matrix]


def _family(x: Complex, y: Complex, fam: Optional[Family], deg: int) -> Dict[int, Matrix]:
    """Normalize a degree-deg family x_n -> y_{n+deg}, dropping empty entries."""
    out = {}
    for n, m in (fam or {}).items():
        n = int(n)
        shape = (y.dim(n + deg), x.dim(n))
        if m.shape != shape:
            raise ShapeMismatch(f"family entry at {n} has shape {m.shape}, expected {shape}")
        if shape[0] and shape[1]:
            out[n] = m
    return out


def _at(fam: Dict[int, Matrix], x: Complex, y: Complex, n: int, deg: int) -> Matrix:
    m = fam.get(n)
    return m if m is not None else Matrix.zeros(x.field, y.dim(n + deg), x.dim(n))


def _check_parallel(f: ChainMap, g: ChainMap):
    if f.source != g.source or f.target != g.target:
        raise HomotopyError("maps are not parallel")


def _family_degrees(x: Complex, y: Complex, deg: int):
    lo = [s[0] for s in (x.support, y.support) if s]
    hi = [s[1] for s in (x.support, y.support) if s]
    if not lo:
        return range(0)
    return range(min(lo) - abs(deg) - 1, max(hi) + abs(deg) + 2)


# C-homotopies ----------------------------------------------------------------

class CHomotopy:
    """A C-homotopy from f to g: d h + h d = f - g."""

    __slots__ = ("f", "g", "h")

    def __init__(self, f: ChainMap, g: ChainMap, h: Optional[Family] = None):
        _check_parallel(f, g)
        self.f, self.g = f, g
        self.h = _family(f.source, f.target, h, 1)

    @property
    def source(self) -> Complex:
        return self.f.source

    @property
    def target(self) -> Complex:
        return self.f.target

    def h_at(self, n: int) -> Matrix:
        return _at(self.h, self.source, self.target, n, 1)

    @property
    def H(self) -> ChainMap:
        """H_n = (-h_{n-1} | f_n - g_n): Cx -> y."""
        x, y = self.source, self.target
        F = x.field
        mats = {
            n: block(F, [y.dim(n)], [x.dim(n - 1), x.dim(n)], {(0, 0): -self.h_at(n - 1), (0, 1): self.f[n] - self.g[n]})
            for n in cone_id(x).dims
        }
        return ChainMap(cone_id(x), y, mats)

    def defect(self) -> Optional[int]:
        """First degree where the homotopy equation fails, or None."""
        x, y = self.source, self.target
        for n in _family_degrees(x, y, 1):
            lhs = y.d(n + 1) @ self.h_at(n) + self.h_at(n - 1) @ x.d(n)
            if lhs != self.f[n] - self.g[n]:
                return n
        return None

    def is_valid(self) -> bool:
        return self.defect() is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, CHomotopy):
            return NotImplemented
        return (
            self.f == other.f
            and self.g == other.g
            and all(self.h_at(n) == other.h_at(n) for n in _family_degrees(self.source, self.target, 1))
        )

    def __hash__(self):
        return hash((self.f, self.g))

    def __add__(self, other: "CHomotopy") -> "CHomotopy":
        degs = set(self.h) | set(other.h)
        return CHomotopy(self.f + other.f, self.g + other.g, {n: self.h_at(n) + other.h_at(n) for n in degs})

    def __neg__(self) -> "CHomotopy":
        return CHomotopy(-self.f, -self.g, {n: -m for n, m in self.h.items()})

    def reverse(self) -> "CHomotopy":
        """The C-homotopy from g to f."""
        return CHomotopy(self.g, self.f, {n: -m for n, m in self.h.items()})

    def __repr__(self):
        return f"CHomotopy({self.source!r} -> {self.target!r})"


def make_c_homotopy(f: ChainMap, g: ChainMap, h: Optional[Family] = None) -> CHomotopy:
    out = CHomotopy(f, g, h)
    n = out.defect()
    if n is not None:
        raise HomotopyError(f"homotopy equation fails at degree {n}")
    return out


def zero_homotopy(f: ChainMap) -> CHomotopy:
    return CHomotopy(f, f, {})


def c_homotopy_from_map(f: ChainMap, g: ChainMap, H: ChainMap) -> CHomotopy:
    """Read h off an assembled H: Cx -> y with H ι = f - g."""
    _check_parallel(f, g)
    x, y = f.source, f.target
    if H.source != cone_id(x) or H.target != y:
        raise HomotopyError("H has the wrong source or target")
    if not H.is_chain_map():
        raise HomotopyError("H is not a chain map")
    if H @ iota(x) != f - g:
        raise HomotopyError("H ι ≠ f - g")
    h = {n - 1: -H[n].submatrix(0, y.dim(n), 0, x.dim(n - 1)) for n in cone_id(x).dims}
    return make_c_homotopy(f, g, h)


# P-homotopies ----------------------------------------------------------------

class PHomotopy:
    """A P-homotopy from f to g, stored by the same family h as a C-homotopy."""

    __slots__ = ("f", "g", "h")

    def __init__(self, f: ChainMap, g: ChainMap, h: Optional[Family] = None):
        _check_parallel(f, g)
        self.f, self.g = f, g
        self.h = _family(f.source, f.target, h, 1)

    @property
    def source(self) -> Complex:
        return self.f.source

    @property
    def target(self) -> Complex:
        return self.f.target

    def h_at(self, n: int) -> Matrix:
        return _at(self.h, self.source, self.target, n, 1)

    @property
    def H(self) -> ChainMap:
        """H'_n = (f_n - g_n; -h_n): x -> Py."""
        x, y = self.source, self.target
        F = x.field
        mats = {
            n: block(F, [y.dim(n), y.dim(n + 1)], [x.dim(n)], {(0, 0): self.f[n] - self.g[n], (1, 0): -self.h_at(n)})
            for n in x.dims
        }
        return ChainMap(x, path(y), mats)

    def is_valid(self) -> bool:
        H = self.H
        return H.is_chain_map() and q(self.target) @ H == self.f - self.g

    def __eq__(self, other) -> bool:
        if not isinstance(other, PHomotopy):
            return NotImplemented
        return (
            self.f == other.f
            and self.g == other.g
            and all(self.h_at(n) == other.h_at(n) for n in _family_degrees(self.source, self.target, 1))
        )

    def __hash__(self):
        return hash((self.f, self.g))


def make_p_homotopy(f: ChainMap, g: ChainMap, h: Optional[Family] = None) -> PHomotopy:
    out = PHomotopy(f, g, h)
    if not out.is_valid():
        raise HomotopyError("P-homotopy equation fails")
    return out


def p_homotopy_from_map(f: ChainMap, g: ChainMap, H: ChainMap) -> PHomotopy:
    """Read h off an assembled H': x -> Py with q H' = f - g."""
    _check_parallel(f, g)
    x, y = f.source, f.target
    if H.source != x or H.target != path(y):
        raise HomotopyError("H' has the wrong source or target")
    if not H.is_chain_map() or q(y) @ H != f - g:
        raise HomotopyError("H' is not a P-homotopy from f to g")
    h = {n: -H[n].submatrix(y.dim(n), y.dim(n) + y.dim(n + 1), 0, x.dim(n)) for n in x.dims}
    return make_p_homotopy(f, g, h)


def convert_A(H: CHomotopy) -> PHomotopy:
    """A(H) = P(H)·s'_x·ι_x."""
    x = H.source
    PH = cone_id_map(shift_map(H.H, -1))
    Hp = PH @ s_prime(x) @ iota(x)
    return p_homotopy_from_map(H.f, H.g, Hp)


def convert_B(Hp: PHomotopy) -> CHomotopy:
    """B(H') = q_y·r_{T^{-1}y}·C(H')."""
    y = Hp.target
    Hc = q(y) @ r(shift(y, -1)) @ cone_id_map(Hp.H)
    return c_homotopy_from_map(Hp.f, Hp.g, Hc)


# homotopy commutative squares ------------------------------------------------

class HomotopySquare:
    """(a, b, H) from [f: x -> x'] to [g: y -> y'], H: g a ⇒ b f."""

    __slots__ = ("f", "g", "a", "b", "H")

    def __init__(self, f: ChainMap, g: ChainMap, a: ChainMap, b: ChainMap, H: Optional[CHomotopy] = None):
        if a.source != f.source or a.target != g.source or b.source != f.target or b.target != g.target:
            raise ShapeMismatch("square maps do not fit together")
        ga, bf = g @ a, b @ f
        if H is None:
            H = make_c_homotopy(ga, bf, {})
        elif H.f != ga or H.g != bf:
            raise HomotopyError("H is not a homotopy from g a to b f")
        self.f, self.g, self.a, self.b, self.H = f, g, a, b, H

    def is_valid(self) -> bool:
        return self.H.is_valid()

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomotopySquare):
            return NotImplemented
        return (self.f, self.g, self.a, self.b, self.H) == (other.f, other.g, other.a, other.b, other.H)

    def __hash__(self):
        return hash((self.f, self.g))


def identity_square(f: ChainMap) -> HomotopySquare:
    """(id, id, 0) from [f] to [f]."""
    return HomotopySquare(f, f, ChainMap.identity(f.source), ChainMap.identity(f.target))


def star_C(sq2: HomotopySquare, sq1: HomotopySquare) -> HomotopySquare:
    """(a', b', H')(a, b, H) = (a'a, b'b, H' ⋆_C H) with H' ⋆_C H = b'H + H'C(a)."""
    if sq2.f != sq1.g:
        raise ShapeMismatch("squares are not ⋆-composable")
    Hm = sq2.b @ sq1.H.H + sq2.H.H @ cone_id_map(sq1.a)
    a, b = sq2.a @ sq1.a, sq2.b @ sq1.b
    H = c_homotopy_from_map(sq2.g @ a, b @ sq1.f, Hm)
    return HomotopySquare(sq1.f, sq2.g, a, b, H)


def bullet_C(sq2: HomotopySquare, sq1: HomotopySquare) -> HomotopySquare:
    """(b, c, K)•(a, b, H) = (a, c, K•_C H) from [f'f] to [g'g], K•_C H = K C(f) + g'H."""
    if sq2.a != sq1.b:
        raise ShapeMismatch("squares are not •-composable")
    Hm = sq2.H.H @ cone_id_map(sq1.f) + sq2.g @ sq1.H.H
    f, g = sq2.f @ sq1.f, sq2.g @ sq1.g
    H = c_homotopy_from_map(g @ sq1.a, sq2.b @ f, Hm)
    return HomotopySquare(f, g, sq1.a, sq2.b, H)


def _p_square(sq: HomotopySquare) -> PHomotopy:
    return convert_A(sq.H)


def star_P(sq2: HomotopySquare, sq1: HomotopySquare) -> HomotopySquare:
    """P-version: H' ⋆_P H = P(b')H + H'a, on the A-images; returned through B."""
    if sq2.f != sq1.g:
        raise ShapeMismatch("squares are not ⋆-composable")
    Hm = cone_id_map(shift_map(sq2.b, -1)) @ _p_square(sq1).H + _p_square(sq2).H @ sq1.a
    a, b = sq2.a @ sq1.a, sq2.b @ sq1.b
    Hp = p_homotopy_from_map(sq2.g @ a, b @ sq1.f, Hm)
    return HomotopySquare(sq1.f, sq2.g, a, b, convert_B(Hp))


def bullet_P(sq2: HomotopySquare, sq1: HomotopySquare) -> HomotopySquare:
    """P-version: K •_P H = K f + P(g')H."""
    if sq2.a != sq1.b:
        raise ShapeMismatch("squares are not •-composable")
    Hm = _p_square(sq2).H @ sq1.f + cone_id_map(shift_map(sq2.g, -1)) @ _p_square(sq1).H
    f, g = sq2.f @ sq1.f, sq2.g @ sq1.g
    Hp = p_homotopy_from_map(g @ sq1.a, sq2.b @ f, Hm)
    return HomotopySquare(f, g, sq1.a, sq2.b, convert_B(Hp))


# CC-homotopies ---------------------------------------------------------------

def _cc_defect_map(x: Complex) -> ChainMap:
    """C∗ι - ι∗C: Cx -> CCx."""
    return cone_id_map(iota(x)) - iota(cone_id(x))


def is_cc_homotopy(S: ChainMap, H: CHomotopy, L: CHomotopy) -> bool:
    """S: CCx -> y is a chain map with S·(C∗ι - ι∗C) = H - L."""
    x = H.source
    if H.f != L.f or H.g != L.g:
        return False
    if S.source != cone_id(cone_id(x)) or S.target != H.target:
        return False
    return S.is_chain_map() and S @ _cc_defect_map(x) == H.H - L.H


class CCHomotopy:
    """A CC-homotopy from H to L with family s_n: x_n -> y_{n+2}.

    Normalized form S_n = (-s_{n-2}, 0, h_{n-1} - l_{n-1}, 0) on
    CCx_n = x_{n-2} ⊕ x_{n-1} ⊕ x_{n-1} ⊕ x_n.
    """

    __slots__ = ("H", "L", "s")

    def __init__(self, H: CHomotopy, L: CHomotopy, s: Optional[Family] = None):
        if H.f != L.f or H.g != L.g:
            raise HomotopyError("CC-homotopy between homotopies of different maps")
        self.H, self.L = H, L
        self.s = _family(H.source, H.target, s, 2)

    @property
    def source(self) -> Complex:
        return self.H.source

    @property
    def target(self) -> Complex:
        return self.H.target

    def s_at(self, n: int) -> Matrix:
        return _at(self.s, self.source, self.target, n, 2)

    @property
    def S(self) -> ChainMap:
        x, y = self.source, self.target
        F = x.field
        CCx = cone_id(cone_id(x))
        mats = {}
        for n in CCx.dims:
            cols = [x.dim(n - 2), x.dim(n - 1), x.dim(n - 1), x.dim(n)]
            mats[n] = block(F, [y.dim(n)], cols, {(0, 0): -self.s_at(n - 2), (0, 2): self.H.h_at(n - 1) - self.L.h_at(n - 1)})
        return ChainMap(CCx, y, mats)

    def defect(self) -> Optional[int]:
        """First degree where h_n - l_n = d s_n - s_{n-1} d fails."""
        x, y = self.source, self.target
        for n in _family_degrees(x, y, 2):
            lhs = self.H.h_at(n) - self.L.h_at(n)
            rhs = y.d(n + 2) @ self.s_at(n) - self.s_at(n - 1) @ x.d(n)
            if lhs != rhs:
                return n
        return None

    def is_valid(self) -> bool:
        return self.defect() is None and is_cc_homotopy(self.S, self.H, self.L)

    def __add__(self, other: "CCHomotopy") -> "CCHomotopy":
        """S + T: H ⇒ M from S: H ⇒ L and T: L ⇒ M."""
        if self.L != other.H:
            raise HomotopyError("CC-homotopies are not composable")
        degs = set(self.s) | set(other.s)
        return CCHomotopy(self.H, other.L, {n: self.s_at(n) + other.s_at(n) for n in degs})

    def __neg__(self) -> "CCHomotopy":
        """-S: L ⇒ H."""
        return CCHomotopy(self.L, self.H, {n: -m for n, m in self.s.items()})


def make_cc_homotopy(H: CHomotopy, L: CHomotopy, s: Optional[Family] = None) -> CCHomotopy:
    out = CCHomotopy(H, L, s)
    n = out.defect()
    if n is not None:
        raise HomotopyError(f"CC-homotopy equation fails at degree {n}")
    return out


def cc_homotopy_from_map(S: ChainMap, H: CHomotopy, L: CHomotopy) -> CCHomotopy:
    """Normalize an arbitrary CC-homotopy morphism S to its s-family."""
    if not is_cc_homotopy(S, H, L):
        raise HomotopyError("S is not a CC-homotopy from H to L")
    x = H.source
    s = {n - 2: -S[n].submatrix(0, S.target.dim(n), 0, x.dim(n - 2)) for n in S.source.dims}
    return make_cc_homotopy(H, L, s)


def cc_reflexive(H: CHomotopy) -> CCHomotopy:
    return CCHomotopy(H, H, {})


def find_cc_homotopy(H: CHomotopy, L: CHomotopy) -> Optional[CCHomotopy]:
    """Solve d s - s d = h - l for s, or return None."""
    if H.f != L.f or H.g != L.g:
        return None
    x, y = H.source, H.target
    F = x.field
    degs = list(_family_degrees(x, y, 2))
    unknowns = {n: (y.dim(n + 2), x.dim(n)) for n in degs}
    eqs = []
    for n in degs:
        terms = [(n, y.d(n + 2), Matrix.identity(F, x.dim(n))), (n - 1, -Matrix.identity(F, y.dim(n + 1)), x.d(n))]
        eqs.append((terms, H.h_at(n) - L.h_at(n)))
    sol = solve_sylvester_system(F, unknowns, eqs)
    if sol is None:
        return None
    return make_cc_homotopy(H, L, sol)


def cc_equal(H: CHomotopy, L: CHomotopy) -> bool:
    return find_cc_homotopy(H, L) is not None


def find_c_homotopy(f: ChainMap, g: ChainMap) -> Optional[CHomotopy]:
    """Solve d h + h d = f - g for h, or return None."""
    _check_parallel(f, g)
    x, y = f.source, f.target
    F = x.field
    degs = list(_family_degrees(x, y, 1))
    unknowns = {n: (y.dim(n + 1), x.dim(n)) for n in degs}
    eqs = []
    for n in degs:
        terms = [(n, y.d(n + 1), Matrix.identity(F, x.dim(n))), (n - 1, Matrix.identity(F, y.dim(n)), x.d(n))]
        eqs.append((terms, f[n] - g[n]))
    sol = solve_sylvester_system(F, unknowns, eqs)
    if sol is None:
        return None
    return make_c_homotopy(f, g, sol)


def cc_interchange_witness(H: HomotopySquare, K: HomotopySquare, L: HomotopySquare, M: HomotopySquare) -> CCHomotopy:
    """M·C(H) as a CC-homotopy from (M•K)⋆(L•H) to (M⋆L)•(K⋆H).

    H: [u] -> [v], K: [v] -> [w], L: [u'] -> [v'], M: [v'] -> [w'].
    """
    if K.f != H.g or M.f != L.g or L.a != H.b or M.a != K.b:
        raise ShapeMismatch("squares do not form a 2x2 grid")
    lhs = star_C(bullet_C(M, K), bullet_C(L, H))
    rhs = bullet_C(star_C(M, L), star_C(K, H))
    S = M.H.H @ cone_id_map(H.H.H)
    return cc_homotopy_from_map(S, lhs.H, rhs.H)


# homotopy inverses -----------------------------------------------------------

def merge_homotopy_inverses(f: ChainMap, g: ChainMap, h: ChainMap, H: CHomotopy, K: CHomotopy):
    """From H: hf ⇒ id_x and K: fg ⇒ id_y, homotopies h ⇒ g and fh ⇒ id_y."""
    x, y = f.source, f.target
    if not (H.is_valid() and K.is_valid()):
        raise HomotopyError("input homotopies are invalid")
    if H.f != h @ f or H.g != ChainMap.identity(x) or K.f != f @ g or K.g != ChainMap.identity(y):
        raise HomotopyError("input homotopies have the wrong ends")
    Cg = cone_id_map(g)
    first = -(h @ K.H) + H.H @ Cg
    second = -(f @ h @ K.H) + f @ H.H @ Cg + K.H
    return (
        c_homotopy_from_map(h, g, first),
        c_homotopy_from_map(f @ h, ChainMap.identity(y), second),
    )


def homotopy_report(H: CHomotopy) -> Report:
    n = H.defect()
    return Report(n is None, "valid" if n is None else f"homotopy equation fails at degree {n}")
