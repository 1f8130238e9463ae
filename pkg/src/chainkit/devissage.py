"""Homology cell structure, dévissage filtrations and their K₀ (Euler) shadow.

Filtrations are FilteredObjects.  A dévissage filtration has Cone i_n in
D_{n+1} for every n, where D_n is the heart: homology concentrated in degree n.
The step n -> n+1 is charged to degree n+1; the first stage counts as the cone
of 0 -> x_a.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .chaincore import ChainMap, Complex, Report, betti, direct_sum_of, euler, is_quasi_iso, minimal_model
from .complicial import shift as T_shift
from .conecyl import cone, cone_complex
from .exactlin import Field, Matrix, ShapeMismatch, hstack
from .filtered import FilteredObject, block_map, cone_functor, embed


# cell structure ---------------------------------------------------------------

def leq(n: int, x: Complex) -> bool:
    return all(k <= n for k in betti(x))


def geq(n: int, x: Complex) -> bool:
    return all(k >= n for k in betti(x))


def heart(n: int, x: Complex) -> bool:
    return leq(n, x) and geq(n, x)


_MODES = {"<=": leq, "≤": leq, ">=": geq, "≥": geq, "=": heart}


def cell_membership(x: Complex, n: int, mode: str = "=") -> bool:
    try:
        return _MODES[mode](n, x)
    except KeyError:
        raise ValueError(f"unknown mode {mode!r}") from None


def is_m_connected(f: ChainMap, m: int) -> bool:
    """Cone f lies in D_{≥m+1}."""
    return geq(m + 1, cone_complex(f))


# dévissage filtrations -------------------------------------------------------------

def step_cone(x: FilteredObject, n: int) -> Complex:
    """Cone i_n; for n = a - 1 this is Cone(0 -> x_a) = x_a."""
    return cone_complex(x.i(n))


@dataclass(frozen=True)
class DevissageFiltration:
    x: FilteredObject
    certificates: Dict[int, Dict[int, int]]  # n -> betti numbers of Cone i_n, concentrated in n+1


def validate_devissage(x: FilteredObject) -> Tuple[Optional[DevissageFiltration], Report]:
    """Check Cone i_n ∈ D_{n+1} for n = a-1, ..., b-1, then the lemma x_k ∈ D_{≤k}."""
    certs, checks = {}, []
    for n in range(x.a - 1, x.b):
        b = betti(step_cone(x, n))
        ok = all(k == n + 1 for k in b)
        checks.append((f"Cone i_{n} in D_{n + 1}", ok))
        if not ok:
            return None, Report(False, f"step {n}: Cone i_{n} has homology in degrees {sorted(b)}", tuple(checks))
        certs[n] = b
    for k in range(x.a, x.b + 1):
        ok = leq(k, x.stage(k))
        checks.append((f"x_{k} in D_<={k}", ok))
        if not ok:
            return None, Report(False, f"stage {k} not in D_<={k}", tuple(checks))
    return DevissageFiltration(x, certs), Report(True, "valid", tuple(checks))


@dataclass(frozen=True)
class BuiltDevissage:
    filtration: DevissageFiltration
    a: ChainMap  # stalk -> z, a quasi-isomorphism


def build_devissage(z: Complex) -> BuiltDevissage:
    """y_k = ⊕_{n≤k} H_n(z) inside the minimal model, with a = s: model -> z."""
    F = z.field
    mm = minimal_model(z)
    M = mm.model
    degs = sorted(n for n in M.dims if M.dim(n))
    if not degs:
        x = FilteredObject.zero(F)
        return BuiltDevissage(DevissageFiltration(x, {-1: {}}), ChainMap.zero(Complex.zero(F), z))
    lo, hi = degs[0], degs[-1]
    stages = [Complex(F, {n: M.dim(n) for n in M.dims if n <= k}) for k in range(lo, hi + 1)]
    maps = []
    for k in range(lo, hi):
        s, t = stages[k - lo], stages[k + 1 - lo]
        maps.append(ChainMap(s, t, {n: _inclusion(F, t.dim(n), s.dim(n)) for n in s.dims}))
    x = FilteredObject(F, lo, stages, maps)
    if x.stalk != M:
        raise AssertionError("stalk of the built filtration differs from the minimal model")
    dv, rep = validate_devissage(x)
    if dv is None:
        raise AssertionError(rep.message)
    return BuiltDevissage(dv, mm.s)


def _inclusion(F: Field, rows: int, cols: int) -> Matrix:
    return Matrix.identity(F, rows).submatrix(0, rows, 0, cols)


def graded_euler_of(x: FilteredObject) -> Dict[int, int]:
    """γ_{n+1} = χ(Cone i_n) for n = a-1, ..., b-1; zero entries dropped."""
    out = {}
    for n in range(x.a - 1, x.b):
        c = euler(step_cone(x, n))
        if c:
            out[n + 1] = c
    return out


def graded_euler(dv: DevissageFiltration) -> Dict[int, int]:
    return graded_euler_of(dv.x)


def telescoping_holds(x: FilteredObject) -> bool:
    return sum(graded_euler_of(x).values()) == euler(x.stalk)


# K₀ grid functors ----------------------------------------------------------------

def _check_len(name: str, v: Sequence, n: int):
    if len(v) != n:
        raise ShapeMismatch(f"{name} expects a tuple of length {n}, got {len(v)}")


def _check_heart(v: Sequence[Complex], a: int):
    for i, c in enumerate(v):
        if not heart(a + i, c):
            raise ValueError(f"component {i} is not in the heart D_{a + i}")


def filtered_sum(F: Field, xs: Sequence[FilteredObject], lo: int, hi: int) -> FilteredObject:
    """Levelwise direct sum on the window [lo, hi]."""
    xs = [x.window(lo, hi) for x in xs]
    if not xs:
        return FilteredObject(F, lo, [Complex.zero(F)] * (hi - lo + 1), [ChainMap.identity(Complex.zero(F))] * (hi - lo))
    stages = [direct_sum_of(F, [x.stage(n) for x in xs]) for n in range(lo, hi + 1)]
    maps = []
    for n in range(lo, hi):
        srcs = [x.stage(n) for x in xs]
        tgts = [x.stage(n + 1) for x in xs]
        maps.append(block_map(F, srcs, tgts, {(k, k): x.i(n) for k, x in enumerate(xs)}))
    return FilteredObject(F, lo, stages, maps)


def grid_A(a: int, b: int, v: Sequence[Complex], check_heart: bool = True) -> FilteredObject:
    """⊕_i 𝔧(v_i) placed from filtration degree a+i on."""
    _check_len("A", v, b - a + 1)
    if check_heart:
        _check_heart(v, a)
    F = v[0].field
    return filtered_sum(F, [embed(c, -(a + i)) for i, c in enumerate(v)], a, b)


def grid_B(a: int, b: int, v: Sequence[Complex], check_heart: bool = True) -> FilteredObject:
    """⊕_i 𝔠_{a+i+1} 𝔧(v_i) placed from a+i on; stably trivial."""
    _check_len("B", v, b - a)
    if check_heart:
        _check_heart(v, a)
    if not v:
        raise ShapeMismatch("B needs a < b")
    F = v[0].field
    return filtered_sum(F, [cone_functor(a + i + 1, embed(c, -(a + i))) for i, c in enumerate(v)], a, b)


def grid_C(a: int, b: int, x: FilteredObject) -> List[Complex]:
    """(x_a, Cone i_a, ..., Cone i_{b-1})."""
    return [x.stage(a)] + [step_cone(x, n) for n in range(a, b)]


def grid_D(a: int, b: int, x: FilteredObject) -> List[Complex]:
    """(x_a, ..., x_{b-1})."""
    return [x.stage(n) for n in range(a, b)]


def grid_E(a: int, b: int, v: Sequence[Complex]) -> List[Complex]:
    """w_j = v_j ⊕ T v_{j-1} for j = 0..b-a."""
    _check_len("E", v, b - a)
    F = v[0].field
    out = []
    for j in range(b - a + 1):
        parts = []
        if j < len(v):
            parts.append(v[j])
        if j >= 1:
            parts.append(T_shift(v[j - 1], 1))
        out.append(direct_sum_of(F, parts))
    return out


def grid_functor(name: str, a: int, b: int, arg):
    fn = {"A": grid_A, "B": grid_B, "C": grid_C, "D": grid_D, "E": grid_E}.get(name)
    if fn is None:
        raise ValueError(f"unknown grid functor {name!r}")
    return fn(a, b, arg)


def ca_comparison(a: int, b: int, v: Sequence[Complex]) -> List[ChainMap]:
    """Quasi-isomorphisms C(A(v))_i -> v_i: the identity at i = 0, the cone projection after."""
    x = grid_A(a, b, v)
    out = [ChainMap.identity(v[0])]
    for n in range(a, b):
        cd = cone(x.i(n))
        parts = [c if i <= n - a + 1 else Complex.zero(x.field) for i, c in enumerate(v)]
        proj = block_map(x.field, parts, [v[n - a + 1]], {(0, n - a + 1): ChainMap.identity(v[n - a + 1])})
        out.append(_cone_projection(cd, proj))
    return out


def _cone_projection(cd, proj: ChainMap) -> ChainMap:
    """Cone(i) -> x_{n+1} -> v: vanishes on the shifted source block."""
    K, tgt = cd.cone, proj.target
    src = cd.f.source
    mats = {}
    for n in K.dims:
        z = Matrix.zeros(K.field, tgt.dim(n), src.dim(n - 1))
        mats[n] = hstack(K.field, tgt.dim(n), [z, proj[n]])
    return ChainMap(K, tgt, mats)


def k0_class(x: Complex) -> Dict[int, int]:
    """Class of x in K₀ of the homology cell structure: its betti numbers."""
    return betti(x)


def ca_identity_report(a: int, b: int, v: Sequence[Complex]) -> Report:
    """C∘A = id: literal at component 0, equal K₀ classes and an explicit quasi-iso everywhere."""
    cav = grid_C(a, b, grid_A(a, b, v))
    comps = ca_comparison(a, b, v)
    checks = [("component 0 literal", cav[0] == v[0])]
    for i, (c, w, m) in enumerate(zip(cav, v, comps)):
        checks.append((f"component {i} K0 class", k0_class(c) == k0_class(w)))
        checks.append((f"component {i} comparison quasi-iso", m.source == c and m.is_chain_map() and is_quasi_iso(m)))
    bad = [n for n, ok in checks if not ok]
    return Report(not bad, "valid" if not bad else "failed: " + ", ".join(bad), tuple(checks))


def b_gamma(a: int, b: int, v: Sequence[Complex]) -> Dict[int, int]:
    """(χ(v_i) - χ(v_{i-1})) charged to degree a+i, zero entries dropped."""
    out = {}
    for j in range(b - a + 1):
        c = (euler(v[j]) if j < len(v) else 0) - (euler(v[j - 1]) if j >= 1 else 0)
        if c:
            out[a + j] = c
    return out


def euler_of_T(x: Complex) -> bool:
    return euler(T_shift(x, 1)) == -euler(x)
