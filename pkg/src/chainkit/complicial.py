"""The standard complicial structure on bounded chain complexes.

Functors C, T, Tinv, P act on complexes and chain maps; natural
transformations are returned as their component at a complex.  Whiskering
F∗θ∗G at x means F(θ_{G x}).
"""
from __future__ import annotations

from typing import Callable, Dict, Sequence, Tuple, Union

from .chaincore import ChainMap, Complex, Report
from .exactlin import Matrix, block

FUNCTORS = ("C", "T", "Tinv", "P")

Word = Union[str, Sequence[str]]


def _word(w: Word) -> Tuple[str, ...]:
    if isinstance(w, str):
        # "C", "T", "Tinv", "P" or a space separated composite such as "C Tinv"
        return tuple(w.split())
    return tuple(w)


# functors on objects ---------------------------------------------------------

def cone_id(x: Complex) -> Complex:
    """(Cx)_n = x_{n-1} ⊕ x_n, d = [[-d_{n-1}, 0], [-id, d_n]]."""
    out = x.memo.get("C")
    if out is None:
        out = x.memo["C"] = _cone_id(x)
    return out


def _cone_id(x: Complex) -> Complex:
    F = x.field
    degs = set(x.dims) | {n + 1 for n in x.dims}
    dims = {n: x.dim(n - 1) + x.dim(n) for n in degs}
    diffs = {}
    for n in degs | {n + 1 for n in degs}:
        diffs[n] = block(
            F,
            [x.dim(n - 2), x.dim(n - 1)],
            [x.dim(n - 1), x.dim(n)],
            {(0, 0): -x.d(n - 1), (1, 0): -1, (1, 1): x.d(n)},
        )
    return Complex(F, dims, diffs)


def shift(x: Complex, k: int = 1) -> Complex:
    """T^k x: (T^k x)_n = x_{n-k}, d = (-1)^k d_{n-k}."""
    if k == 0:
        return x
    out = x.memo.get(("T", k))
    if out is None:
        out = x.memo[("T", k)] = _shift(x, k)
        out.memo[("T", -k)] = x
    return out


def _shift(x: Complex, k: int) -> Complex:
    sign = -1 if k % 2 else 1
    return Complex(
        x.field,
        {n + k: m for n, m in x.dims.items()},
        {n + k: (m if sign == 1 else -m) for n, m in x.diffs.items()},
    )


def path(x: Complex) -> Complex:
    """P = C T^{-1}: (Px)_n = x_n ⊕ x_{n+1}."""
    return cone_id(shift(x, -1))


def apply_functor(tag: Word, x: Complex) -> Complex:
    for t in reversed(_word(tag)):
        if t == "C":
            x = cone_id(x)
        elif t == "T":
            x = shift(x, 1)
        elif t == "Tinv":
            x = shift(x, -1)
        elif t == "P":
            x = path(x)
        else:
            raise KeyError(f"unknown functor {t!r}")
    return x


# functors on maps ------------------------------------------------------------

def cone_id_map(f: ChainMap) -> ChainMap:
    """(Cf)_n = diag(f_{n-1}, f_n)."""
    x, y = f.source, f.target
    Cx, Cy = cone_id(x), cone_id(y)
    F = f.field
    mats = {
        n: block(F, [y.dim(n - 1), y.dim(n)], [x.dim(n - 1), x.dim(n)], {(0, 0): f[n - 1], (1, 1): f[n]})
        for n in Cx.dims
    }
    return ChainMap(Cx, Cy, mats)


def shift_map(f: ChainMap, k: int = 1) -> ChainMap:
    return ChainMap(shift(f.source, k), shift(f.target, k), {n + k: m for n, m in f.mats.items()})


def apply_functor_map(tag: Word, f: ChainMap) -> ChainMap:
    for t in reversed(_word(tag)):
        if t == "C":
            f = cone_id_map(f)
        elif t == "T":
            f = shift_map(f, 1)
        elif t == "Tinv":
            f = shift_map(f, -1)
        elif t == "P":
            f = cone_id_map(shift_map(f, -1))
        else:
            raise KeyError(f"unknown functor {t!r}")
    return f


# natural transformations -----------------------------------------------------

def _family(src: Complex, tgt: Complex, fn: Callable[[int], Matrix]) -> ChainMap:
    degs = set(src.dims) & set(tgt.dims)
    return ChainMap(src, tgt, {n: fn(n) for n in degs})


def iota(x: Complex) -> ChainMap:
    """ι_x: x -> Cx, (0; id)."""
    F, d = x.field, x.dim
    return _family(x, cone_id(x), lambda n: block(F, [d(n - 1), d(n)], [d(n)], {(1, 0): 1}))


def pi(x: Complex) -> ChainMap:
    """π_x: Cx -> Tx, (id, 0)."""
    F, d = x.field, x.dim
    return _family(cone_id(x), shift(x), lambda n: block(F, [d(n - 1)], [d(n - 1), d(n)], {(0, 0): 1}))


def _cc_sizes(x: Complex, n: int):
    d = x.dim
    return [d(n - 2), d(n - 1), d(n - 1), d(n)]


def r(x: Complex) -> ChainMap:
    """r_x: CCx -> Cx."""
    F, d = x.field, x.dim
    CCx = cone_id(cone_id(x))
    return _family(
        CCx,
        cone_id(x),
        lambda n: block(F, [d(n - 1), d(n)], _cc_sizes(x, n), {(0, 1): 1, (0, 2): 1, (1, 3): 1}),
    )


def sigma(x: Complex) -> ChainMap:
    """σ_x: CCx -> CCx, the signed swap of the two middle blocks."""
    F = x.field
    CCx = cone_id(cone_id(x))
    return _family(
        CCx,
        CCx,
        lambda n: block(F, _cc_sizes(x, n), _cc_sizes(x, n), {(0, 0): -1, (1, 2): 1, (2, 1): 1, (3, 3): 1}),
    )


def zeta(x: Complex) -> ChainMap:
    """ζ_x: TCx -> CCx, the section of π∗C."""
    F, d = x.field, x.dim
    return _family(
        shift(cone_id(x)),
        cone_id(cone_id(x)),
        lambda n: block(F, _cc_sizes(x, n), [d(n - 2), d(n - 1)], {(0, 0): 1, (1, 1): 1, (2, 1): -1}),
    )


def j(x: Complex) -> ChainMap:
    """j_x: T^{-1}x -> Px, (0; id)."""
    F, d = x.field, x.dim
    return _family(shift(x, -1), path(x), lambda n: block(F, [d(n), d(n + 1)], [d(n + 1)], {(1, 0): 1}))


def q(x: Complex) -> ChainMap:
    """q_x: Px -> x, (id, 0)."""
    F, d = x.field, x.dim
    return _family(path(x), x, lambda n: block(F, [d(n)], [d(n), d(n + 1)], {(0, 0): 1}))


def l(x: Complex) -> ChainMap:
    """l = -id_{TC}."""
    return -ChainMap.identity(shift(cone_id(x)))


# τ^{F,G}: FG -> GF.  Each entry gives (block sizes of FGx_n as degree offsets,
# block sizes of GFx_n, nonzero blocks).  Offsets k stand for x_{n+k}.
_TAU_TABLE: Dict[Tuple[str, str], Tuple[Tuple[int, ...], Tuple[int, ...], dict]] = {
    ("C", "C"): ((-2, -1, -1, 0), (-2, -1, -1, 0), {(0, 0): -1, (1, 2): 1, (2, 1): 1, (3, 3): 1}),
    ("C", "T"): ((-2, -1), (-2, -1), {(0, 0): -1, (1, 1): 1}),
    ("T", "C"): ((-2, -1), (-2, -1), {(0, 0): -1, (1, 1): 1}),
    ("C", "Tinv"): ((0, 1), (0, 1), {(0, 0): -1, (1, 1): 1}),
    ("Tinv", "C"): ((0, 1), (0, 1), {(0, 0): -1, (1, 1): 1}),
    # the printed table has these two cells transposed; this is the chain-map assignment
    ("P", "C"): ((-1, 0, 0, 1), (-1, 0, 0, 1), {(0, 0): 1, (1, 2): -1, (2, 1): 1, (3, 3): 1}),
    ("C", "P"): ((-1, 0, 0, 1), (-1, 0, 0, 1), {(0, 0): 1, (1, 2): 1, (2, 1): -1, (3, 3): 1}),
    ("T", "T"): ((-2,), (-2,), {(0, 0): -1}),
    ("T", "Tinv"): ((0,), (0,), {(0, 0): -1}),
    ("Tinv", "T"): ((0,), (0,), {(0, 0): -1}),
    ("Tinv", "Tinv"): ((2,), (2,), {(0, 0): -1}),
    ("P", "T"): ((-1, 0), (-1, 0), {(0, 0): 1, (1, 1): -1}),
    ("T", "P"): ((-1, 0), (-1, 0), {(0, 0): 1, (1, 1): -1}),
    ("P", "Tinv"): ((1, 2), (1, 2), {(0, 0): 1, (1, 1): -1}),
    ("Tinv", "P"): ((1, 2), (1, 2), {(0, 0): 1, (1, 1): -1}),
    ("P", "P"): ((0, 1, 1, 2), (0, 1, 1, 2), {(0, 0): 1, (1, 2): 1, (2, 1): 1, (3, 3): -1}),
}


def tau(F_: str, G: str, x: Complex) -> ChainMap:
    """τ^{F,G}_x: F G x -> G F x, from the table."""
    rows_off, cols_off, entries = _TAU_TABLE[(F_, G)][1], _TAU_TABLE[(F_, G)][0], _TAU_TABLE[(F_, G)][2]
    src = apply_functor((F_, G), x)
    tgt = apply_functor((G, F_), x)
    fld, d = x.field, x.dim
    return _family(
        src,
        tgt,
        lambda n: block(fld, [d(n + k) for k in rows_off], [d(n + k) for k in cols_off], entries),
    )


def s(x: Complex) -> ChainMap:
    """s = s_1: P -> PP (α = id)."""
    return s1(x)


def s1(x: Complex) -> ChainMap:
    """(C∗τ^{C,Tinv}∗Tinv)(σ∗Tinv Tinv)(ζ∗Tinv Tinv)(τ^{C,T}∗Tinv Tinv)(C∗τ^{Tinv,T}∗Tinv)(P∗α^{-1})."""
    y = shift(x, -1)
    y2 = shift(x, -2)
    m = apply_functor_map("C", tau("Tinv", "T", y))
    m = tau("C", "T", y2) @ m
    m = zeta(y2) @ m
    m = sigma(y2) @ m
    m = apply_functor_map("C", tau("C", "Tinv", y)) @ m
    return m


def s2(x: Complex) -> ChainMap:
    """(C∗τ^{C,Tinv}∗Tinv)(CC∗τ^{Tinv})(ζ∗Tinv Tinv)(TC∗τ^{Tinv})(T∗τ^{Tinv,C}∗Tinv)(α^{-1}∗P)."""
    y = shift(x, -1)
    y2 = shift(x, -2)
    m = apply_functor_map("T", tau("Tinv", "C", y))
    m = apply_functor_map("T C", tau("Tinv", "Tinv", x)) @ m
    m = zeta(y2) @ m
    m = apply_functor_map("C C", tau("Tinv", "Tinv", x)) @ m
    m = apply_functor_map("C", tau("C", "Tinv", y)) @ m
    return m


def s_prime(x: Complex) -> ChainMap:
    """s′ = (PC∗β^{-1})(s∗T)(C∗β) = s_{Tx}: Cx -> PCx (β = id)."""
    return s(shift(x, 1))


def nat(tag: str, x: Complex, pair: Tuple[str, str] = None) -> ChainMap:
    """Component at x of a named natural transformation."""
    if tag == "tau":
        if pair is None:
            raise KeyError("tau needs a functor pair")
        return tau(pair[0], pair[1], x)
    table = {
        "iota": iota,
        "pi": pi,
        "r": r,
        "sigma": sigma,
        "zeta": zeta,
        "j": j,
        "q": q,
        "l": l,
        "s": s,
        "s1": s1,
        "s2": s2,
        "s_prime": s_prime,
    }
    if tag not in table:
        raise KeyError(f"unknown natural transformation {tag!r}")
    return table[tag](x)


NAT_TAGS = ("iota", "pi", "r", "sigma", "zeta", "j", "q", "l", "s", "s_prime")


# identity verifier ------------------------------------------------------------

def _C(f: ChainMap) -> ChainMap:
    return cone_id_map(f)


def _T(f: ChainMap) -> ChainMap:
    return shift_map(f, 1)


def complicial_identities(x: Complex) -> Dict[str, Callable[[], bool]]:
    """Named identities, each a thunk evaluating an exact matrix equality at x."""
    Cx = cone_id(x)
    CCx = cone_id(Cx)
    TCx = shift(Cx)
    id_C = ChainMap.identity(Cx)
    id_CC = ChainMap.identity(CCx)
    Px = path(x)
    id_P = ChainMap.identity(Px)

    def unitary():
        return r(x) @ _C(iota(x)) == id_C and r(x) @ iota(Cx) == id_C

    def fundamental_1():
        lhs = r(Cx) @ _C(zeta(x)) @ _C(pi(Cx)) @ _C(sigma(x)) @ zeta(Cx)
        return lhs.is_zero()

    def fundamental_2():
        lhs = zeta(x) @ pi(Cx) @ sigma(x) @ r(Cx)
        rhs = r(Cx) @ _C(zeta(x)) @ _C(pi(Cx)) @ _C(sigma(x))
        return lhs == rhs

    def fundamental_3():
        lhs = zeta(Cx) @ _T(zeta(x)) @ _T(pi(Cx)) @ _T(sigma(x))
        rhs = _C(zeta(x)) @ _C(pi(Cx)) @ _C(sigma(x)) @ zeta(Cx)
        return lhs == rhs

    def fundamental_4():
        Tx = shift(x)
        lhs = zeta(x) @ tau("C", "T", x) @ r(Tx)
        rhs = r(Cx) @ _C(zeta(x)) @ _C(tau("C", "T", x))
        return lhs == rhs

    def tau_inverse():
        for F_ in FUNCTORS:
            for G in FUNCTORS:
                a, b = tau(F_, G, x), tau(G, F_, x)
                if b @ a != ChainMap.identity(a.source):
                    return False
        return True

    def s_prime_lemma():
        sp = s_prime(x)
        ok = q(Cx) @ sp == id_C
        lhs = r(shift(Cx, -1)) @ _C(sp)
        return ok and lhs == sp @ r(x)

    def dual_structure():
        sx = s(x)
        lhs = sx @ r(shift(x, -1))
        rhs = r(shift(Px, -1)) @ _C(sx)
        return lhs == rhs

    return {
        "unitary": unitary,
        "semi-commutativity": lambda: sigma(x) @ _C(iota(x)) == iota(Cx),
        "involution": lambda: sigma(x) @ sigma(x) == id_CC,
        "commutativity": lambda: r(x) @ sigma(x) == r(x),
        "r zeta = 0": lambda: (r(x) @ zeta(x)).is_zero(),
        "(pi*C) zeta = id": lambda: pi(Cx) @ zeta(x) == ChainMap.identity(TCx),
        "(iota*C) r + zeta (pi*C) = id": lambda: iota(Cx) @ r(x) + zeta(x) @ pi(Cx) == id_CC,
        "sigma zeta = zeta l": lambda: sigma(x) @ zeta(x) == zeta(x) @ l(x),
        "s1 = s2": lambda: s1(x) == s2(x),
        "(P*q) s = id": lambda: apply_functor_map("P", q(x)) @ s(x) == id_P,
        "(q*P) s = id": lambda: q(Px) @ s(x) == id_P,
        "(q*C) s' = id": s_prime_lemma,
        "s r = r s (dual structure)": dual_structure,
        "tau inversion": tau_inverse,
        "tau^T = -id": lambda: tau("T", "T", x) == -ChainMap.identity(shift(x, 2)),
        "tau^Tinv = -id": lambda: tau("Tinv", "Tinv", x) == -ChainMap.identity(shift(x, -2)),
        "fundamental (1)": fundamental_1,
        "fundamental (2)": fundamental_2,
        "fundamental (3)": fundamental_3,
        "fundamental (4)": fundamental_4,
    }


def verify_complicial_identities(x: Complex) -> Report:
    checks = tuple((name, bool(fn())) for name, fn in complicial_identities(x).items())
    bad = [name for name, ok in checks if not ok]
    return Report(not bad, "all identities hold" if not bad else "failed: " + ", ".join(bad), checks)
