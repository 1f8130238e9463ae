"""chainkit command line: JSON documents in, JSON (or text) out, and a seeded fuzzer."""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from .chaincore import ChainMap, Complex, euler, homology, is_quasi_iso, minimal_model, validate_complex
from .complicial import NAT_TAGS, apply_functor, cone_id, nat, shift, verify_complicial_identities
from .conecyl import cone, cone_complex, cyl, hfib, hfib_complex, homotopy_pullback, homotopy_pushout, puppe_exactness
from .devissage import build_devissage, euler_of_T, graded_euler_of, validate_devissage
from .exactlin import Field, Matrix
from .filtered import FilteredObject
from .gen import null_homotopic, rand_bicomplex, rand_chain_map, rand_complex, rand_family
from .homotopy import CHomotopy, convert_A, convert_B, make_c_homotopy
from .totred import BiComplex, OuterMap, canonical_factorization, euler_alternating, reduce_full, single_column, tot


class DocumentError(ValueError):
    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}")
        self.path = path


# documents ----------------------------------------------------------------------

def field_to_doc(F: Field) -> dict:
    return {"kind": "rational"} if F.is_rational else {"kind": "prime", "p": F.p}


def field_from_doc(d: Any, path: str = "$.field") -> Field:
    if not isinstance(d, dict) or d.get("kind") not in ("prime", "rational"):
        raise DocumentError(path, "expected {\"kind\": \"prime\", \"p\": p} or {\"kind\": \"rational\"}")
    if d["kind"] == "rational":
        return Field(0)
    p = d.get("p")
    if not isinstance(p, int) or isinstance(p, bool):
        raise DocumentError(path + ".p", "expected an integer prime")
    try:
        return Field(p)
    except ValueError as e:
        raise DocumentError(path + ".p", str(e)) from None


def _entry(v):
    return f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) else v


def matrix_to_doc(m: Matrix) -> list:
    return [[_entry(v) for v in row] for row in m.tolist()]


def matrix_from_doc(F: Field, d: Any, rows: int, cols: int, path: str) -> Matrix:
    if not isinstance(d, list) or any(not isinstance(r, list) for r in d):
        raise DocumentError(path, "expected a row-major array of arrays")
    if rows * cols == 0:
        if any(d) and len(d) != rows:
            raise DocumentError(path, f"expected shape {rows}x{cols}")
        return Matrix.zeros(F, rows, cols)
    if len(d) != rows or any(len(r) != cols for r in d):
        raise DocumentError(path, f"expected shape {rows}x{cols}")
    for i, r in enumerate(d):
        for j, v in enumerate(r):
            ok = (isinstance(v, int) and not isinstance(v, bool)) or isinstance(v, str)
            if not ok:
                raise DocumentError(f"{path}[{i}][{j}]", "entries are integers or \"a/b\" strings")
            try:
                F.scalar(v)
            except (ValueError, ZeroDivisionError) as e:
                raise DocumentError(f"{path}[{i}][{j}]", str(e)) from None
    return Matrix.from_rows(F, d, cols)


def _degree_key(k: str, path: str) -> int:
    try:
        return int(k)
    except ValueError:
        raise DocumentError(path, f"degree key {k!r} is not a decimal integer") from None


def complex_to_doc(x: Complex) -> dict:
    degs = sorted(n for n in x.dims if x.dim(n))
    diffs = {}
    for n in sorted(set(degs) | {k + 1 for k in degs}):
        m = x.d(n)
        if m.rows and m.cols and not m.is_zero():
            diffs[str(n)] = matrix_to_doc(m)
    return {"field": field_to_doc(x.field), "degrees": {str(n): x.dim(n) for n in degs}, "differentials": diffs}


def complex_from_doc(d: Any, path: str = "$") -> Complex:
    if not isinstance(d, dict):
        raise DocumentError(path, "expected an object")
    F = field_from_doc(d.get("field"), path + ".field")
    degs = d.get("degrees", {})
    if not isinstance(degs, dict):
        raise DocumentError(path + ".degrees", "expected an object")
    dims = {}
    for k, v in degs.items():
        n = _degree_key(k, f"{path}.degrees")
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise DocumentError(f"{path}.degrees.{k}", "expected a nonnegative integer")
        dims[n] = v
    raw = d.get("differentials", {})
    if not isinstance(raw, dict):
        raise DocumentError(path + ".differentials", "expected an object")
    diffs = {}
    for k, v in raw.items():
        n = _degree_key(k, f"{path}.differentials")
        diffs[n] = matrix_from_doc(F, v, dims.get(n - 1, 0), dims.get(n, 0), f"{path}.differentials.{k}")
    x = Complex(F, dims, diffs)
    rep = validate_complex(x)
    if not rep.ok:
        raise DocumentError(path, rep.message)
    return x


def _mats_to_doc(mats: Dict[int, Matrix]) -> dict:
    return {str(n): matrix_to_doc(m) for n, m in sorted(mats.items()) if m.rows and m.cols and not m.is_zero()}


def map_to_doc(f: ChainMap) -> dict:
    return {"source": complex_to_doc(f.source), "target": complex_to_doc(f.target), "mats": _mats_to_doc({n: f[n] for n in f.source.dims})}


def map_from_doc(d: Any, path: str = "$") -> ChainMap:
    if not isinstance(d, dict) or "source" not in d or "target" not in d:
        raise DocumentError(path, "expected {source, target, mats}")
    x = complex_from_doc(d["source"], path + ".source")
    y = complex_from_doc(d["target"], path + ".target")
    if x.field != y.field:
        raise DocumentError(path, "source and target over different fields")
    raw = d.get("mats", {})
    if not isinstance(raw, dict):
        raise DocumentError(path + ".mats", "expected an object")
    mats = {}
    for k, v in raw.items():
        n = _degree_key(k, path + ".mats")
        mats[n] = matrix_from_doc(x.field, v, y.dim(n), x.dim(n), f"{path}.mats.{k}")
    f = ChainMap(x, y, mats)
    if not f.is_chain_map():
        raise DocumentError(path, "not a chain map")
    return f


def homotopy_to_doc(H: CHomotopy) -> dict:
    x = H.source
    return {"f": map_to_doc(H.f), "g": map_to_doc(H.g), "h": _mats_to_doc({n: H.h_at(n) for n in x.dims})}


def homotopy_from_doc(d: Any, path: str = "$") -> CHomotopy:
    if not isinstance(d, dict):
        raise DocumentError(path, "expected {f, g, h}")
    f = map_from_doc(d.get("f"), path + ".f")
    g = map_from_doc(d.get("g"), path + ".g")
    x, y = f.source, f.target
    h = {}
    for k, v in (d.get("h") or {}).items():
        n = _degree_key(k, path + ".h")
        h[n] = matrix_from_doc(x.field, v, y.dim(n + 1), x.dim(n), f"{path}.h.{k}")
    try:
        return make_c_homotopy(f, g, h)
    except ValueError as e:
        raise DocumentError(path, str(e)) from None


def bicomplex_to_doc(z: BiComplex) -> dict:
    return {
        "field": field_to_doc(z.field),
        "a": z.a,
        "columns": [complex_to_doc(c) for c in z.cols],
        "D": {str(n): _mats_to_doc({k: m[k] for k in m.source.dims}) for n, m in sorted(z.D.items()) if not m.is_zero()},
    }


def bicomplex_from_doc(d: Any, path: str = "$") -> BiComplex:
    if not isinstance(d, dict) or not isinstance(d.get("columns"), list):
        raise DocumentError(path, "expected {field, a, columns, D}")
    F = field_from_doc(d.get("field"), path + ".field")
    a = d.get("a", 0)
    if not isinstance(a, int):
        raise DocumentError(path + ".a", "expected an integer")
    cols = [complex_from_doc(c, f"{path}.columns[{i}]") for i, c in enumerate(d["columns"])]
    if any(c.field != F for c in cols):
        raise DocumentError(path + ".columns", "field mismatch")
    z0 = BiComplex(F, a, cols)
    D = {}
    for k, v in (d.get("D") or {}).items():
        n = _degree_key(k, path + ".D")
        src, tgt = z0.col(n), z0.col(n - 1)
        mats = {}
        for kk, vv in v.items():
            m = _degree_key(kk, f"{path}.D.{k}")
            mats[m] = matrix_from_doc(F, vv, tgt.dim(m), src.dim(m), f"{path}.D.{k}.{kk}")
        D[n] = ChainMap(src, tgt, mats)
    try:
        z = BiComplex(F, a, cols, D)
    except ValueError as e:
        raise DocumentError(path + ".D", str(e)) from None
    rep = z.check()
    if not rep.ok:
        raise DocumentError(path, rep.message)
    return z


def outer_map_to_doc(phi: OuterMap) -> dict:
    return {
        "source": bicomplex_to_doc(phi.source),
        "target": bicomplex_to_doc(phi.target),
        "comps": {str(n): _mats_to_doc({k: m[k] for k in m.source.dims}) for n, m in sorted(phi.comps.items())},
    }


def outer_map_from_doc(d: Any, path: str = "$") -> OuterMap:
    if not isinstance(d, dict):
        raise DocumentError(path, "expected {source, target, comps}")
    z = bicomplex_from_doc(d.get("source"), path + ".source")
    zp = bicomplex_from_doc(d.get("target"), path + ".target")
    comps = {}
    for k, v in (d.get("comps") or {}).items():
        n = _degree_key(k, path + ".comps")
        mats = {m: matrix_from_doc(z.field, vv, zp.col(n).dim(m), z.col(n).dim(m), f"{path}.comps.{k}.{kk}")
                for kk, vv in v.items() for m in [_degree_key(kk, f"{path}.comps.{k}")]}
        comps[n] = ChainMap(z.col(n), zp.col(n), mats)
    phi = OuterMap(z, zp, comps)
    if not phi.check().ok:
        raise DocumentError(path, "not an outer map")
    return phi


def filtered_to_doc(x: FilteredObject) -> dict:
    return {
        "field": field_to_doc(x.field),
        "a": x.a,
        "stages": [complex_to_doc(s) for s in x.stages],
        "maps": [_mats_to_doc({n: m[n] for n in m.source.dims}) for m in x.maps],
    }


def filtered_from_doc(d: Any, path: str = "$") -> FilteredObject:
    if not isinstance(d, dict) or not isinstance(d.get("stages"), list):
        raise DocumentError(path, "expected {field, a, stages, maps}")
    F = field_from_doc(d.get("field"), path + ".field")
    a = d.get("a", 0)
    stages = [complex_from_doc(s, f"{path}.stages[{i}]") for i, s in enumerate(d["stages"])]
    raw = d.get("maps", [])
    if not isinstance(raw, list) or len(raw) != max(len(stages) - 1, 0):
        raise DocumentError(path + ".maps", "need one structure map between consecutive stages")
    maps = []
    for i, v in enumerate(raw):
        s, t = stages[i], stages[i + 1]
        mats = {}
        for k, vv in v.items():
            n = _degree_key(k, f"{path}.maps[{i}]")
            mats[n] = matrix_from_doc(F, vv, t.dim(n), s.dim(n), f"{path}.maps[{i}].{k}")
        m = ChainMap(s, t, mats)
        if not m.is_chain_map():
            raise DocumentError(f"{path}.maps[{i}]", "not a chain map")
        maps.append(m)
    return FilteredObject(F, a, stages, maps)


def detect_kind(d: Any) -> str:
    if isinstance(d, dict):
        if "degrees" in d:
            return "complex"
        if "mats" in d:
            return "map"
        if "columns" in d:
            return "bicomplex"
        if "stages" in d:
            return "filtered"
        if "comps" in d:
            return "outer_map"
        if "h" in d and "f" in d:
            return "homotopy"
    raise DocumentError("$", "unrecognized document")


LOADERS: Dict[str, Callable] = {
    "complex": complex_from_doc,
    "map": map_from_doc,
    "bicomplex": bicomplex_from_doc,
    "filtered": filtered_from_doc,
    "outer_map": outer_map_from_doc,
    "homotopy": homotopy_from_doc,
}


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise DocumentError("$", f"{path}: malformed JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


# output ----------------------------------------------------------------------------

def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n"


def _text(obj: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        out = []
        for k in sorted(obj, key=str):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _is_matrix(v):
                out.append(f"{pad}{k}:")
                out.extend(_text(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {json.dumps(v, sort_keys=True)}")
        return out
    if isinstance(obj, list) and not _is_matrix(obj):
        out = []
        for i, v in enumerate(obj):
            out.append(f"{pad}[{i}]")
            out.extend(_text(v, indent + 1))
        return out
    return [pad + json.dumps(obj, sort_keys=True)]


def _is_matrix(v: Any) -> bool:
    return isinstance(v, list) and all(isinstance(r, list) and all(not isinstance(e, (dict, list)) for e in r) for r in v)


def emit(obj: Any, args) -> None:
    text = dumps(obj) if args.format == "json" else "\n".join(_text(obj)) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# commands --------------------------------------------------------------------------

def _load(path: str, kind: str, args):
    d = load_json(path)
    obj = LOADERS[kind](d)
    F = getattr(obj, "field", None)
    if args.field is not None and F is not None and F != parse_field(args.field):
        raise DocumentError("$.field", f"document field {F} differs from --field {args.field}")
    return obj


def cmd_validate(args):
    d = load_json(args.file)
    kind = detect_kind(d)
    try:
        LOADERS[kind](d)
    except DocumentError as e:
        return {"kind": kind, "valid": False, "message": str(e)}, 1
    return {"kind": kind, "valid": True, "message": "valid"}, 0


def cmd_homology(args):
    x = _load(args.file, "complex", args)
    return {str(n): k for n, k in sorted(homology(x).dims().items()) if k}, 0


def cmd_euler(args):
    x = _load(args.file, "complex", args)
    return {"euler": euler(x)}, 0


def cmd_apply(args):
    x = _load(args.file, "complex", args)
    return complex_to_doc(apply_functor(args.functor, x)), 0


def cmd_nat(args):
    x = _load(args.file, "complex", args)
    pair = tuple(args.pair) if args.pair else None
    return map_to_doc(nat(args.tag, x, pair)), 0


def cmd_cone(args):
    f = _load(args.file, "map", args)
    if args.command == "cone":
        cd = cone(f)
        return {"cone": complex_to_doc(cd.cone), "kappa": map_to_doc(cd.kappa), "mu": map_to_doc(cd.mu), "psi": map_to_doc(cd.psi)}, 0
    if args.command == "cyl":
        cy = cyl(f)
        return {"cyl": complex_to_doc(cy.cyl), "xi1": map_to_doc(cy.xi1)}, 0
    fd = hfib(f)
    return {"hfib": complex_to_doc(fd.hfib)}, 0


def cmd_pushout(args):
    f = _load(args.f, "map", args)
    g = _load(args.g, "map", args)
    if args.command == "pushout":
        po = homotopy_pushout(f, g)
        return {"object": complex_to_doc(po.obj), "i_g": map_to_doc(po.i_g), "i_f": map_to_doc(po.i_f), "valid": po.check().ok}, 0
    pb = homotopy_pullback(f, g)
    return {"object": complex_to_doc(pb.obj), "p_g": map_to_doc(pb.p_g), "p_f": map_to_doc(pb.p_f), "valid": pb.check().ok}, 0


def cmd_tot(args):
    z = _load(args.file, "bicomplex", args)
    return complex_to_doc(tot(z)), 0


def cmd_reduce(args):
    z = _load(args.file, "bicomplex", args)
    r = reduce_full(z)
    return {"m": r.m, "position": r.position, "steps": len(r.steps), "core": complex_to_doc(r.core)}, 0


def cmd_factorize(args):
    x = _load(args.x, "bicomplex", args)
    u = _load(args.u, "map", args)
    fa = canonical_factorization(x, u)
    rep = fa.check()
    return {"z_u": bicomplex_to_doc(fa.z_u), "lift": outer_map_to_doc(fa.lift), "a_u": map_to_doc(fa.a_u), "valid": rep.ok}, 0 if rep.ok else 1


def cmd_minimal_model(args):
    x = _load(args.file, "complex", args)
    mm = minimal_model(x)
    return {"model": complex_to_doc(mm.model), "p": map_to_doc(mm.p), "s": map_to_doc(mm.s)}, 0


def cmd_devissage(args):
    if args.action == "build":
        z = _load(args.file, "complex", args)
        b = build_devissage(z)
        return {"filtration": filtered_to_doc(b.filtration.x), "a": map_to_doc(b.a)}, 0
    x = _load(args.file, "filtered", args)
    dv, rep = validate_devissage(x)
    out = {"valid": rep.ok, "message": rep.message}
    if dv is not None:
        out["certificates"] = {str(n + 1): {str(k): v for k, v in sorted(b.items())} for n, b in sorted(dv.certificates.items())}
    return out, 0 if rep.ok else 1


def cmd_euler_graded(args):
    x = _load(args.file, "filtered", args)
    return {str(n): c for n, c in sorted(graded_euler_of(x).items())}, 0


# suite -------------------------------------------------------------------------------

def parse_field(s: str) -> Field:
    if s in ("Q", "q", "0"):
        return Field(0)
    return Field(int(s))


FIELDS = (2, 3, 5, 0)


def _conventions(x: Complex) -> bool:
    F = x.field
    Z = Complex.zero(F)
    idx = ChainMap.identity(x)
    return (
        cone_complex(idx) == cone_id(x)
        and cone_complex(ChainMap.zero(x, Z)) == shift(x, 1)
        and cone_complex(ChainMap.zero(Z, x)) == x
        and hfib_complex(ChainMap.zero(Z, x)) == shift(x, -1)
    )


def _homotopy_round_trip(rng: random.Random, f: ChainMap) -> bool:
    x, y = f.source, f.target
    g = f - null_homotopic(x, y, rand_family(x.field, rng, x, y, 1))
    from .homotopy import find_c_homotopy

    H = find_c_homotopy(f, g)
    if H is None:
        return False
    P = convert_A(H)
    return convert_B(P) == H and convert_A(convert_B(P)) == P


def _reduce_check(z: BiComplex) -> bool:
    r = reduce_full(z)
    return r.core == shift(tot(z), r.m) and len(r.steps) == (0 if z.is_zero() else z.support[1] - z.support[0])


def _devissage_check(x: Complex) -> bool:
    b = build_devissage(x)
    dv, rep = validate_devissage(b.filtration.x)
    return rep.ok and is_quasi_iso(b.a) and sum(graded_euler_of(b.filtration.x).values()) == euler(x)


def _round_trip(x: Complex, f: ChainMap, z: BiComplex) -> bool:
    def rt(doc, load):
        return load(json.loads(json.dumps(doc)))

    return (
        rt(complex_to_doc(x), complex_from_doc) == x
        and rt(map_to_doc(f), map_from_doc) == f
        and rt(bicomplex_to_doc(z), bicomplex_from_doc) == z
    )


CATALOG = (
    "complex.valid",
    "complicial.identities",
    "conventions",
    "homotopy.AB_round_trip",
    "cone.euler",
    "cone.data",
    "cone.puppe",
    "tot.shift",
    "tot.reduce_full",
    "tot.euler",
    "devissage.build",
    "k0.euler_T",
    "doc.round_trip",
)


def run_suite(seed: int, count: int, field: Optional[Field], max_dim: int, lo: int, hi: int) -> dict:
    rng = random.Random(seed)
    counts = {name: {"pass": 0, "fail": 0} for name in CATALOG}
    first = None
    for i in range(count):
        F = field if field is not None else Field(FIELDS[i % len(FIELDS)])
        x = rand_complex(F, rng, lo, hi, max_dim)
        y = rand_complex(F, rng, lo, hi, max_dim)
        f = rand_chain_map(rng, x, y)
        nshift = rng.randint(-3, 3)
        length = rng.randint(1, 3)
        oa = rng.randint(-2, 1)
        z = rand_bicomplex(F, rng, oa, oa + length - 1, lo=max(lo, -1), hi=min(hi, 2), max_dim=min(max_dim, 2))
        checks = {
            "complex.valid": lambda: validate_complex(x).ok,
            "complicial.identities": lambda: verify_complicial_identities(x).ok,
            "conventions": lambda: _conventions(x),
            "homotopy.AB_round_trip": lambda: _homotopy_round_trip(rng, f),
            "cone.euler": lambda: euler(cone_complex(f)) == euler(y) - euler(x),
            "cone.data": lambda: cone(f).check().ok,
            "cone.puppe": lambda: puppe_exactness(f).ok,
            "tot.shift": lambda: tot(single_column(x, nshift)) == shift(x, nshift),
            "tot.reduce_full": lambda: _reduce_check(z),
            "tot.euler": lambda: euler(tot(z)) == euler_alternating(z),
            "devissage.build": lambda: _devissage_check(x),
            "k0.euler_T": lambda: euler_of_T(x),
            "doc.round_trip": lambda: _round_trip(x, f, z),
        }
        for name in CATALOG:
            try:
                ok = bool(checks[name]())
            except Exception as e:  # a crash counts as a failure of that identity
                ok, err = False, f"{type(e).__name__}: {e}"
            else:
                err = None
            counts[name]["pass" if ok else "fail"] += 1
            if not ok and first is None:
                first = {"identity": name, "index": i, "inputs": {"x": complex_to_doc(x), "f": map_to_doc(f), "z": bicomplex_to_doc(z)}}
                if err:
                    first["error"] = err
    return {
        "seed": seed,
        "count": count,
        "field": "mixed" if field is None else ("Q" if field.is_rational else str(field.p)),
        "max_dim": max_dim,
        "range": [lo, hi],
        "identities": counts,
        "first_failure": first,
        "ok": first is None,
    }


def cmd_suite(args):
    F = parse_field(args.field) if args.field is not None else None
    lo, hi = args.range
    t0 = time.perf_counter()
    report = run_suite(args.seed, args.count, F, args.max_dim, lo, hi)
    # wall-clock goes to stderr so the report itself is reproducible byte for byte
    sys.stderr.write(f"wall-clock: {time.perf_counter() - t0:.2f} s\n")
    return report, 0 if report["ok"] else 1


# argparse --------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=None, help="prime p or Q")
    common.add_argument("--out", default=None, help="write output to this path")
    common.add_argument("--format", choices=("json", "text"), default="json")

    p = argparse.ArgumentParser(prog="chainkit", description="Exact chain complex toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "validate any document").add_argument("file")
    add("homology", cmd_homology, "homology dimensions").add_argument("file")
    add("euler", cmd_euler, "Euler characteristic").add_argument("file")
    sp = add("apply", cmd_apply, "apply C, T, Tinv or P")
    sp.add_argument("functor", choices=("C", "T", "Tinv", "P"))
    sp.add_argument("file")
    sp = add("nat", cmd_nat, "component of a natural transformation")
    sp.add_argument("tag", choices=NAT_TAGS + ("s1", "s2", "tau"))
    sp.add_argument("file")
    sp.add_argument("--pair", nargs=2, metavar=("F", "G"), help="functor pair for tau")
    for name in ("cone", "cyl", "hfib"):
        add(name, cmd_cone, f"{name} of a chain map").add_argument("file")
    for name in ("pushout", "pullback"):
        sp = add(name, cmd_pushout, f"homotopy {name} of two maps")
        sp.add_argument("f")
        sp.add_argument("g")
    add("tot", cmd_tot, "total complex of a bicomplex").add_argument("file")
    add("reduce", cmd_reduce, "iterated reduction of a bicomplex").add_argument("file")
    sp = add("factorize", cmd_factorize, "canonical factorization of u: Tot x -> y")
    sp.add_argument("x")
    sp.add_argument("u")
    add("minimal-model", cmd_minimal_model, "minimal model with p and s").add_argument("file")
    sp = add("devissage", cmd_devissage, "build or verify a devissage filtration")
    sp.add_argument("action", choices=("build", "verify"))
    sp.add_argument("file")
    add("euler-graded", cmd_euler_graded, "graded Euler vector of a filtration").add_argument("file")
    sp = add("suite", cmd_suite, "run the identity catalog on a seeded corpus")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=50)
    sp.add_argument("--max-dim", type=int, default=3)
    sp.add_argument("--range", type=int, nargs=2, default=(-2, 3), metavar=("A", "B"))
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, status = args.fn(args)
    except DocumentError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except (OSError, ValueError, KeyError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    emit(out, args)
    return status


if __name__ == "__main__":
    sys.exit(main())
