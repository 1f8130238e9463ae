import json
import random
from pathlib import Path

import pytest

from chainkit import cli
from chainkit.chaincore import ChainMap, Complex
from chainkit.exactlin import Field
from chainkit.filtered import FilteredObject
from chainkit.gen import rand_bicomplex, rand_chain_map, rand_complex, rand_field, rand_map, rand_family, null_homotopic
from chainkit.homotopy import make_c_homotopy
from chainkit.totred import OuterMap, tot

FIX = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc), encoding="utf-8")
    return p


def test_homology_fixture(capsys):
    code, out, _ = run(capsys, "homology", FIX / "s0.json")
    assert code == 0 and json.loads(out) == {"0": 1}
    assert out.endswith("\n")


def test_apply_T(capsys):
    code, out, _ = run(capsys, "apply", "T", FIX / "s0.json")
    assert code == 0
    x = cli.complex_from_doc(json.loads(out))
    assert x == Complex(Field(2), {1: 1})


def test_euler_validate_text(capsys, tmp_path):
    code, out, _ = run(capsys, "euler", FIX / "s0.json")
    assert json.loads(out) == {"euler": 1}
    code, out, _ = run(capsys, "validate", FIX / "s0.json", "--format", "text")
    assert code == 0 and "kind: \"complex\"" in out and "valid: true" in out
    o = tmp_path / "o.json"
    code, out, _ = run(capsys, "homology", FIX / "s0.json", "--out", o)
    assert out == "" and json.loads(o.read_text()) == {"0": 1}


def test_suite_example(capsys):
    code, out, err = run(capsys, "suite", "--seed", 7, "--count", 30, "--field", 2, "--max-dim", 3, "--range", -2, 3)
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and rep["first_failure"] is None
    assert rep["seed"] == 7 and rep["count"] == 30
    assert "wall-clock" in err
    code2, out2, _ = run(capsys, "suite", "--seed", 7, "--count", 30, "--field", 2, "--max-dim", 3, "--range", -2, 3)
    assert out2 == out


def test_commands_on_random_inputs(capsys, tmp_path):
    rng = random.Random(5)
    F = Field(3)
    f = rand_map(F, rng, -1, 2, 2)
    g = rand_chain_map(rng, f.source, rand_complex(F, rng, -1, 2, 2))
    fp = write(tmp_path, "f.json", cli.map_to_doc(f))
    gp = write(tmp_path, "g.json", cli.map_to_doc(g))
    for cmd in ("cone", "cyl", "hfib"):
        code, out, _ = run(capsys, cmd, fp)
        assert code == 0 and json.loads(out)
    code, out, _ = run(capsys, "pushout", fp, gp)
    assert code == 0 and json.loads(out)["valid"]
    h = rand_chain_map(rng, rand_complex(F, rng, -1, 2, 2), f.target)
    code, out, _ = run(capsys, "pullback", fp, write(tmp_path, "h.json", cli.map_to_doc(h)))
    assert code == 0 and json.loads(out)["valid"]
    z = rand_bicomplex(F, rng, 0, 2)
    zp = write(tmp_path, "z.json", cli.bicomplex_to_doc(z))
    code, out, _ = run(capsys, "tot", zp)
    assert cli.complex_from_doc(json.loads(out)) == tot(z)
    code, out, _ = run(capsys, "reduce", zp)
    assert json.loads(out)["steps"] == 2
    u = rand_chain_map(rng, tot(z), rand_complex(F, rng, -1, 2, 2))
    code, out, _ = run(capsys, "factorize", zp, write(tmp_path, "u.json", cli.map_to_doc(u)))
    assert code == 0 and json.loads(out)["valid"]
    xp = write(tmp_path, "x.json", cli.complex_to_doc(f.source))
    code, out, _ = run(capsys, "minimal-model", xp)
    assert code == 0
    code, out, _ = run(capsys, "devissage", "build", xp)
    filt = write(tmp_path, "filt.json", json.loads(out)["filtration"])
    code, out, _ = run(capsys, "devissage", "verify", filt)
    assert code == 0 and json.loads(out)["valid"]
    code, out, _ = run(capsys, "euler-graded", filt)
    assert sum(json.loads(out).values()) == cli.euler(f.source)
    code, out, _ = run(capsys, "nat", "iota", xp)
    assert code == 0


def test_devissage_verify_failure(capsys, tmp_path):
    F = Field(2)
    Z = Complex.zero(F)
    s5 = Complex(F, {5: 1})
    x = FilteredObject(F, 0, [Z, s5], [ChainMap.zero(Z, s5)])
    code, out, _ = run(capsys, "devissage", "verify", write(tmp_path, "bad.json", cli.filtered_to_doc(x)))
    assert code == 1 and not json.loads(out)["valid"]


def test_round_trips():
    rng = random.Random(11)
    for _ in range(100):
        F = rand_field(rng)
        x = rand_complex(F, rng, -2, 3, 3)
        assert cli.complex_from_doc(json.loads(cli.dumps(cli.complex_to_doc(x)))) == x
        f = rand_chain_map(rng, x, rand_complex(F, rng, -2, 3, 3))
        assert cli.map_from_doc(json.loads(cli.dumps(cli.map_to_doc(f)))) == f
    for _ in range(20):
        F = rand_field(rng)
        z = rand_bicomplex(F, rng, -1, 1)
        assert cli.bicomplex_from_doc(json.loads(cli.dumps(cli.bicomplex_to_doc(z)))) == z
        phi = OuterMap.identity(z)
        back = cli.outer_map_from_doc(cli.outer_map_to_doc(phi))
        assert back.source == z and all(back.at(n) == phi.at(n) for n in range(z.a, z.b + 1))
        x = rand_complex(F, rng, -1, 2, 2)
        fam = rand_family(F, rng, x, x, 1)
        k = null_homotopic(x, x, fam)
        H = make_c_homotopy(ChainMap.identity(x) + k, ChainMap.identity(x), fam)
        Hb = cli.homotopy_from_doc(json.loads(cli.dumps(cli.homotopy_to_doc(H))))
        assert Hb == H
        y = FilteredObject(F, -1, [x, x], [ChainMap.identity(x)])
        assert cli.filtered_from_doc(cli.filtered_to_doc(y)) == y


def test_rational_entries(tmp_path):
    doc = {"field": {"kind": "rational"}, "degrees": {"0": 1, "1": 1}, "differentials": {"1": [["1/2"]]}}
    x = cli.complex_from_doc(doc)
    assert cli.complex_to_doc(x)["differentials"]["1"] == [["1/2"]]


@pytest.mark.parametrize("doc,frag", [
    ({"field": {"kind": "prime", "p": 4}, "degrees": {"0": 1}, "differentials": {}}, "$.field.p"),
    ({"field": {"kind": "prime", "p": 2}, "degrees": {"x": 1}, "differentials": {}}, "$.degrees"),
    ({"field": {"kind": "prime", "p": 2}, "degrees": {"0": 1, "1": 1}, "differentials": {"1": [[1, 1]]}}, "$.differentials.1"),
    ({"field": {"kind": "prime", "p": 2}, "degrees": {"0": 1, "1": 1, "2": 1}, "differentials": {"1": [[1]], "2": [[1]]}}, "$"),
    ({"field": "F2", "degrees": {}, "differentials": {}}, "$.field"),
])
def test_parse_errors(doc, frag):
    with pytest.raises(cli.DocumentError) as e:
        cli.complex_from_doc(doc)
    assert e.value.path.startswith(frag)


def test_cli_error_exit(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    code, out, err = run(capsys, "homology", bad)
    assert code == 2 and "malformed JSON" in err
    code, out, err = run(capsys, "homology", tmp_path / "missing.json")
    assert code == 2
    code, out, err = run(capsys, "homology", FIX / "s0.json", "--field", 3)
    assert code == 2 and "$.field" in err
    code, out, err = run(capsys, "validate", write(tmp_path, "u.json", {"foo": 1}))
    assert code == 2 and "unrecognized" in err
