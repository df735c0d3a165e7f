"""Spec/complex file formats and the command-line surface."""

import json

import numpy as np
import pytest

from orecert.cli import main
from orecert.example4 import Example4Params, build_example_resolution
from orecert.io import (
    SpecError,
    canonical_bytes,
    complex_from_dict,
    complex_to_dict,
    load_spec,
    parse_spec,
    read_complex,
    write_complex,
)

GOOD_SPEC = {
    "field": {"char": "5"},
    "A": {"type": "truncated_poly", "n": 5},
    "B": {"type": "truncated_poly", "n": 5},
    "sigma": {"type": "identity"},
    "delta": {"type": "monomial", "alpha": "1", "t": 2},
}


def _write_spec(tmp_path, data, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_parse_spec_good():
    ps = parse_spec(GOOD_SPEC)
    assert ps.field.char == 5
    assert ps.A.dim == 5 and ps.n == 5


def test_parse_spec_diagnostics():
    with pytest.raises(SpecError, match="field"):
        parse_spec({"A": GOOD_SPEC["A"]})
    bad = dict(GOOD_SPEC, sigma={"type": "spiral"})
    with pytest.raises(SpecError, match="sigma.type"):
        parse_spec(bad)
    bad = dict(GOOD_SPEC, delta={"type": "monomial", "alpha": "1", "t": 9})
    with pytest.raises(SpecError, match="delta.t"):
        parse_spec(bad)
    bad = dict(GOOD_SPEC, field={"char": "6"})
    with pytest.raises(SpecError, match="field.char"):
        parse_spec(bad)


def test_complex_round_trip_bytes(tmp_path):
    FC = build_example_resolution(Example4Params(p=3, t=2, alpha=1), 3)
    path = tmp_path / "c.json"
    write_complex(FC, path)
    FC2 = read_complex(path)
    assert FC2.ranks == FC.ranks
    for D1, D2 in zip(FC.diffs, FC2.diffs):
        assert np.array_equal(D1, D2)
    assert np.array_equal(FC.augmentation, FC2.augmentation)
    # write of the read-back object is byte-identical
    assert canonical_bytes(complex_to_dict(FC2)) == path.read_bytes()


def test_complex_file_rejects_damage(tmp_path):
    FC = build_example_resolution(Example4Params(p=3, t=2, alpha=1), 3)
    data = complex_to_dict(FC)
    data["differentials"][0]["degree"] = 2
    with pytest.raises(SpecError):
        complex_from_dict(data)
    data = complex_to_dict(FC)
    del data["ranks"]
    with pytest.raises(SpecError):
        complex_from_dict(data)


def test_cli_verify_exit_codes(tmp_path, capsys):
    assert main(["verify", _write_spec(tmp_path, GOOD_SPEC)]) == 0
    capsys.readouterr()
    # char 0, n = 2, nonzero delta: certification failure with witness (1,1)
    bad = dict(
        GOOD_SPEC,
        field={"char": "0"},
        A={"type": "truncated_poly", "n": 2},
        B={"type": "truncated_poly", "n": 2},
        delta={"type": "monomial", "alpha": "1", "t": 1},
    )
    assert main(["verify", _write_spec(tmp_path, bad, "bad.json"), "--json"]) == 1
    out = json.loads(capsys.readouterr().out)
    failing = [c for c in out["checks"] if not c["ok"]]
    assert any("(1,1)" in c["name"] for c in failing)
    # malformed file
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{not json")
    assert main(["verify", str(garbage)]) == 2


def test_cli_resolve_check_round_trip(tmp_path, capsys):
    spec = _write_spec(tmp_path, dict(GOOD_SPEC,
        field={"char": "3"},
        A={"type": "truncated_poly", "n": 3},
        B={"type": "truncated_poly", "n": 3}))
    out_path = tmp_path / "complex.json"
    assert main(["resolve", spec, "--degree", "3", "--out", str(out_path)]) == 0
    capsys.readouterr()
    assert main(["check", str(out_path)]) == 0
    capsys.readouterr()
    # edit one differential entry: check must fail with the degree
    data = json.loads(out_path.read_text())
    data["differentials"][1]["entries"][0][0][0] = "2"
    edited = tmp_path / "edited.json"
    edited.write_text(json.dumps(data))
    assert main(["check", str(edited), "--json"]) == 1
    out = json.loads(capsys.readouterr().out)
    failing = [c["name"] for c in out["checks"] if not c["ok"]]
    assert failing and any("d_2" in n or "degree" in n for n in failing)
    # truncated file
    truncated = tmp_path / "truncated.json"
    truncated.write_text(out_path.read_text()[:200])
    assert main(["check", str(truncated)]) == 2


def test_cli_example4(tmp_path, capsys):
    assert main(["example4", "--p", "3", "--t", "2", "--alpha", "1", "--degree", "2"]) == 0
    capsys.readouterr()
    assert main(["example4", "--preset", "nichols", "--p", "3", "--degree", "2"]) == 0
    capsys.readouterr()
    assert main(["example4", "--p", "2", "--t", "2", "--alpha", "1"]) == 2
    capsys.readouterr()


def test_cli_quantum_preset(capsys):
    assert main(["verify", "--preset", "quantum", "--p", "3", "--q", "2"]) == 0
    capsys.readouterr()


def test_load_spec_missing_file():
    with pytest.raises(SpecError):
        load_spec("/nonexistent/spec.json")
