"""Spec-file ingestion and complex-file export.

Both formats are JSON with every scalar rendered as a decimal string
(rationals as "num/den") so no numeric type ambiguity can creep in.
Complex files carry the algebra's structure constants in the header, which
lets a consumer re-certify d^2 = 0 and the rank identities without trusting
the producer.  Canonical output (sorted keys, fixed separators) makes
write - read - write a byte-level identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .algebra import (
    Algebra,
    LinearOperator,
    monomial_derivation,
    scalar_automorphism,
    truncated_poly_algebra,
)
from .field import Field
from .homology import FreeComplex

FORMAT_NAME = "twisted-ore-complex"
FORMAT_VERSION = 1
BASIS_ORDER = "A-major"


class SpecError(Exception):
    """Input rejected; message carries the offending field."""

    def __init__(self, location, message):
        super().__init__(f"{location}: {message}")
        self.location = location


@dataclass
class ParsedSpec:
    field: Field
    A: Algebra
    B: Algebra
    n: int
    sigma: LinearOperator
    delta: LinearOperator
    module: dict | None  # {"dim", "action_A", "f", "phi"} as field arrays


def _require(data, key, location):
    if not isinstance(data, dict) or key not in data:
        raise SpecError(location, f"missing field {key!r}")
    return data[key]


def _scalar(F, value, location):
    try:
        return F.parse(str(value))
    except Exception as exc:
        raise SpecError(location, f"bad scalar {value!r}: {exc}")


def _matrix(F, rows, shape, location):
    if not isinstance(rows, list) or len(rows) != shape[0]:
        raise SpecError(location, f"expected {shape[0]} rows")
    out = F.zeros(shape)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != shape[1]:
            raise SpecError(location, f"row {i}: expected {shape[1]} entries")
        for j, v in enumerate(row):
            out[i, j] = _scalar(F, v, f"{location}[{i}][{j}]")
    return out


def parse_spec(data) -> ParsedSpec:
    """Dictionary (already JSON-decoded) to verified-constructible objects.

    Only shape and type errors are raised here; algebraic certification
    (automorphism, derivation, truncation conditions) is the caller's job.
    """
    if not isinstance(data, dict):
        raise SpecError("$", "top level must be an object")
    char = _require(_require(data, "field", "$"), "char", "field")
    try:
        char = int(char)
    except (TypeError, ValueError):
        raise SpecError("field.char", f"not an integer: {char!r}")
    try:
        F = Field(char)
    except ValueError as exc:
        raise SpecError("field.char", str(exc))

    def algebra_block(name):
        blk = _require(data, name, "$")
        if _require(blk, "type", name) != "truncated_poly":
            raise SpecError(f"{name}.type", "only 'truncated_poly' is supported")
        n = _require(blk, "n", name)
        if not isinstance(n, int) or n < 2:
            raise SpecError(f"{name}.n", "n must be an integer >= 2")
        return truncated_poly_algebra(F, n, warn=lambda _m: None), n

    A, _ = algebra_block("A")
    B, n = algebra_block("B")

    sig = _require(data, "sigma", "$")
    kind = _require(sig, "type", "sigma")
    if kind == "identity":
        sigma = scalar_automorphism(A, 1)
    elif kind == "scalar":
        sigma = scalar_automorphism(A, _scalar(F, _require(sig, "q", "sigma"), "sigma.q"))
    elif kind == "matrix":
        sigma = LinearOperator(
            F, _matrix(F, _require(sig, "matrix", "sigma"), (A.dim, A.dim), "sigma.matrix")
        )
    else:
        raise SpecError("sigma.type", f"unknown type {kind!r}")

    del_ = _require(data, "delta", "$")
    kind = _require(del_, "type", "delta")
    if kind == "zero":
        delta = LinearOperator(F, F.zeros((A.dim, A.dim)))
    elif kind == "monomial":
        t = _require(del_, "t", "delta")
        if not isinstance(t, int) or not 1 <= t <= A.dim - 1:
            raise SpecError("delta.t", f"t must be an integer in [1, {A.dim - 1}]")
        dx = F.zeros(A.dim)
        dx[t] = _scalar(F, _require(del_, "alpha", "delta"), "delta.alpha")
        delta = monomial_derivation(A, sigma, dx)
    elif kind == "matrix":
        delta = LinearOperator(
            F, _matrix(F, _require(del_, "matrix", "delta"), (A.dim, A.dim), "delta.matrix")
        )
    else:
        raise SpecError("delta.type", f"unknown type {kind!r}")

    module = None
    if "module" in data:
        blk = data["module"]
        dim = _require(blk, "dim", "module")
        if not isinstance(dim, int) or dim < 1:
            raise SpecError("module.dim", "dim must be a positive integer")
        module = {
            "dim": dim,
            "action_A": [
                _matrix(F, rows, (dim, dim), f"module.action_A[{i}]")
                for i, rows in enumerate(_require(blk, "action_A", "module"))
            ],
            "f": _matrix(F, _require(blk, "f", "module"), (dim, dim), "module.f"),
            "phi": _matrix(F, _require(blk, "phi", "module"), (dim, dim), "module.phi"),
        }
        if len(module["action_A"]) != A.dim:
            raise SpecError("module.action_A", f"expected {A.dim} matrices")

    return ParsedSpec(field=F, A=A, B=B, n=n, sigma=sigma, delta=delta, module=module)


def load_spec(path) -> ParsedSpec:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SpecError(str(path), f"cannot read: {exc}")
    except json.JSONDecodeError as exc:
        raise SpecError(str(path), f"line {exc.lineno}: {exc.msg}")
    return parse_spec(data)


# -- complex files -----------------------------------------------------------


def _render_matrix(F, M):
    return [[F.render(v) for v in row] for row in np.atleast_2d(M)]


def complex_to_dict(X: FreeComplex) -> dict:
    F = X.field
    alg = X.algebra
    sc = [
        [[F.render(v) for v in alg.sc[i, j]] for j in range(alg.dim)]
        for i in range(alg.dim)
    ]
    diffs = []
    for d in range(1, X.top + 1):
        D = X.diffs[d - 1]
        diffs.append(
            {
                "degree": d,
                "entries": [
                    [[F.render(v) for v in D[i, u]] for u in range(X.ranks[d])]
                    for i in range(X.ranks[d - 1])
                ],
            }
        )
    return {
        "header": {
            "format": FORMAT_NAME,
            "version": FORMAT_VERSION,
            "field": {"char": str(F.char)},
            "algebra": {
                "dim": alg.dim,
                "unit_index": alg.unit_index,
                "basis_labels": list(alg.basis_labels),
                "structure_constants": sc,
            },
            "basis_order": BASIS_ORDER,
        },
        "ranks": list(X.ranks),
        "differentials": diffs,
        "augmentation": _render_matrix(F, X.augmentation),
    }


def canonical_bytes(data) -> bytes:
    return (json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n").encode()


def write_complex(X: FreeComplex, path):
    with open(path, "wb") as fh:
        fh.write(canonical_bytes(complex_to_dict(X)))


def complex_from_dict(data) -> FreeComplex:
    hdr = _require(data, "header", "$")
    if _require(hdr, "format", "header") != FORMAT_NAME:
        raise SpecError("header.format", "not a complex file")
    if _require(hdr, "basis_order", "header") != BASIS_ORDER:
        raise SpecError("header.basis_order", f"must be {BASIS_ORDER!r}")
    char = int(_require(_require(hdr, "field", "header"), "char", "header.field"))
    F = Field(char)
    ab = _require(hdr, "algebra", "header")
    dim = _require(ab, "dim", "header.algebra")
    labels = _require(ab, "basis_labels", "header.algebra")
    if len(labels) != dim:
        raise SpecError("header.algebra.basis_labels", f"expected {dim} labels")
    sc_rows = _require(ab, "structure_constants", "header.algebra")
    sc = F.zeros((dim, dim, dim))
    try:
        for i in range(dim):
            for j in range(dim):
                for k in range(dim):
                    sc[i, j, k] = F.parse(sc_rows[i][j][k])
    except (IndexError, TypeError, ValueError) as exc:
        raise SpecError("header.algebra.structure_constants", str(exc))
    alg = Algebra(F, list(labels), sc, unit_index=_require(ab, "unit_index", "header.algebra"))
    ranks = _require(data, "ranks", "$")
    if not isinstance(ranks, list) or not all(isinstance(r, int) and r >= 1 for r in ranks):
        raise SpecError("ranks", "must be a list of positive integers")
    raw_diffs = _require(data, "differentials", "$")
    if len(raw_diffs) != len(ranks) - 1:
        raise SpecError("differentials", f"expected {len(ranks) - 1} differentials")
    diffs = []
    for d, blk in enumerate(raw_diffs, start=1):
        if _require(blk, "degree", f"differentials[{d - 1}]") != d:
            raise SpecError(f"differentials[{d - 1}].degree", f"expected {d}")
        D = F.zeros((ranks[d - 1], ranks[d], dim))
        entries = _require(blk, "entries", f"differentials[{d - 1}]")
        try:
            for i in range(ranks[d - 1]):
                for u in range(ranks[d]):
                    for b in range(dim):
                        D[i, u, b] = F.parse(entries[i][u][b])
        except (IndexError, TypeError, ValueError) as exc:
            raise SpecError(f"differentials[{d - 1}].entries", str(exc))
        diffs.append(D)
    aug_rows = _require(data, "augmentation", "$")
    try:
        aug = F.array(
            [[F.parse(v) for v in row] for row in aug_rows]
        )
    except (TypeError, ValueError) as exc:
        raise SpecError("augmentation", str(exc))
    if aug.ndim != 2 or aug.shape[1] != ranks[0] * dim:
        raise SpecError("augmentation", f"expected {ranks[0] * dim} columns")
    return FreeComplex(alg, ranks, diffs, aug)


def read_complex(path) -> FreeComplex:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SpecError(str(path), f"cannot read: {exc}")
    except json.JSONDecodeError as exc:
        raise SpecError(str(path), f"line {exc.lineno}: {exc.msg}")
    return complex_from_dict(data)
