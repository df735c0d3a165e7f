"""Acceptance criteria, one test per criterion.

Each test prints a single CRITERION line; all equality checks are exact
(integers mod p or rationals), and the runtime-bounded criteria assert
against a monotonic clock.
"""

import json
import math
import time

import numpy as np
import pytest

from orecert import linalg
from orecert.algebra import (
    LinearOperator,
    check_associativity,
    monomial_derivation,
    scalar_automorphism,
    truncated_poly_algebra,
    verify_automorphism,
    verify_sigma_derivation,
)
from orecert.cli import main
from orecert.example4 import (
    Example4Params,
    closed_form_tau_B_chain,
    closed_form_twist,
    ore_rewrite_oracle,
    paper_delta_chain,
    tau_Bi_closed_form,
    tau_closed_form,
    tau_matrix_closed_form,
)
from orecert.field import Field
from orecert.homology import (
    build_tau_B_chain,
    check_exactness,
    lift_through,
    standard_truncated_resolution,
    twisted_product_complex,
    verify_chain_map,
)
from orecert.shuffle import (
    shuffle_operator,
    shuffle_operator_enumerated,
    shuffle_words,
    verify_truncation_conditions,
)
from orecert.twist import build_tau, twisted_algebra, verify_twisting_axioms

INSTANCES = [
    (p, t, alpha)
    for p in (3, 5)
    for t in range(2, p)
    for alpha in range(1, p)
]


def _report(num, ok, desc):
    print(f"CRITERION {num}: {'PASS' if ok else 'FAIL'} - {desc}")
    assert ok, desc


def _family(p, t, alpha):
    F = Field(p)
    A = truncated_poly_algebra(F, p, warn=lambda _m: None)
    sigma = scalar_automorphism(A, 1)
    verify_automorphism(A, sigma).require()
    dx = F.zeros(p)
    dx[t] = F.of(alpha)
    delta = monomial_derivation(A, sigma, dx)
    verify_sigma_derivation(A, sigma, delta).require()
    return F, A, sigma, delta


def test_criterion_01_twisting_map_gate():
    worst = 0.0
    for (p, t, alpha) in INSTANCES:
        start = time.monotonic()
        F, A, sigma, delta = _family(p, t, alpha)
        assert verify_truncation_conditions(sigma, delta, p).passed, (p, t, alpha)
        tau = build_tau(A, sigma, delta, p)
        assert verify_twisting_axioms(tau).passed, (p, t, alpha)
        worst = max(worst, time.monotonic() - start)
    _report(
        1,
        worst < 5.0,
        f"gate + axioms on {len(INSTANCES)} instances, worst {worst:.2f}s < 5s",
    )


def test_criterion_02_associativity():
    worst = 0.0
    for (p, t, alpha) in INSTANCES:
        F, A, sigma, delta = _family(p, t, alpha)
        tau = build_tau(A, sigma, delta, p)
        start = time.monotonic()
        T = twisted_algebra(A, tau.B, tau)
        assert check_associativity(T.product).passed, (p, t, alpha)
        worst = max(worst, time.monotonic() - start)
    _report(
        2,
        worst < 10.0,
        f"all (p^2)^3 triples on {len(INSTANCES)} instances, worst {worst:.2f}s < 10s",
    )


def test_criterion_03_closed_form_vs_rewriting_oracle():
    for (p, t, alpha) in INSTANCES:
        params = Example4Params(p=p, t=t, alpha=alpha)
        for r in range(p):
            for s in range(p):
                assert np.array_equal(
                    tau_closed_form(r, s, params), ore_rewrite_oracle(r, s, params)
                ), (p, t, alpha, r, s)
    _report(3, True, f"closed form equals the rewriting oracle on all p^2 pairs, {len(INSTANCES)} instances")


def test_criterion_04_closed_form_inverses():
    for (p, t, alpha) in INSTANCES:
        params = Example4Params(p=p, t=t, alpha=alpha)
        F = params.field
        for parity in (0, 1):
            M = tau_matrix_closed_form(params, parity=parity)
            Minv = tau_matrix_closed_form(params, parity=parity, inverse=True)
            assert np.array_equal(linalg.matmul(F, M, Minv), F.eye(p * p)), (p, t, alpha, parity)
            assert np.array_equal(linalg.matmul(F, Minv, M), F.eye(p * p)), (p, t, alpha, parity)
    _report(4, True, f"tau_Bi inverses on all p^2 basis elements, both parities, {len(INSTANCES)} instances")


def test_criterion_05_compatibility_relations_and_squares():
    for (p, t, alpha) in INSTANCES:
        params = Example4Params(p=p, t=t, alpha=alpha)
        A, sigma, delta, tau = closed_form_twist(params)
        verify_twisting_axioms(tau).require()
        chain = closed_form_tau_B_chain(params, 2, tau)
        assert chain.certificate.passed, (p, t, alpha)
    _report(5, True, f"relations and chain squares exhaustively on basis tuples, {len(INSTANCES)} instances")


def test_criterion_06_lifting_solver():
    for p in (3, 5):
        params = Example4Params(p=p, t=2, alpha=1)
        F, A, sigma, delta = _family(p, 2, 1)
        P = standard_truncated_resolution(F, p, 6)
        lifted = lift_through(P, P, F.zeros((1, 1)), sigma, delta)
        assert lifted.certificate.passed, p
        explicit = paper_delta_chain(params, 6)
        assert explicit.certificate.passed, p
        # identical contract suite: same check names, all passing
        assert [c.name for c in lifted.certificate.checks] == [
            c.name for c in explicit.certificate.checks
        ]
    _report(6, True, "lifted and explicit generator-action chains pass the full contract suite through degree 6")


def _build_resolution(p, t, alpha, length):
    F, A, sigma, delta = _family(p, t, alpha)
    tau = build_tau(A, sigma, delta, p)
    T = twisted_algebra(A, tau.B, tau)
    P = standard_truncated_resolution(F, p, length)
    sch = lift_through(P, P, F.array([[1]]), sigma)
    dch = lift_through(P, P, F.zeros((1, 1)), sigma, delta)
    tb = build_tau_B_chain(P, sch, dch, p, tau)
    P_N = standard_truncated_resolution(F, p, length)
    X = twisted_product_complex(T, P, P_N, tb)
    return X, X.free_complex()


def test_criterion_07_resolution():
    start = time.monotonic()
    cases = [(3, 2, 6)] + [(5, t, 4) for t in (2, 3, 4)]
    for (p, t, length) in cases:
        X, FC = _build_resolution(p, t, 1, length)
        assert X.certificate.passed, (p, t)  # d^2 = 0 and generator equivariance
        for n in range(length + 1):
            assert FC.space_dim(n) == (n + 1) * p * p, (p, t, n)
        ranks = {
            d: linalg.rank(FC.field, FC.differential_matrix(d))
            for d in range(1, length + 1)
        }
        assert ranks[1] == p * p - 1, (p, t)
        for n in range(1, length):
            assert ranks[n] + ranks[n + 1] == (n + 1) * p * p, (p, t, n)
    elapsed = time.monotonic() - start
    _report(7, elapsed < 60.0, f"resolutions for p=3 deg 6 and p=5 deg 4 (all t), {elapsed:.1f}s < 60s")


def test_criterion_08_untwisted_control():
    for p in (3, 5):
        F = Field(p)
        A = truncated_poly_algebra(F, p, warn=lambda _m: None)
        sigma = scalar_automorphism(A, 1)
        verify_automorphism(A, sigma).require()
        delta = monomial_derivation(A, sigma, F.zeros(p))
        verify_sigma_derivation(A, sigma, delta).require()
        tau = build_tau(A, sigma, delta, p)
        # the twist is the flip, so the product is the commutative tensor square
        flip = F.zeros((p * p, p * p))
        for r in range(p):
            for k in range(p):
                flip[k * p + r, r * p + k] = F.one
        assert np.array_equal(tau.matrix, flip), p
        T = twisted_algebra(A, tau.B, tau)
        length = 4
        P = standard_truncated_resolution(F, p, length)
        sch = lift_through(P, P, F.array([[1]]), sigma)
        dch = lift_through(P, P, F.zeros((1, 1)), sigma, delta)
        assert all(linalg.is_zero(m) for m in dch.maps), p
        tb = build_tau_B_chain(P, sch, dch, p, tau)
        P_N = standard_truncated_resolution(F, p, length)
        X = twisted_product_complex(T, P, P_N, tb)
        FC = X.free_complex()
        assert check_exactness(FC, length).passed, p
    _report(8, True, "flip twist reproduces the ordinary tensor resolution with the same rank identities")


def test_criterion_09_shuffle_recursion_property():
    rng = np.random.default_rng(2024)
    pairs = 0
    while pairs < 200:
        field = Field(5) if pairs % 2 == 0 else Field(0)
        dim = int(rng.integers(2, 4))
        A = LinearOperator(field, field.array(rng.integers(-3, 4, size=(dim, dim))))
        B = LinearOperator(field, field.array(rng.integers(-3, 4, size=(dim, dim))))
        i = int(rng.integers(0, 7))
        j = int(rng.integers(0, 7 - i))
        # term count
        assert len(shuffle_words(i, j)) == math.comb(i + j, i)
        # recursion output equals the enumeration oracle
        rec = shuffle_operator(i, j, A, B)
        enum = shuffle_operator_enumerated(i, j, A, B)
        assert np.array_equal(rec.matrix, enum.matrix), (field, i, j)
        # recursion identity itself
        if i >= 1 and j >= 1:
            expected = field.reduce(
                linalg.matmul(field, A.matrix, shuffle_operator(i - 1, j, A, B).matrix)
                + linalg.matmul(field, B.matrix, shuffle_operator(i, j - 1, A, B).matrix)
            )
            assert np.array_equal(rec.matrix, expected), (field, i, j)
        pairs += 1
    _report(9, True, "recursion and term-count identities on 200 random operator pairs over F_5 and Q")


def test_criterion_10_cli_round_trip(tmp_path, capsys):
    spec = {
        "field": {"char": "3"},
        "A": {"type": "truncated_poly", "n": 3},
        "B": {"type": "truncated_poly", "n": 3},
        "sigma": {"type": "identity"},
        "delta": {"type": "monomial", "alpha": "1", "t": 2},
    }
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps(spec))
    out1 = tmp_path / "c1.json"
    out2 = tmp_path / "c2.json"
    code1 = main(["resolve", str(spec_path), "--degree", "3", "--out", str(out1)])
    code2 = main(["resolve", str(spec_path), "--degree", "3", "--out", str(out2)])
    capsys.readouterr()
    ok = code1 == 0 and code2 == 0 and out1.read_bytes() == out2.read_bytes()
    check_code = main(["check", str(out1)])
    capsys.readouterr()
    _report(10, ok and check_code == 0, "resolve output byte-deterministic and re-certified by check with exit 0")
