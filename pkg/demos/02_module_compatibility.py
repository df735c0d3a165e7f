"""Lift a twisting map to module structures.

Shows the compatibility map tau_{B,M} for the trivial module k and for the
regular module A, and builds the certified module structure on A (x) B
over the twisted product.
"""

import argparse

from orecert import (
    Field,
    build_tau,
    build_tau_BM,
    monomial_derivation,
    scalar_automorphism,
    tensor_module_action,
    truncated_poly_algebra,
    twisted_algebra,
    verify_automorphism,
    verify_compatibility,
    verify_module_axioms,
    verify_phi,
    verify_sigma_derivation,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=3)
    args = ap.parse_args()
    p = args.p

    F = Field(p)
    A = truncated_poly_algebra(F, p, warn=print)
    sigma = scalar_automorphism(A, 1)
    verify_automorphism(A, sigma).require()
    dx = F.zeros(p)
    dx[2] = F.one
    delta = monomial_derivation(A, sigma, dx)
    verify_sigma_derivation(A, sigma, delta).require()
    tau = build_tau(A, sigma, delta, p)
    T = twisted_algebra(A, tau.B, tau)

    print("== trivial module k ==")
    action_k = [F.array([[1 if k == 0 else 0]]) for k in range(p)]
    phi = F.eye(1)
    verify_phi(action_k, phi, sigma, F).require()
    cm = build_tau_BM(A, action_k, F.zeros((1, 1)), phi, p)
    for line in verify_compatibility(cm, tau).lines():
        print(line)

    print("== regular module A ==")
    action_A = [A.left_mul_matrix(A.basis_element(k).coeffs) for k in range(p)]
    cm = build_tau_BM(A, action_A, delta.matrix, sigma.matrix, p)
    for line in verify_compatibility(cm, tau).lines():
        print(line)
    print("tau_{B,A} equals tau on the regular module:",
          bool((cm.matrix == tau.matrix).all()))

    print("== A (x) B as a module over the twisted product ==")
    B = tau.B
    action_B = [B.left_mul_matrix(B.basis_element(r).coeffs) for r in range(p)]
    MN = tensor_module_action(T, cm, action_B, p)
    for line in verify_module_axioms(MN).lines():
        print(line)


if __name__ == "__main__":
    main()
