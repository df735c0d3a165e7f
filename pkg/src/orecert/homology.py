"""Free complexes, lifting solver, and the twisted product complex.

A FreeComplex stores ranks and differential matrices whose entries are
algebra elements (coefficient vectors); the differential sends generator
e_u to sum_i D[i, u] f_i and extends as a left-module homomorphism.  The
k-linear realization puts right-multiplication matrices in each block,
which is what all rank computations and the lifting solver run on.

The lifting solver implements the comparison-theorem constructions: the
chain map lifting the identity into the sigma-twisted resolution, and the
skew chain map lifting the truncated-generator action, both found by the
candidate-minus-correction scheme with the correction solved canonically
(reduced row echelon, free variables zero).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import Algebra, LinearOperator
from .modules import CompatMap, verify_compatibility
from .report import Report
from .shuffle import shuffle_family
from .twist import TwistedAlgebra, TwistingMap


class LiftError(Exception):
    """The degreewise lifting system was inconsistent."""


class ConstructionError(Exception):
    """A certified invariant of a constructed complex failed."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FreeComplex:
    def __init__(self, algebra: Algebra, ranks, diffs, augmentation):
        """diffs[d-1] is the degree-d differential: array (r_{d-1}, r_d, dim).

        augmentation is a k-linear matrix from the degree-0 free module
        (generator-major basis) onto the augmented module.
        """
        self.algebra = algebra
        self.ranks = list(ranks)
        self.diffs = [algebra.field.array(D) for D in diffs]
        self.augmentation = algebra.field.array(augmentation)
        self._klinear_cache = {}
        for d, D in enumerate(self.diffs, start=1):
            if D.shape != (self.ranks[d - 1], self.ranks[d], algebra.dim):
                raise ValueError(f"degree-{d} differential has wrong shape")

    @property
    def top(self):
        return len(self.diffs)

    @property
    def field(self):
        return self.algebra.field

    def space_dim(self, deg):
        return self.ranks[deg] * self.algebra.dim

    def differential_matrix(self, deg):
        """k-linear realization of d_deg (regular module structure)."""
        if deg not in self._klinear_cache:
            alg = self.algebra
            D = self.diffs[deg - 1]
            out = alg.field.zeros((self.ranks[deg - 1] * alg.dim, self.ranks[deg] * alg.dim))
            for i in range(self.ranks[deg - 1]):
                for u in range(self.ranks[deg]):
                    out[
                        i * alg.dim:(i + 1) * alg.dim, u * alg.dim:(u + 1) * alg.dim
                    ] = alg.right_mul_matrix(D[i, u])
            self._klinear_cache[deg] = out
        return self._klinear_cache[deg]

    def free_action(self, deg, coeffs):
        """Action of an algebra element on the degree-deg free module."""
        return linalg.kron(
            self.field, self.field.eye(self.ranks[deg]), self.algebra.left_mul_matrix(coeffs)
        )

    def verify(self) -> Report:
        """d o d = 0 in every stored degree and augmentation o d_1 = 0."""
        rep = Report("complex invariants")
        alg = self.algebra
        for d in range(2, self.top + 1):
            D1, D2 = self.diffs[d - 2], self.diffs[d - 1]
            ok, witness = True, None
            for i in range(self.ranks[d - 2]):
                for w in range(self.ranks[d]):
                    acc = alg.field.zeros(alg.dim)
                    for u in range(self.ranks[d - 1]):
                        acc = acc + alg.mul_vec(D2[u, w], D1[i, u])
                    if not linalg.is_zero(alg.field.reduce(acc)):
                        ok, witness = False, (d, i, w)
                        break
                if not ok:
                    break
            rep.add(f"d_{d - 1} o d_{d} = 0", ok, witness)
        if self.top >= 1:
            rep.add(
                "augmentation o d_1 = 0",
                linalg.is_zero(
                    linalg.matmul(self.field, self.augmentation, self.differential_matrix(1))
                ),
            )
        return rep


def check_exactness(X: FreeComplex, through_degree: int) -> Report:
    """Rank certificate: exact iff rank(d_1) = dim ker(aug) and
    rank(d_n) + rank(d_{n+1}) = dim(degree n) for 1 <= n < through_degree."""
    if through_degree > X.top:
        raise ValueError(
            f"through_degree {through_degree} exceeds stored top degree {X.top}"
        )
    rep = Report(f"exactness through degree {through_degree - 1}")
    F = X.field
    ranks = {d: linalg.rank(F, X.differential_matrix(d)) for d in range(1, through_degree + 1)}
    ker_eps = X.space_dim(0) - linalg.rank(F, X.augmentation)
    rep.add(
        "rank(d_1) = dim ker(augmentation)",
        ranks[1] == ker_eps,
        (ranks[1], ker_eps),
    )
    for n in range(1, through_degree):
        dim_n = X.space_dim(n)
        rep.add(
            f"rank(d_{n}) + rank(d_{n + 1}) = dim(degree {n})",
            ranks[n] + ranks[n + 1] == dim_n,
            (ranks[n], ranks[n + 1], dim_n),
        )
    return rep


def standard_truncated_resolution(field, n: int, length: int) -> FreeComplex:
    """The periodic rank-one resolution of k over k[x]/(x^n).

    Differentials alternate multiplication by x (odd degree) and x^{n-1}
    (even degree); the augmentation kills x.
    """
    from .algebra import truncated_poly_algebra

    if length < 1:
        raise ValueError("length must be >= 1")
    B = truncated_poly_algebra(field, n, warn=lambda _m: None)
    diffs = []
    for d in range(1, length + 1):
        e = field.zeros(n)
        e[1 if d % 2 == 1 else n - 1] = field.one
        diffs.append(e.reshape(1, 1, n))
    aug = field.zeros((1, n))
    aug[0, 0] = field.one
    return FreeComplex(B, [1] * (length + 1), diffs, aug)


def extend_x_action(P: FreeComplex, sigma: LinearOperator, delta: LinearOperator, n: int):
    """Summand-wise action of the truncated generator on each free module.

    Returns one operator per degree (x acting as delta in each summand),
    after certifying delta^n = 0 (the action must factor through the
    truncation) and the Ore relation x a . z = (sigma(a) x + delta(a)) . z
    on all basis pairs.
    """
    F = P.field
    alg = P.algebra
    if delta.tag != "derivation":
        raise ValueError("delta must pass verify_sigma_derivation first")
    power = F.eye(alg.dim)
    for _ in range(n):
        power = linalg.matmul(F, power, delta.matrix)
    if not linalg.is_zero(power):
        raise ConstructionError("delta^n != 0: action does not factor through the quotient")
    ops = []
    for deg in range(P.top + 1):
        op = linalg.kron(F, F.eye(P.ranks[deg]), delta.matrix)
        # x a . z = (sigma(a) x + delta(a)) . z on basis pairs
        for k in range(alg.dim):
            a = alg.basis_element(k).coeffs
            lhs = linalg.matmul(F, op, P.free_action(deg, a))
            rhs = F.reduce(
                linalg.matmul(F, P.free_action(deg, sigma(a)), op)
                + P.free_action(deg, delta(a))
            )
            if not np.array_equal(lhs, rhs):
                raise ConstructionError("Ore relation failed for extended action", (deg, k))
        ops.append(op)
    return ops


@dataclass
class ChainMap:
    source: FreeComplex
    target: FreeComplex
    maps: list  # k-linear matrix per degree
    contract: str  # lifts-identity-to-sigma | lifts-xbar-action
    certificate: Report = None


def _equivariant_extension(P: FreeComplex, deg, sigma: LinearOperator, gen_images):
    """Full k-linear matrix of the sigma-equivariant map with the given
    generator images: u(b . e_g) = sigma(b) . u(e_g)."""
    F = P.field
    alg = P.algebra
    dim = alg.dim
    out = F.zeros((P.space_dim(deg), P.space_dim(deg)))
    for g in range(P.ranks[deg]):
        y = gen_images[g]
        for b in range(dim):
            sb = sigma.matrix[:, b]
            col = linalg.matmul(F, P.free_action(deg, sb), y)
            out[:, g * dim + b] = col
    return out


def _basis_vec(F, size, idx):
    v = F.zeros(size)
    v[idx] = F.one
    return v


def lift_through(
    source: FreeComplex,
    target: FreeComplex,
    base_map,
    sigma: LinearOperator,
    delta: LinearOperator = None,
) -> ChainMap:
    """Degreewise comparison-theorem solver.

    With delta omitted: finds the sigma-equivariant chain map lifting
    base_map (the identity-into-twisted-resolution case).  With delta
    given: finds the skew chain map u with u(a.z) = sigma(a) u(z) +
    delta(a) z lifting base_map, as candidate (the summand-wise generator
    action) minus a canonically solved module-homomorphism correction.
    Raises LiftError when a degreewise system is inconsistent.
    """
    F = source.field
    alg = source.algebra
    if target.algebra is not alg or target.ranks != source.ranks:
        raise ValueError("source and target must share algebra and ranks")
    base = F.array(base_map)
    maps = []
    skew = delta is not None
    candidates = extend_x_action(source, sigma, delta, alg.dim) if skew else None
    for deg in range(source.top + 1):
        dim_here = source.space_dim(deg)
        if deg == 0:
            lhs_mat = target.augmentation
            rhs_map = linalg.matmul(F, base, source.augmentation)
        else:
            lhs_mat = target.differential_matrix(deg)
            rhs_map = linalg.matmul(F, maps[deg - 1], source.differential_matrix(deg))
        if skew:
            cand = candidates[deg]
            if deg == 0:
                corr_rhs = F.reduce(linalg.matmul(F, target.augmentation, cand) - rhs_map)
            else:
                corr_rhs = F.reduce(linalg.matmul(F, lhs_mat, cand) - rhs_map)
        else:
            corr_rhs = rhs_map
        gen_images = []
        for g in range(source.ranks[deg]):
            gen_vec = _basis_vec(F, dim_here, g * alg.dim + alg.unit_index)
            b = linalg.matmul(F, corr_rhs, gen_vec)
            y = linalg.solve(F, lhs_mat, b)
            if y is None:
                raise LiftError(f"no lift at degree {deg}, generator {g}")
            gen_images.append(y)
        corr = _equivariant_extension(source, deg, sigma, gen_images)
        maps.append(F.reduce(cand - corr) if skew else corr)
    contract = "lifts-xbar-action" if skew else "lifts-identity-to-sigma"
    cm = ChainMap(source=source, target=target, maps=maps, contract=contract)
    cm.certificate = verify_chain_map(cm, base, sigma, delta)
    if not cm.certificate.passed:
        raise ConstructionError(
            "lifted chain map failed certification", cm.certificate.first_failure
        )
    return cm


def verify_chain_map(cm: ChainMap, base_map, sigma: LinearOperator, delta: LinearOperator = None) -> Report:
    """Commuting squares, the augmentation square, and equivariance."""
    rep = Report(f"chain map contract: {cm.contract}")
    F = cm.source.field
    alg = cm.source.algebra
    base = F.array(base_map)
    rep.add(
        "lifts the base map",
        np.array_equal(
            linalg.matmul(F, cm.target.augmentation, cm.maps[0]),
            linalg.matmul(F, base, cm.source.augmentation),
        ),
    )
    for deg in range(1, cm.source.top + 1):
        rep.add(
            f"square at degree {deg}",
            np.array_equal(
                linalg.matmul(F, cm.target.differential_matrix(deg), cm.maps[deg]),
                linalg.matmul(F, cm.maps[deg - 1], cm.source.differential_matrix(deg)),
            ),
        )
    ok, witness = True, None
    for deg in range(cm.source.top + 1):
        u = cm.maps[deg]
        for k in range(alg.dim):
            a = alg.basis_element(k).coeffs
            lhs = linalg.matmul(F, u, cm.source.free_action(deg, a))
            rhs = linalg.matmul(F, cm.target.free_action(deg, sigma(a)), u)
            if delta is not None:
                rhs = F.reduce(rhs + cm.target.free_action(deg, delta(a)))
            if not np.array_equal(lhs, rhs):
                ok, witness = False, (deg, alg.basis_labels[k])
                break
        if not ok:
            break
    name = "skew equivariance" if delta is not None else "sigma-equivariance"
    rep.add(f"{name} on all basis pairs", ok, witness)
    return rep


@dataclass
class TauBChain:
    """Per-degree compatibility maps B (x) P_i -> P_i (x) B for a resolution."""

    P: FreeComplex
    n: int
    maps: list  # one matrix per degree
    sigma_ops: list
    delta_ops: list
    certificate: Report = None


def certify_tau_B_chain(chain: TauBChain, tau: TwistingMap) -> Report:
    """Degreewise compatibility relations plus the chain squares
    (d (x) 1) tau_{B,i} = tau_{B,i-1} (1 (x) d)."""
    P, n = chain.P, chain.n
    F = P.field
    rep = Report("resolution compatibility chain")
    for deg in range(P.top + 1):
        cmdeg = CompatMap(
            A=P.algebra,
            n=n,
            action_A=[
                P.free_action(deg, P.algebra.basis_element(k).coeffs)
                for k in range(P.algebra.dim)
            ],
            f=chain.delta_ops[deg],
            phi=chain.sigma_ops[deg],
            matrix=chain.maps[deg],
        )
        deg_rep = verify_compatibility(cmdeg, tau)
        rep.add(f"degree {deg} compatibility", deg_rep.passed, deg_rep.first_failure)
    for deg in range(1, P.top + 1):
        D = P.differential_matrix(deg)
        lhs = linalg.matmul(F, linalg.kron(F, D, F.eye(n)), chain.maps[deg])
        rhs = linalg.matmul(F, chain.maps[deg - 1], linalg.kron(F, F.eye(n), D))
        rep.add(f"chain square at degree {deg}", np.array_equal(lhs, rhs))
    return rep


def build_tau_B_chain(
    P: FreeComplex, sigma_chain: ChainMap, delta_chain: ChainMap, n: int, tau: TwistingMap
) -> TauBChain:
    """Per-degree compatibility maps from the shuffle expansion of
    (sigma_i, delta_i), certified degree by degree and as a chain map."""
    F = P.field
    maps = []
    for deg in range(P.top + 1):
        s_op = LinearOperator(F, sigma_chain.maps[deg])
        d_op = LinearOperator(F, delta_chain.maps[deg])
        fam = shuffle_family(n, s_op, d_op)
        for k in range(0, n):
            j = n - k
            if not linalg.is_zero(fam[(k, j)]):
                raise ConstructionError(
                    f"vanishing failed at degree {deg}", (deg, (k, j))
                )
        dim_P = P.space_dim(deg)
        M = F.zeros((dim_P * n, n * dim_P))
        for r in range(n):
            for i in range(r + 1):
                s_ij = fam[(i, r - i)]
                for m in range(dim_P):
                    vec = s_ij[:, m]
                    col = r * dim_P + m
                    for mm in range(dim_P):
                        if vec[mm] != 0:
                            M[mm * n + i, col] = vec[mm]
        maps.append(M)
    out = TauBChain(
        P=P,
        n=n,
        maps=maps,
        sigma_ops=list(sigma_chain.maps),
        delta_ops=list(delta_chain.maps),
    )
    out.certificate = certify_tau_B_chain(out, tau)
    if not out.certificate.passed:
        raise ConstructionError("compatibility chain failed", out.certificate.first_failure)
    return out


# -- the twisted product complex -------------------------------------------


class TwistedProductComplex:
    """The total complex of P(M) and P(N) with the twisted module structure.

    Blocks at total degree k are (i, j = k - i) in descending i.  The
    vertical differential carries the sign (-1)^i.  The left twisted-algebra
    module structure on each block comes from the degree-i compatibility
    map; the action, the differentials, d^2 = 0 and generator equivariance
    are all certified.  free_complex() converts to a FreeComplex with
    algebra-element entries by solving against the generator-action
    isomorphism blockwise.
    """

    def __init__(self, twisted: TwistedAlgebra, P_M: FreeComplex, P_N: FreeComplex,
                 tau_chain: TauBChain, aug_action=None):
        self.twisted = twisted
        self.P_M = P_M
        self.P_N = P_N
        self.tau_chain = tau_chain
        F = twisted.product.field
        self.field = F
        self.top = min(P_M.top, P_N.top)
        self.blocks = [
            [(i, k - i) for i in range(min(k, P_M.top), -1, -1) if k - i <= P_N.top]
            for k in range(self.top + 1)
        ]
        self._block_dims = {}
        self._action_cache = {}
        self.aug_action = aug_action
        self.certificate = Report("twisted product complex")
        self._build()

    # block geometry -------------------------------------------------------

    def block_dim(self, i, j):
        return self.P_M.space_dim(i) * self.P_N.space_dim(j)

    def degree_dim(self, k):
        return sum(self.block_dim(i, j) for (i, j) in self.blocks[k])

    def block_offsets(self, k):
        off, out = 0, {}
        for (i, j) in self.blocks[k]:
            out[(i, j)] = off
            off += self.block_dim(i, j)
        return out

    def block_generators(self, i, j):
        return self.P_M.ranks[i] * self.P_N.ranks[j]

    def degree_rank(self, k):
        return sum(self.block_generators(i, j) for (i, j) in self.blocks[k])

    # module structure -------------------------------------------------------

    def block_action(self, i, j, k_a, i_b):
        """Action of the twisted-algebra basis element a_{k_a} (x) x^{i_b}
        on the block P_i(M) (x) P_j(N)."""
        key = (i, j, k_a, i_b)
        if key not in self._action_cache:
            F = self.field
            n = self.twisted.B.dim
            dP = self.P_M.space_dim(i)
            dN = self.P_N.space_dim(j)
            T = self.tau_chain.maps[i]
            S = T[:, i_b * dP:(i_b + 1) * dP]  # z -> tau_{B,i}(x^{i_b} (x) z)
            rhoN = F.zeros((dN, n * dN))
            for b in range(n):
                rhoN[:, b * dN:(b + 1) * dN] = self.P_N.free_action(
                    j, self.twisted.B.basis_element(b).coeffs
                )
            actA = self.P_M.free_action(i, self.twisted.A.basis_element(k_a).coeffs)
            self._action_cache[key] = linalg.matmul(
                F, linalg.kron(F, actA, rhoN), linalg.kron(F, S, F.eye(dN))
            )
        return self._action_cache[key]

    def degree_action(self, k, k_a, i_b):
        F = self.field
        dim_k = self.degree_dim(k)
        out = F.zeros((dim_k, dim_k))
        off = 0
        for (i, j) in self.blocks[k]:
            d = self.block_dim(i, j)
            out[off:off + d, off:off + d] = self.block_action(i, j, k_a, i_b)
            off += d
        return out

    # construction -----------------------------------------------------------

    def _build(self):
        F = self.field
        self.differentials = []
        for k in range(1, self.top + 1):
            src_off = self.block_offsets(k)
            tgt_off = self.block_offsets(k - 1)
            D = F.zeros((self.degree_dim(k - 1), self.degree_dim(k)))
            for (i, j) in self.blocks[k]:
                so = src_off[(i, j)]
                dPi = self.P_M.space_dim(i)
                dNj = self.P_N.space_dim(j)
                if i >= 1 and (i - 1, j) in tgt_off:
                    to = tgt_off[(i - 1, j)]
                    blk = linalg.kron(F, self.P_M.differential_matrix(i), F.eye(dNj))
                    D[to:to + blk.shape[0], so:so + blk.shape[1]] = blk
                if j >= 1 and (i, j - 1) in tgt_off:
                    to = tgt_off[(i, j - 1)]
                    blk = linalg.kron(F, F.eye(dPi), self.P_N.differential_matrix(j))
                    if i % 2 == 1:
                        blk = F.reduce(-blk)
                    D[to:to + blk.shape[0], so:so + blk.shape[1]] = blk
            self.differentials.append(D)

        # augmentation: (mu_M (x) mu_N) on the (0,0) block
        augM, augN = self.P_M.augmentation, self.P_N.augmentation
        self.augmentation = linalg.kron(F, augM, augN)

        rep = self.certificate
        for k in range(2, self.top + 1):
            prod = linalg.matmul(F, self.differentials[k - 2], self.differentials[k - 1])
            if linalg.is_zero(prod):
                rep.add(f"d_{k - 1} o d_{k} = 0", True)
            else:
                col = int(np.argwhere(np.any(prod != 0, axis=0)).reshape(-1)[0])
                rep.add(f"d_{k - 1} o d_{k} = 0", False, ("column", col))
        rep.add(
            "augmentation o d_1 = 0",
            linalg.is_zero(linalg.matmul(F, self.augmentation, self.differentials[0])),
        )
        # generator equivariance: both algebra generators commute with d
        gens = [(1, 0), (0, 1)] if self.twisted.A.dim > 1 else [(0, 1)]
        for (k_a, i_b) in gens:
            ok, witness = True, None
            for k in range(1, self.top + 1):
                lhs = linalg.matmul(F, self.differentials[k - 1], self.degree_action(k, k_a, i_b))
                rhs = linalg.matmul(F, self.degree_action(k - 1, k_a, i_b), self.differentials[k - 1])
                if not np.array_equal(lhs, rhs):
                    ok, witness = False, ("degree", k)
                    break
            rep.add(f"differentials commute with generator ({k_a},{i_b})", ok, witness)
            if self.aug_action is not None:
                idx = k_a * self.twisted.B.dim + i_b
                lhs = linalg.matmul(F, self.augmentation, self.degree_action(0, k_a, i_b))
                rhs = linalg.matmul(F, self.aug_action[idx], self.augmentation)
                rep.add(
                    f"augmentation intertwines generator ({k_a},{i_b})",
                    np.array_equal(lhs, rhs),
                )
        if not rep.passed:
            raise ConstructionError(
                "twisted product complex failed certification", rep.first_failure
            )

    # conversion ---------------------------------------------------------------

    def _psi(self, k):
        """Isomorphism T^{rank} -> degree-k space, generator-action columns."""
        F = self.field
        dimT = self.twisted.product.dim
        dA, n = self.twisted.A.dim, self.twisted.B.dim
        cols = []
        for (i, j) in self.blocks[k]:
            dNj = self.P_N.space_dim(j)
            for u in range(self.P_M.ranks[i]):
                for v in range(self.P_N.ranks[j]):
                    gen = F.zeros(self.block_dim(i, j))
                    gi = (u * dA + self.twisted.A.unit_index) * dNj + (
                        v * n + self.twisted.B.unit_index
                    )
                    gen[gi] = F.one
                    for b in range(dimT):
                        k_a, i_b = divmod(b, n)
                        full = F.zeros(self.degree_dim(k))
                        off = self.block_offsets(k)[(i, j)]
                        full[off:off + self.block_dim(i, j)] = linalg.matmul(
                            F, self.block_action(i, j, k_a, i_b), gen
                        )
                        cols.append(full)
        M = F.zeros((self.degree_dim(k), len(cols)))
        for c, col in enumerate(cols):
            M[:, c] = col
        return M

    def free_complex(self) -> FreeComplex:
        """Entries over the twisted algebra, by blockwise change of basis."""
        F = self.field
        T = self.twisted.product
        dimT = T.dim
        psis = [self._psi(k) for k in range(self.top + 1)]
        psi_invs = []
        for k, psi in enumerate(psis):
            inv = linalg.inverse(F, psi)
            if inv is None:
                raise ConstructionError(
                    "generator-action map is not bijective", ("degree", k)
                )
            psi_invs.append(inv)
        ranks = [self.degree_rank(k) for k in range(self.top + 1)]
        diffs = []
        for k in range(1, self.top + 1):
            reg = linalg.matmul(
                F, psi_invs[k - 1], linalg.matmul(F, self.differentials[k - 1], psis[k])
            )
            D = F.zeros((ranks[k - 1], ranks[k], dimT))
            for u in range(ranks[k]):
                col = reg[:, u * dimT + T.unit_index]
                D[:, u, :] = col.reshape(ranks[k - 1], dimT)
            # safety: the element entries must reproduce the regular matrix
            check = FreeComplex(T, [ranks[k - 1], ranks[k]], [D], F.zeros((1, ranks[k - 1] * dimT)))
            if not np.array_equal(check.differential_matrix(1), reg):
                raise ConstructionError("entry extraction mismatch", ("degree", k))
            diffs.append(D)
        aug = linalg.matmul(F, self.augmentation, psis[0])
        return FreeComplex(T, ranks, diffs, aug)


def twisted_product_complex(
    twisted: TwistedAlgebra,
    P_M: FreeComplex,
    P_N: FreeComplex,
    tau_chain: TauBChain,
    aug_action=None,
) -> TwistedProductComplex:
    if tau_chain.P is not P_M:
        raise ValueError("tau_chain was built for a different resolution")
    return TwistedProductComplex(twisted, P_M, P_N, tau_chain, aug_action=aug_action)
