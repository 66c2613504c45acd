"""Reduced forms of the splitting map on the lifted block system.

A :class:`BlockSystem` pairs two operators with a step size tau and an
ambient dimension n.  The splitting update, viewed in the rescaled
coordinate v = z / sqrt(tau), is the resolvent of the parallel-type
composition built from

    L = [[B^{-1}, -tau*I], [tau*I, A^{-1}]]      (2n x 2n)
    K = sqrt(tau) * [I  I]                       (n x 2n)

and can be evaluated three independent ways:

* ``reduced_resolvent_via_drs``: rescale, take one splitting step,
  rescale back.  Works for every catalog operator.
* ``reduced_resolvent_direct``: assemble K L^{-1} K^T densely and solve
  (I + K L^{-1} K^T) v+ = v.  Needs invertible linear blocks.
* ``reduced_resolvent_fukushima``: the complement form
  v - K (L + K^T K)^{-1} K^T v, algebraically identical to the direct
  path by a Woodbury rearrangement.  Same invertibility caveat.

All three must agree to near machine precision; the test suite holds
them to 1e-10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .drs import splitting_pass
from .errors import DimensionMismatch, NonInvertibleBlock, SingularSystem
from .operators import MonotoneOperator, linear_matrix, operator_from_dict


@dataclass(frozen=True, eq=False)
class BlockSystem:
    """Two operators, a step size, and the ambient dimension they act on."""

    A: MonotoneOperator
    B: MonotoneOperator
    tau: float
    n: int
    root_tau: float = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "tau", float(self.tau))
        object.__setattr__(self, "n", int(self.n))
        if not self.tau > 0.0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        for name, op in (("A", self.A), ("B", self.B)):
            if op.dim is not None and op.dim != self.n:
                raise DimensionMismatch(
                    f"{name} acts on dimension {op.dim}, but the system is {self.n}-dimensional"
                )
        # computed once and shared by every path so the coordinate link
        # cannot drift between formulations
        object.__setattr__(self, "root_tau", math.sqrt(self.tau))

    def to_dict(self):
        return {"A": self.A.to_dict(), "B": self.B.to_dict(), "tau": self.tau, "n": self.n}

    @classmethod
    def from_dict(cls, data):
        return cls(
            operator_from_dict(data["A"]),
            operator_from_dict(data["B"]),
            data["tau"],
            data["n"],
        )


@dataclass(frozen=True, eq=False)
class EliminationPair:
    """Matrices (R1, R2) that eliminate the auxiliary block rows.

    They satisfy L R1 = K^T R2 and K R1 = (1/sqrt(tau)) I for the scaled
    K = sqrt(tau) [I I]; R1 is (2n, n), R2 is (n, n).
    """

    R1: np.ndarray
    R2: np.ndarray

    def __post_init__(self):
        R1 = np.array(self.R1, dtype=float)
        R2 = np.array(self.R2, dtype=float)
        if R2.shape[0] != R2.shape[1]:
            raise DimensionMismatch(f"R2 must be square, got {R2.shape}")
        n = R2.shape[0]
        if R1.shape != (2 * n, n):
            raise DimensionMismatch(f"R1 must be (2n, n) = {(2 * n, n)}, got {R1.shape}")
        R1.flags.writeable = False
        R2.flags.writeable = False
        object.__setattr__(self, "R1", R1)
        object.__setattr__(self, "R2", R2)


def _check_vec(sys, v):
    V = np.atleast_1d(np.asarray(v, dtype=float))
    single = V.ndim == 1
    if single:
        V = V[None, :]
    if V.ndim != 2 or V.shape[1] != sys.n:
        raise DimensionMismatch(f"expected points of dimension {sys.n}, got shape {np.shape(v)}")
    return V, single


def lifted_blocks(sys):
    """Assemble the dense (L, K) pair for an invertible linear system.

    Raises NotLinear when a block is not linear-representable and
    NonInvertibleBlock when a block matrix is singular.
    """
    n = sys.n
    MA = linear_matrix(sys.A, n)
    MB = linear_matrix(sys.B, n)
    try:
        inv_a = np.linalg.inv(MA)
    except np.linalg.LinAlgError as exc:
        raise NonInvertibleBlock("block A is singular; it has no dense inverse") from exc
    try:
        inv_b = np.linalg.inv(MB)
    except np.linalg.LinAlgError as exc:
        raise NonInvertibleBlock("block B is singular; it has no dense inverse") from exc
    eye = np.eye(n)
    L = np.block([[inv_b, -sys.tau * eye], [sys.tau * eye, inv_a]])
    K = sys.root_tau * np.hstack([eye, eye])
    return L, K


def coupling_gram(sys):
    """The dense n x n matrix K L^{-1} K^T."""
    L, K = lifted_blocks(sys)
    try:
        return K @ np.linalg.solve(L, K.T)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem("lifted block matrix L is singular") from exc


def reduced_resolvent_via_drs(sys, v):
    """Evaluate the reduced resolvent through one splitting step.

    Computes z = sqrt(tau) * v, applies the splitting update, and
    rescales back.  This is the general-purpose path: it only needs the
    resolvents of A and B.
    """
    V, single = _check_vec(sys, v)
    Z = sys.root_tau * V
    Z_next, _, _ = splitting_pass(sys.A, sys.B, sys.tau, Z)
    out = Z_next / sys.root_tau
    return out[0] if single else out


def reduced_resolvent_direct(sys, v):
    """Evaluate the reduced resolvent by dense assembly.

    Solves (I + K L^{-1} K^T) v+ = v.  Requires both blocks to be
    invertible linear maps; raises NonInvertibleBlock otherwise.
    """
    V, single = _check_vec(sys, v)
    W = coupling_gram(sys)
    try:
        out = np.linalg.solve(np.eye(sys.n) + W, V.T).T
    except np.linalg.LinAlgError as exc:
        raise SingularSystem("I + K L^{-1} K^T is singular") from exc
    return out[0] if single else out


def reduced_resolvent_fukushima(sys, v):
    """Evaluate the reduced resolvent in complement form.

    Computes v - K (L + K^T K)^{-1} K^T v, which equals the direct path
    by the Woodbury identity.  Same invertibility requirements as the
    direct path.
    """
    V, single = _check_vec(sys, v)
    L, K = lifted_blocks(sys)
    G = L + K.T @ K
    try:
        Y = np.linalg.solve(G, K.T @ V.T)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem("L + K^T K is singular") from exc
    out = V - (K @ Y).T
    return out[0] if single else out


def moreau_complement_form(sys, v):
    """The complementary resolvent v - reduced_resolvent_via_drs(sys, v).

    Splitting v into resolvent plus complement is exact by construction;
    on linear systems the complement independently satisfies the
    inclusion v - r in (K L^{-1} K^T)^{-1} (r) checked via dense algebra.
    """
    V, single = _check_vec(sys, v)
    out = V - reduced_resolvent_via_drs(sys, V)
    return out[0] if single else out


def elimination_pair(sys):
    """Solve for the (R1, R2) elimination pair of an invertible system."""
    L, K = lifted_blocks(sys)
    W = coupling_gram(sys)
    try:
        R2 = np.linalg.solve(W, np.eye(sys.n) / sys.root_tau)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem("K L^{-1} K^T is singular; no elimination pair exists") from exc
    R1 = np.linalg.solve(L, K.T @ R2)
    return EliminationPair(R1, R2)
