"""Cyclic monotonicity checks and the resolvent-vs-prox classifier.

A monotone operator is the subdifferential of a convex function exactly
when its graph is cyclically monotone: every finite tuple of graph
points (x_i, u_i) satisfies

    sum_i <x_{i+1} - x_i, u_i>  <=  0      (indices wrap around).

For a linear operator this reduces to symmetry of the matrix, which is
what :func:`classify_resolvent` measures on the recovered generator
T^{-1} - I of a linear resolvent T.  :func:`skew_three_cycle` builds an
explicit three-point violation for a pure skew coupling, and
:func:`sample_cycles` searches graphs at random.  A found witness is a
certificate; absence of one after any number of trials proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .drs import drs_step
from .errors import (
    DimensionMismatch,
    DrslabError,
    LengthMismatch,
    NonMonotone,
    NotLinear,
    NotSymmetricPD,
    SingularMatrix,
    UnsupportedSampling,
    ZeroCoupling,
)
from .operators import Block2x2, resolve

#: A cycle sum above this is treated as a genuine violation.
TOL_VIOLATION = 1e-8

#: Agreement required between a closed-form xi and the recomputed cycle sum.
TOL_XI = 1e-10

PROXIMAL = "Proximal"
NOT_PROXIMAL = "NotProximal"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True, eq=False)
class CycleWitness:
    """A tuple of graph points with its cycle sum.

    ``xi`` carries the closed-form value when the witness comes from the
    skew construction; it must agree with the recomputed cycle sum.
    """

    points: tuple
    values: tuple
    cycle_sum: float
    xi: float | None = None

    def __post_init__(self):
        pts = tuple(np.atleast_1d(np.asarray(p, dtype=float)) for p in self.points)
        vals = tuple(np.atleast_1d(np.asarray(v, dtype=float)) for v in self.values)
        if len(pts) != len(vals):
            raise LengthMismatch(f"{len(pts)} points but {len(vals)} values")
        if len(pts) < 2:
            raise LengthMismatch("a cycle needs at least two points")
        d = pts[0].shape
        for arr in pts + vals:
            if arr.shape != d:
                raise DimensionMismatch("all points and values must share one dimension")
            arr.flags.writeable = False
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "cycle_sum", float(self.cycle_sum))
        if self.xi is not None:
            object.__setattr__(self, "xi", float(self.xi))
            if abs(self.xi - self.cycle_sum) > TOL_XI * max(1.0, abs(self.xi)):
                raise ValueError(
                    f"xi {self.xi!r} disagrees with cycle sum {self.cycle_sum!r}"
                )

    @property
    def n(self):
        return len(self.points)

    @property
    def certifies(self):
        """True when the witness actually proves a violation."""
        return self.cycle_sum > TOL_VIOLATION

    def to_dict(self):
        out = {
            "n": self.n,
            "points": [p.tolist() for p in self.points],
            "values": [v.tolist() for v in self.values],
            "cycle_sum": self.cycle_sum,
        }
        if self.xi is not None:
            out["xi"] = self.xi
        return out

    @classmethod
    def from_dict(cls, data):
        return cls(
            tuple(data["points"]),
            tuple(data["values"]),
            data["cycle_sum"],
            data.get("xi"),
        )


@dataclass(frozen=True, eq=False)
class ResolventClassification:
    """Classifier output: the recovered generator and a verdict."""

    recovered_M: np.ndarray
    symmetry_defect: float
    verdict: str

    def __post_init__(self):
        M = np.array(self.recovered_M, dtype=float)
        M.flags.writeable = False
        object.__setattr__(self, "recovered_M", M)
        object.__setattr__(self, "symmetry_defect", float(self.symmetry_defect))

    def to_dict(self):
        return {
            "recovered_M": self.recovered_M.tolist(),
            "symmetry_defect": self.symmetry_defect,
            "verdict": self.verdict,
        }


def cycle_sum(points, values):
    """The wraparound sum  sum_i <x_{i+1} - x_i, u_i>."""
    pts = [np.atleast_1d(np.asarray(p, dtype=float)) for p in points]
    vals = [np.atleast_1d(np.asarray(v, dtype=float)) for v in values]
    if len(pts) != len(vals):
        raise LengthMismatch(f"{len(pts)} points but {len(vals)} values")
    if len(pts) < 2:
        raise LengthMismatch("a cycle needs at least two points")
    total = 0.0
    m = len(pts)
    for i in range(m):
        step = pts[(i + 1) % m] - pts[i]
        if step.shape != vals[i].shape:
            raise DimensionMismatch("points and values must share one dimension")
        total += float(step @ vals[i])
    return total


def skew_three_cycle(C, a1, b1):
    """Deterministic three-point cycle witness for the pure skew coupling.

    For S(a, b) = (-C^T b, C a) the points

        x1 = (a1, b1)
        x2 = (-C^T b1, C a1)
        x3 = (-C^T C a1, -C C^T b1)

    with values u_i = S(x_i) produce the cycle sum

        xi = ||C a1||^2 + ||C^T C a1||^2 + ||C^T b1||^2 + ||C C^T b1||^2,

    strictly positive whenever C a1 != 0.  Raises ZeroCoupling when C is
    the zero matrix.  A witness with xi = 0 (zero inputs) is returned
    but does not certify anything.
    """
    C = np.asarray(C, dtype=float)
    if C.ndim != 2:
        raise DimensionMismatch(f"C must be a matrix, got shape {C.shape}")
    if not np.any(C):
        raise ZeroCoupling("coupling matrix is identically zero")
    a1 = np.atleast_1d(np.asarray(a1, dtype=float))
    b1 = np.atleast_1d(np.asarray(b1, dtype=float))
    n2, n1 = C.shape
    if a1.shape != (n1,):
        raise DimensionMismatch(f"a1 must have length {n1}, got shape {a1.shape}")
    if b1.shape != (n2,):
        raise DimensionMismatch(f"b1 must have length {n2}, got shape {b1.shape}")

    Ca1 = C @ a1
    Ctb1 = C.T @ b1
    CtCa1 = C.T @ Ca1
    CCtb1 = C @ Ctb1

    blocks = [(a1, b1), (-Ctb1, Ca1), (-CtCa1, -CCtb1)]
    points = [np.concatenate(pair) for pair in blocks]
    values = [np.concatenate([-C.T @ b, C @ a]) for a, b in blocks]

    xi = float(Ca1 @ Ca1 + CtCa1 @ CtCa1 + Ctb1 @ Ctb1 + CCtb1 @ CCtb1)
    total = cycle_sum(points, values)
    return CycleWitness(tuple(points), tuple(values), total, xi=xi)


def _graph_points(op, W):
    """Graph points (p, u) with u in op(p), one per row of W.

    Uses the resolvent parameterization p = J(1, w), u = w - p.  Coupled
    blocks are sampled blockwise, which reaches their whole graph even
    when the coupled resolvent itself is unavailable.
    """
    if isinstance(op, Block2x2):
        n1 = op.n1
        P1, U1 = _graph_points(op.A, W[:, :n1])
        P2, U2 = _graph_points(op.B, W[:, n1:])
        P = np.hstack([P1, P2])
        U = np.hstack([U1 - P2 @ op.C, U2 + P1 @ op.C.T])
        return P, U
    try:
        P = resolve(op, 1.0, W)
    except DrslabError as exc:
        raise UnsupportedSampling(f"cannot sample the graph of {type(op).__name__}") from exc
    return P, W - P


def sample_cycles(op, n_max, trials, seed, dim=None):
    """Random search for a cyclic-monotonicity violation.

    Draws ``trials`` tuples of graph points for every cycle length
    n = 2..n_max and returns the first witness whose cycle sum exceeds
    ``TOL_VIOLATION``, scanning lengths in increasing order and trials
    in draw order; returns None when no tuple violates.  ``dim`` fixes
    the ambient dimension for dimension-free operators (default 1).
    """
    if n_max < 2:
        raise ValueError(f"n_max must be at least 2, got {n_max}")
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if dim is not None and op.dim is not None and dim != op.dim:
        raise DimensionMismatch(f"dim={dim} conflicts with operator dimension {op.dim}")
    d = dim if dim is not None else (op.dim if op.dim is not None else 1)
    rng = np.random.default_rng(seed)
    for n in range(2, n_max + 1):
        W = rng.standard_normal((trials * n, d))
        P, U = _graph_points(op, W)
        P = P.reshape(trials, n, d)
        U = U.reshape(trials, n, d)
        sums = np.einsum("tnd,tnd->t", np.roll(P, -1, axis=1) - P, U)
        hits = np.nonzero(sums > TOL_VIOLATION)[0]
        if hits.size:
            t = int(hits[0])
            return CycleWitness(
                tuple(P[t]),
                tuple(U[t]),
                float(sums[t]),
            )
    return None


def drs_map_matrix(problem, dim=None):
    """Dense matrix of the splitting map z -> drs_step(problem, z).

    Columns are the images of the basis vectors; ten seeded probes then
    verify linearity to 1e-10 and raise NotLinear on any mismatch.
    """
    n = dim if dim is not None else problem.dim
    if n is None:
        raise ValueError("problem dimension cannot be inferred; pass dim=")
    if problem.dim is not None and n != problem.dim:
        raise DimensionMismatch(f"dim={n} conflicts with problem dimension {problem.dim}")
    T = drs_step(problem, np.eye(n)).T
    rng = np.random.default_rng(problem.seed)
    for _ in range(10):
        x = rng.standard_normal(n)
        err = float(np.linalg.norm(drs_step(problem, x) - T @ x))
        if err > 1e-10 * max(1.0, float(np.linalg.norm(x))):
            raise NotLinear(f"splitting map deviates from linearity by {err:.3e}")
    return T


def classify_resolvent(T):
    """Classify a nonsingular linear resolvent T by its generator.

    Recovers M = T^{-1} - I, rejects it outright when the symmetric part
    is indefinite (NonMonotone), and otherwise returns

    * "Proximal"     when the symmetry defect is at most 1e-8,
    * "NotProximal"  when it exceeds 1e-6,
    * "Inconclusive" in the gap between the two thresholds.

    One-dimensional inputs are always symmetric, hence "Proximal".
    """
    T = np.asarray(T, dtype=float)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise DimensionMismatch(f"T must be square, got shape {T.shape}")
    try:
        T_inv = np.linalg.inv(T)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrix("resolvent matrix is singular") from exc
    M = T_inv - np.eye(T.shape[0])
    sym = 0.5 * (M + M.T)
    lam = np.linalg.eigvalsh(sym)
    scale = max(1.0, float(np.max(np.abs(lam))))
    if float(lam[0]) < -1e-8 * scale:
        raise NonMonotone(
            f"recovered generator is not monotone: min symmetric eigenvalue {lam[0]:.3e}"
        )
    defect = float(
        np.linalg.norm(M - M.T) / max(1.0, float(np.linalg.norm(M)))
    )
    if defect <= 1e-8:
        verdict = PROXIMAL
    elif defect > 1e-6:
        verdict = NOT_PROXIMAL
    else:
        verdict = INCONCLUSIVE
    return ResolventClassification(M, defect, verdict)


def inverse_preserves_cyclic(M):
    """Check that inverting a symmetric PD matrix keeps it symmetric PD.

    Raises NotSymmetricPD unless M is symmetric to 1e-10 (relative) with
    strictly positive eigenvalues; returns True when M^{-1} passes the
    same test at 1e-8.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"M must be square, got shape {M.shape}")
    defect = float(np.linalg.norm(M - M.T))
    if defect > 1e-10 * max(1.0, float(np.linalg.norm(M))):
        raise NotSymmetricPD(f"M is not symmetric: defect {defect:.3e}")
    lam = np.linalg.eigvalsh(0.5 * (M + M.T))
    if float(lam[0]) <= 0.0:
        raise NotSymmetricPD(f"M is not positive definite: min eigenvalue {lam[0]:.3e}")
    M_inv = np.linalg.inv(M)
    inv_defect = float(np.linalg.norm(M_inv - M_inv.T))
    if inv_defect > 1e-8 * max(1.0, float(np.linalg.norm(M_inv))):
        return False
    inv_lam = np.linalg.eigvalsh(0.5 * (M_inv + M_inv.T))
    return float(inv_lam[0]) > 0.0
