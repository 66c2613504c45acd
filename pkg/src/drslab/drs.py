"""Douglas-Rachford splitting: step, relaxed step, driver, certificate.

The governing update for a pair (A, B) with step size tau is

    x+ = J_B(tau, z)
    w+ = J_A(tau, 2*x+ - z)
    z+ = z - x+ + w+

and the relaxed variant blends z+ with z:  (1-gamma)*z + gamma*z+.
For gamma in (0, 2) the relaxed map is gamma/2-averaged; gamma = 2 is
accepted but only nonexpansive, so the driver warns about it.
"""

from __future__ import annotations

import io
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch
from .operators import MonotoneOperator, graph_member, operator_from_dict, resolve

CONVERGED = "converged"
MAX_ITERS = "max_iters"

DEFAULT_STOP_TOL = 1e-10
DEFAULT_MAX_ITERS = 100_000


def splitting_pass(A, B, tau, z):
    """One raw splitting update; returns (z_next, x, w).

    Accepts a single point or a row stack, like ``resolve``.
    """
    x = resolve(B, tau, z)
    w = resolve(A, tau, 2.0 * x - z)
    return z - x + w, x, w


@dataclass(frozen=True, eq=False)
class DrsProblem:
    """Immutable problem description consumed by the engine."""

    A: MonotoneOperator
    B: MonotoneOperator
    tau: float = 1.0
    gamma: float = 1.0
    max_iters: int = DEFAULT_MAX_ITERS
    stop_tol: float = DEFAULT_STOP_TOL
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "tau", float(self.tau))
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "max_iters", int(self.max_iters))
        object.__setattr__(self, "stop_tol", float(self.stop_tol))
        object.__setattr__(self, "seed", int(self.seed))
        if not self.tau > 0.0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        if not 0.0 < self.gamma <= 2.0:
            raise ValueError(f"gamma must lie in (0, 2], got {self.gamma}")
        if self.gamma == 2.0:
            warnings.warn(
                "gamma = 2 is only nonexpansive, not averaged; convergence is not guaranteed",
                stacklevel=2,
            )
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be at least 1, got {self.max_iters}")
        if not self.stop_tol > 0.0:
            raise ValueError(f"stop_tol must be positive, got {self.stop_tol}")
        if self.seed < 0:
            raise ValueError(f"seed must be nonnegative, got {self.seed}")
        da, db = self.A.dim, self.B.dim
        if da is not None and db is not None and da != db:
            raise DimensionMismatch(f"A acts on dimension {da} but B on {db}")

    @property
    def dim(self):
        """Intrinsic dimension, or None when both operators are dimension-free."""
        return self.A.dim if self.A.dim is not None else self.B.dim

    def to_dict(self):
        return {
            "A": self.A.to_dict(),
            "B": self.B.to_dict(),
            "tau": self.tau,
            "gamma": self.gamma,
            "max_iters": self.max_iters,
            "stop_tol": self.stop_tol,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            operator_from_dict(data["A"]),
            operator_from_dict(data["B"]),
            tau=data.get("tau", 1.0),
            gamma=data.get("gamma", 1.0),
            max_iters=data.get("max_iters", DEFAULT_MAX_ITERS),
            stop_tol=data.get("stop_tol", DEFAULT_STOP_TOL),
            seed=data.get("seed", 0),
        )


@dataclass(frozen=True, eq=False)
class TrajectoryRecord:
    """Dense record of a splitting run.

    Row k (1-based, contiguous) stores the new iterate z^k together with
    the intermediates x^k = J_B(tau, z^{k-1}), w^k = J_A(tau, 2x^k - z^{k-1})
    and the step residual ||z^k - z^{k-1}||.
    """

    k: np.ndarray
    z: np.ndarray
    x: np.ndarray
    w: np.ndarray
    residual: np.ndarray
    status: str

    def __post_init__(self):
        for name in ("k", "z", "x", "w", "residual"):
            arr = np.asarray(getattr(self, name))
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    def __len__(self):
        return int(self.k.shape[0])

    @property
    def final_z(self):
        return self.z[-1]

    @property
    def final_x(self):
        return self.x[-1]

    def to_csv(self, target):
        """Write rows as CSV with header k,z*,x*,w*,residual at full precision."""
        if isinstance(target, (str, bytes)) or hasattr(target, "__fspath__"):
            with open(target, "w", newline="") as fh:
                self.to_csv(fh)
            return
        n = self.z.shape[1]
        cols = (
            ["k"]
            + [f"z{i}" for i in range(n)]
            + [f"x{i}" for i in range(n)]
            + [f"w{i}" for i in range(n)]
            + ["residual"]
        )
        target.write(",".join(cols) + "\n")
        for i in range(len(self)):
            vals = np.concatenate([self.z[i], self.x[i], self.w[i], [self.residual[i]]])
            row = [str(int(self.k[i]))] + [format(v, ".17g") for v in vals]
            target.write(",".join(row) + "\n")

    def to_csv_string(self):
        buf = io.StringIO()
        self.to_csv(buf)
        return buf.getvalue()

    def to_dict(self):
        return {
            "status": self.status,
            "k": self.k.tolist(),
            "z": self.z.tolist(),
            "x": self.x.tolist(),
            "w": self.w.tolist(),
            "residual": self.residual.tolist(),
        }


def drs_step(problem, z):
    """One plain splitting step for the problem's (A, B, tau)."""
    z_next, _, _ = splitting_pass(problem.A, problem.B, problem.tau, z)
    return z_next


def relaxed_step(problem, z):
    """One relaxed step (1-gamma)*z + gamma*drs_step(z)."""
    z = np.asarray(z, dtype=float)
    z_next = drs_step(problem, z)
    if problem.gamma == 1.0:
        return z_next
    return (1.0 - problem.gamma) * z + problem.gamma * z_next


def run(problem, z0):
    """Iterate the relaxed step from z0 until the residual test or max_iters.

    Stops when ||z^{k+1} - z^k|| <= stop_tol (status "converged") or
    after max_iters steps (status "max_iters").  The residual is not
    monotone in general and is recorded as observed.
    """
    z = np.atleast_1d(np.asarray(z0, dtype=float))
    if z.ndim != 1:
        raise DimensionMismatch(f"z0 must be a vector, got shape {z.shape}")
    if problem.dim is not None and z.shape[0] != problem.dim:
        raise DimensionMismatch(
            f"z0 has dimension {z.shape[0]} but the problem expects {problem.dim}"
        )
    ks, zs, xs, ws, rs = [], [], [], [], []
    status = MAX_ITERS
    for k in range(1, problem.max_iters + 1):
        z_tilde, x, w = splitting_pass(problem.A, problem.B, problem.tau, z)
        if problem.gamma == 1.0:
            z_next = z_tilde
        else:
            z_next = (1.0 - problem.gamma) * z + problem.gamma * z_tilde
        res = float(np.linalg.norm(z_next - z))
        ks.append(k)
        zs.append(z_next)
        xs.append(x)
        ws.append(w)
        rs.append(res)
        z = z_next
        if res <= problem.stop_tol:
            status = CONVERGED
            break
    return TrajectoryRecord(
        k=np.array(ks, dtype=int),
        z=np.vstack(zs),
        x=np.vstack(xs),
        w=np.vstack(ws),
        residual=np.array(rs, dtype=float),
        status=status,
    )


def solution_certificate(problem, z, tol):
    """Check that x = J_B(tau, z) solves 0 in A(x) + B(x).

    With u = (z - x) / tau, verifies u in B(x) and -u in A(x) through
    graph membership at the given tolerance.
    """
    z = np.atleast_1d(np.asarray(z, dtype=float))
    x = resolve(problem.B, problem.tau, z)
    u = (z - x) / problem.tau
    return graph_member(problem.B, x, u, tol) and graph_member(problem.A, x, -u, tol)
