"""Side-by-side iteration of the three equivalent splitting forms.

The classical recursion, the lifted 4-variable proximal-point form, and
the reduced resolvent in v = z / sqrt(tau) coordinates realize the same
z-trajectory.  ``compare_formulations`` runs all three from one start
and reports the largest pairwise deviation over the whole trajectory.

The reduced leg is evaluated by dense assembly whenever both blocks are
invertible linear maps (a genuinely independent computation); otherwise
it falls back to the rescaled one-step evaluation and the report says
so in ``reduced_path``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blocks import BlockSystem, coupling_gram, reduced_resolvent_via_drs
from .drs import drs_step
from .errors import DimensionMismatch, DrslabError
from .ppa import PpaSystem, initial_state, ppa_step

RECURSION = "recursion"
LIFTED = "lifted"
REDUCED = "reduced"

REDUCED_DIRECT = "direct"
REDUCED_FALLBACK = "drs"


@dataclass(frozen=True, eq=False)
class EquivalenceReport:
    """Pairwise trajectory deviations between the three formulations."""

    max_deviation: float
    iters: int
    reduced_path: str
    pairwise: dict

    def to_dict(self):
        return {
            "max_deviation": self.max_deviation,
            "iters": self.iters,
            "reduced_path": self.reduced_path,
            "pairwise": dict(self.pairwise),
        }


def formulation_trajectories(problem, z0, iters):
    """z-trajectories (iters+1 rows each) of the three formulations.

    Returns (trajectories, reduced_path) where trajectories maps the
    formulation name to an array of shape (iters+1, n) starting at z0.
    """
    z0 = np.atleast_1d(np.asarray(z0, dtype=float))
    if z0.ndim != 1:
        raise DimensionMismatch(f"z0 must be a vector, got shape {z0.shape}")
    n = z0.shape[0]
    if problem.dim is not None and problem.dim != n:
        raise DimensionMismatch(
            f"z0 has dimension {n} but the problem expects {problem.dim}"
        )
    if iters < 1:
        raise ValueError(f"iters must be at least 1, got {iters}")
    sys_blocks = BlockSystem(problem.A, problem.B, problem.tau, n)
    sys_ppa = PpaSystem(problem.A, problem.B, problem.tau, n)

    # classical recursion
    zs = np.empty((iters + 1, n))
    zs[0] = z0
    for k in range(iters):
        zs[k + 1] = drs_step(problem, zs[k])

    # lifted 4-variable form, z component
    zl = np.empty((iters + 1, n))
    zl[0] = z0
    state = initial_state(sys_ppa, z0)
    for k in range(iters):
        state = ppa_step(sys_ppa, state)
        zl[k + 1] = state.z

    # reduced form in v coordinates
    rt = sys_blocks.root_tau
    zr = np.empty((iters + 1, n))
    zr[0] = z0
    v = z0 / rt
    try:
        W = coupling_gram(sys_blocks)
        step_matrix = np.eye(n) + W
        reduced_path = REDUCED_DIRECT

        def reduced_step(v):
            return np.linalg.solve(step_matrix, v)

    except (DrslabError, np.linalg.LinAlgError):
        reduced_path = REDUCED_FALLBACK

        def reduced_step(v):
            return reduced_resolvent_via_drs(sys_blocks, v)

    for k in range(iters):
        v = reduced_step(v)
        zr[k + 1] = rt * v

    return {RECURSION: zs, LIFTED: zl, REDUCED: zr}, reduced_path


def compare_formulations(problem, z0, iters=100):
    """Run the three formulations and report the max pairwise deviation."""
    trajs, reduced_path = formulation_trajectories(problem, z0, iters)
    names = (RECURSION, LIFTED, REDUCED)
    pairwise = {}
    worst = 0.0
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            dev = float(np.max(np.linalg.norm(trajs[a] - trajs[b], axis=1)))
            pairwise[f"{a}-{b}"] = dev
            worst = max(worst, dev)
    return EquivalenceReport(
        max_deviation=worst,
        iters=iters,
        reduced_path=reduced_path,
        pairwise=pairwise,
    )
