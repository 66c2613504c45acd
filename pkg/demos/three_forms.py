"""One splitting iteration, three equivalent mechanizations.

The classical recursion updates z directly.  The lifted form carries a
4-variable state (u, s, z) through a proximal-point step under a rank-n
degenerate metric.  The reduced form evaluates a single resolvent in
the rescaled coordinate v = z / sqrt(tau).  All three produce the same
z-trajectory; this script runs them side by side and prints the largest
pairwise gap over 100 iterations.
"""

import numpy as np

import drslab as dl

for entry in dl.standard_catalog():
    rng = np.random.default_rng(42)
    z0 = 2.0 * rng.standard_normal(entry.dim)
    report = dl.compare_formulations(entry.problem, z0, iters=100)
    print(
        f"{entry.name:<22} max deviation {report.max_deviation:.3e}   "
        f"reduced path: {report.reduced_path}"
    )

print()
print("The reduced leg assembles (I + K L^{-1} K^T) densely when both")
print("blocks are invertible linear maps ('direct'); otherwise it falls")
print("back to a rescaled splitting step ('drs').  Either way the three")
print("trajectories agree to machine precision.")

# peek at the first few iterates of a nonsmooth problem
entry = dl.catalog_by_name("l1_quadratic_1d")
trajs, _ = dl.formulation_trajectories(entry.problem, [5.0], iters=5)
print("\nfirst iterates from z0 = 5 on the soft-threshold problem:")
header = " ".join(f"{name:>12}" for name in trajs)
print(f"   k {header}")
for k in range(6):
    row = " ".join(f"{trajs[name][k][0]:>12.8f}" for name in trajs)
    print(f"   {k} {row}")
