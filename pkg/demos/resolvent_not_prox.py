"""The splitting map is always a resolvent, but rarely a proximal map.

Any firmly nonexpansive map T is the resolvent of the monotone operator
M = T^{-1} - I.  T is additionally a proximal mapping exactly when M is
a subdifferential, which for linear M means symmetry.  In dimension one
every 1x1 matrix is symmetric, so every scalar splitting map is
proximal.  From dimension two on, a skew coupling breaks symmetry: the
splitting map of A = [[0, -1], [1, 0]], B = 0 recovers the skew
generator itself.
"""

import numpy as np

import drslab as dl

print("scalar problems: always proximal")
for name in ("zero_zero_1d", "identity_pair_1d"):
    entry = dl.catalog_by_name(name)
    T = dl.drs_map_matrix(entry.problem, dim=1)
    result = dl.classify_resolvent(T)
    print(f"  {name:<18} T = {T[0, 0]:.3f}   verdict: {result.verdict}")

print("\nthe 2-D skew problem: a resolvent that is not a prox")
entry = dl.catalog_by_name("skew_zero_2d")
T = dl.drs_map_matrix(entry.problem, dim=2)
result = dl.classify_resolvent(T)
print(f"  splitting map T =\n{np.array_str(T, precision=3)}")
print(f"  recovered generator M = T^-1 - I =\n{np.array_str(result.recovered_M, precision=3)}")
print(f"  symmetry defect ||M - M^T|| / ||M|| = {result.symmetry_defect:.3f}")
print(f"  verdict: {result.verdict}")

print("\nwhy symmetry matters: M's graph fails cyclic monotonicity")
witness = dl.sample_cycles(dl.LinearRelation(result.recovered_M), n_max=6, trials=1000, seed=7)
if witness is None:
    print("  no violation found (unexpected)")
else:
    print(f"  cycle of length {witness.n} with positive sum {witness.cycle_sum:.4f}")
    print("  no convex function has such a cycle in its subdifferential graph,")
    print("  so T cannot be prox of any function.")

print("\ncontrast: a random 5-D problem with symmetric PSD blocks stays proximal")
rng = np.random.default_rng(1)
G = rng.standard_normal((5, 5))
sym_problem = dl.DrsProblem(
    A=dl.LinearRelation(G @ G.T / 5 + 0.2 * np.eye(5)),
    B=dl.ScaledIdentity(0.5),
    tau=0.8,
)
result = dl.classify_resolvent(dl.drs_map_matrix(sym_problem))
print(f"  symmetry defect {result.symmetry_defect:.2e}   verdict: {result.verdict}")
