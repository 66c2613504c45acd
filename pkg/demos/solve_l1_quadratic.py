"""End-to-end solve of min |x| + 0.5*x^2 - x by splitting.

The subdifferential inclusion 0 in sign(x) + x - 1 is satisfied at
x = 0: the interval sign(0) - 1 = [-2, 0] contains zero.  The driver
iterates until the step residual drops below 1e-10, then the
certificate re-checks the two graph inclusions at the fixed point.
"""

import drslab as dl

entry = dl.catalog_by_name("l1_quadratic_1d")
traj = dl.run(entry.problem, [5.0])

print(f"status      : {traj.status} after {len(traj)} iterations")
print(f"final z     : {traj.final_z[0]: .12e}")
print(f"final x     : {traj.final_x[0]: .12e}   (analytic minimizer: 0)")

certified = dl.solution_certificate(entry.problem, traj.final_z, 1e-8)
print(f"certificate : {'pass' if certified else 'fail'}")

print("\nresidual trace (not monotone in general, geometric here):")
for k in range(0, len(traj), 5):
    print(f"  k = {int(traj.k[k]):>3}   ||z+ - z|| = {traj.residual[k]:.3e}")

print("\ntrajectory rows export as CSV; first three lines:")
for line in traj.to_csv_string().splitlines()[:3]:
    print(f"  {line}")
