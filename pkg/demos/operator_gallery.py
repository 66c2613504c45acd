"""Tour of the operator catalog: resolvents, graphs, and inversion.

Every operator variant exposes the same three primitives: ``resolve``
evaluates the resolvent J(tau, x) = (I + tau*op)^{-1} x, ``graph_member``
checks whether a pair (y, u) lies on the graph, and ``Inverse`` wraps an
operator so that its resolvent comes out of the scaled complement
identity instead of a direct formula.
"""

import numpy as np

import drslab as dl


def show(label, value):
    print(f"  {label:<38} {value}")


print("soft threshold (L1 weight 1, tau 1):")
x = np.array([1.5, -0.3, 0.8])
show("resolve at [1.5, -0.3, 0.8]", dl.resolve(dl.L1(1.0), 1.0, x))

print("\nbox projection ignores the step size:")
box = dl.Box([-1.0, -1.0, -1.0], [1.0, 1.0, 1.0])
show("tau = 0.1", dl.resolve(box, 0.1, np.array([2.0, 0.5, -3.0])))
show("tau = 100", dl.resolve(box, 100.0, np.array([2.0, 0.5, -3.0])))

print("\nlinear relation with the skew quarter-turn generator:")
skew = dl.LinearRelation(np.array([[0.0, -1.0], [1.0, 0.0]]))
p = dl.resolve(skew, 1.0, np.array([1.0, 0.0]))
show("resolve at [1, 0]", p)
show("graph residual of the output pair", dl.graph_residual(skew, p, np.array([1.0, 0.0]) - p))

print("\ngraph membership for the subdifferential of |.|:")
l1 = dl.L1(1.0)
show("u = 0.7 at y = 0 (inside [-1, 1])", dl.graph_member(l1, np.array([0.0]), np.array([0.7])))
show("u = 1.2 at y = 0 (outside)", dl.graph_member(l1, np.array([0.0]), np.array([1.2])))

print("\ninversion via the scaled complement identity:")
inv = dl.Inverse(dl.ScaledIdentity(2.0))
show("J_1 of the inverse of 2I at 3", dl.resolve(inv, 1.0, np.array([3.0])))
show("closed form 3 / (1 + 1/2)", 3.0 / 1.5)

print("\nresolvent-sum identity, sampled:")
rng = np.random.default_rng(0)
worst = 0.0
for op in (l1, box, skew, dl.Quadratic(np.eye(2), np.zeros(2))):
    d = op.dim if op.dim is not None else 3
    for _ in range(50):
        worst = max(worst, dl.moreau_residual(op, 0.7, rng.standard_normal(d)))
show("max residual over 200 samples", f"{worst:.3e}")
