"""Catalog of maximally monotone operators with exact resolvents.

Every variant evaluates its resolvent

    J(tau, x) = the unique p with  x in p + tau * op(p),

either in closed form or through a single dense linear solve.  Exactness
is the point: it lets the splitting identities implemented downstream be
checked to near machine precision instead of to solver tolerance.

Operators are immutable values.  ``resolve`` accepts a single point
(shape ``(n,)``) or a stack of points (shape ``(m, n)``, one point per
row) and preserves the input layout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NonMonotone,
    NotLinear,
    SingularSystem,
    UnsupportedComposition,
)

# Relative slack for the construction-time PSD checks, measured against
# the largest absolute eigenvalue of the symmetric part.
TOL_PSD = 1e-10
TOL_SYM = 1e-10


def symmetric_part(M):
    """Return (M + M^T) / 2."""
    M = np.asarray(M, dtype=float)
    return 0.5 * (M + M.T)


def _frozen_array(values, ndim, name):
    arr = np.array(values, dtype=float)
    if arr.ndim != ndim:
        raise DimensionMismatch(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    arr.flags.writeable = False
    return arr


def _check_square(M, name):
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {M.shape}")


def _check_monotone(M, name):
    lam = np.linalg.eigvalsh(symmetric_part(M))
    scale = float(np.max(np.abs(lam)))
    if float(lam[0]) < -TOL_PSD * scale:
        raise NonMonotone(
            f"{name} is not monotone: min symmetric eigenvalue {lam[0]:.3e}"
        )


class MonotoneOperator:
    """Base class for the operator variants.

    Subclasses implement ``_resolve`` on row stacks and may override
    ``_graph_residual`` when a sharper membership test than the generic
    resolvent characterization is available.
    """

    #: True when the operator is the subdifferential of a convex function.
    is_subdifferential = False

    @property
    def dim(self):
        """Ambient dimension, or None when the operator works in any."""
        return None

    def _resolve(self, tau, X):
        raise NotImplementedError

    def _graph_residual(self, y, u):
        # u in op(y)  iff  y = J(1, y + u); firm nonexpansiveness makes
        # this residual a lower bound on the graph distance.
        return float(np.linalg.norm(y - self._resolve(1.0, (y + u)[None, :])[0]))

    def to_dict(self):
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class Zero(MonotoneOperator):
    """The zero operator x -> {0}; its resolvent is the identity."""

    def _resolve(self, tau, X):
        return X.copy()

    def to_dict(self):
        return {"type": "zero"}


@dataclass(frozen=True, eq=False)
class ScaledIdentity(MonotoneOperator):
    """x -> alpha * x with alpha >= 0; resolvent is x / (1 + tau*alpha)."""

    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        if not self.alpha >= 0.0:
            raise NonMonotone(f"alpha must be nonnegative, got {self.alpha}")

    def _resolve(self, tau, X):
        return X / (1.0 + tau * self.alpha)

    def _graph_residual(self, y, u):
        return float(np.linalg.norm(self.alpha * y - u))

    def to_dict(self):
        return {"type": "scaled_identity", "alpha": self.alpha}


@dataclass(frozen=True, eq=False)
class LinearRelation(MonotoneOperator):
    """x -> M x for a monotone matrix M (symmetric part PSD).

    The resolvent solves (I + tau*M) p = x densely.
    """

    M: np.ndarray

    def __post_init__(self):
        M = _frozen_array(self.M, 2, "M")
        _check_square(M, "M")
        _check_monotone(M, "M")
        object.__setattr__(self, "M", M)

    @property
    def dim(self):
        return self.M.shape[0]

    def _resolve(self, tau, X):
        A = np.eye(self.dim) + tau * self.M
        try:
            return np.linalg.solve(A, X.T).T
        except np.linalg.LinAlgError as exc:
            raise SingularSystem(f"I + tau*M is singular for tau={tau}") from exc

    def _graph_residual(self, y, u):
        return float(np.linalg.norm(self.M @ y - u))

    def to_dict(self):
        return {"type": "linear", "M": self.M.tolist()}


@dataclass(frozen=True, eq=False)
class Quadratic(MonotoneOperator):
    """Gradient of the convex quadratic 0.5*x^T Q x + q^T x.

    Q must be symmetric PSD.  The resolvent solves
    (I + tau*Q) p = x - tau*q.
    """

    Q: np.ndarray
    q: np.ndarray

    is_subdifferential = True

    def __post_init__(self):
        Q = _frozen_array(self.Q, 2, "Q")
        _check_square(Q, "Q")
        defect = np.linalg.norm(Q - Q.T)
        if defect > TOL_SYM * max(1.0, float(np.linalg.norm(Q))):
            raise ValueError(f"Q must be symmetric, asymmetry {defect:.3e}")
        _check_monotone(Q, "Q")
        q = _frozen_array(self.q, 1, "q")
        if q.shape[0] != Q.shape[0]:
            raise DimensionMismatch(
                f"q has length {q.shape[0]} but Q is {Q.shape[0]}x{Q.shape[0]}"
            )
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "q", q)

    @property
    def dim(self):
        return self.Q.shape[0]

    def _resolve(self, tau, X):
        A = np.eye(self.dim) + tau * self.Q
        try:
            return np.linalg.solve(A, (X - tau * self.q).T).T
        except np.linalg.LinAlgError as exc:
            raise SingularSystem(f"I + tau*Q is singular for tau={tau}") from exc

    def _graph_residual(self, y, u):
        return float(np.linalg.norm(self.Q @ y + self.q - u))

    def to_dict(self):
        return {"type": "prox_quadratic", "Q": self.Q.tolist(), "q": self.q.tolist()}


@dataclass(frozen=True, eq=False)
class L1(MonotoneOperator):
    """Subdifferential of weight * ||x||_1; resolvent is soft thresholding."""

    weight: float

    is_subdifferential = True

    def __post_init__(self):
        object.__setattr__(self, "weight", float(self.weight))
        if not self.weight > 0.0:
            raise ValueError(f"weight must be positive, got {self.weight}")

    def _resolve(self, tau, X):
        t = tau * self.weight
        return np.sign(X) * np.maximum(np.abs(X) - t, 0.0)

    def to_dict(self):
        return {"type": "prox_l1", "weight": self.weight}


@dataclass(frozen=True, eq=False)
class Box(MonotoneOperator):
    """Normal cone of the box [lo, hi]; resolvent clamps componentwise."""

    lo: np.ndarray
    hi: np.ndarray

    is_subdifferential = True

    def __post_init__(self):
        lo = _frozen_array(self.lo, 1, "lo")
        hi = _frozen_array(self.hi, 1, "hi")
        if lo.shape != hi.shape:
            raise DimensionMismatch(f"lo/hi shapes differ: {lo.shape} vs {hi.shape}")
        if np.any(lo > hi):
            raise ValueError("box requires lo <= hi componentwise")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self):
        return self.lo.shape[0]

    def _resolve(self, tau, X):
        return np.clip(X, self.lo, self.hi)

    def to_dict(self):
        return {"type": "prox_box", "lo": self.lo.tolist(), "hi": self.hi.tolist()}


@dataclass(frozen=True, eq=False)
class AffineConstraint(MonotoneOperator):
    """Normal cone of {x : E x = e}; resolvent is the exact projection.

    E must have full row rank (checked by Cholesky of E E^T), so the
    projection x - E^T (E E^T)^{-1} (E x - e) is a plain dense solve.
    """

    E: np.ndarray
    e: np.ndarray

    is_subdifferential = True

    def __post_init__(self):
        E = _frozen_array(self.E, 2, "E")
        e = _frozen_array(self.e, 1, "e")
        if e.shape[0] != E.shape[0]:
            raise DimensionMismatch(
                f"e has length {e.shape[0]} but E has {E.shape[0]} rows"
            )
        gram = E @ E.T
        try:
            np.linalg.cholesky(gram)
        except np.linalg.LinAlgError as exc:
            raise ValueError("E must have full row rank") from exc
        gram.flags.writeable = False
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "_gram", gram)

    @property
    def dim(self):
        return self.E.shape[1]

    def _resolve(self, tau, X):
        resid = X @ self.E.T - self.e
        mult = np.linalg.solve(self._gram, resid.T).T
        return X - mult @ self.E

    def to_dict(self):
        return {"type": "prox_affine", "E": self.E.tolist(), "e": self.e.tolist()}


@dataclass(frozen=True, eq=False)
class Inverse(MonotoneOperator):
    """The inverse relation of another catalog operator.

    Its resolvent never materializes the inverse; it comes from the
    scaled Moreau identity

        J(tau, x) = x - tau * J_inner(1/tau, x/tau).
    """

    inner: MonotoneOperator

    def __post_init__(self):
        if not isinstance(self.inner, MonotoneOperator):
            raise TypeError("inner must be a catalog operator")

    @property
    def dim(self):
        return self.inner.dim

    @property
    def is_subdifferential(self):
        # inverting a subdifferential yields the subdifferential of the
        # convex conjugate, so cyclic monotonicity is preserved
        return self.inner.is_subdifferential

    def _resolve(self, tau, X):
        return X - tau * self.inner._resolve(1.0 / tau, X / tau)

    def _graph_residual(self, y, u):
        # (y, u) in gra(inner^{-1})  iff  (u, y) in gra(inner)
        return self.inner._graph_residual(u, y)

    def to_dict(self):
        return {"type": "inverse", "inner": self.inner.to_dict()}


@dataclass(frozen=True, eq=False)
class Block2x2(MonotoneOperator):
    """Monotone + skew coupling of two blocks:

        S(x1, x2) = (A x1 - C^T x2,  C x1 + B x2)

    with A acting on R^{n1}, B on R^{n2} and C of shape (n2, n1).  With
    C = 0 the resolvent splits into the blockwise resolvents; otherwise it
    is a dense block solve and requires both A and B to be
    linear-representable, anything else raises UnsupportedComposition.
    """

    A: MonotoneOperator
    B: MonotoneOperator
    C: np.ndarray

    def __post_init__(self):
        C = _frozen_array(self.C, 2, "C")
        object.__setattr__(self, "C", C)
        n2, n1 = C.shape
        if self.A.dim is not None and self.A.dim != n1:
            raise DimensionMismatch(
                f"A acts on dimension {self.A.dim} but C has {n1} columns"
            )
        if self.B.dim is not None and self.B.dim != n2:
            raise DimensionMismatch(
                f"B acts on dimension {self.B.dim} but C has {n2} rows"
            )

    @property
    def n1(self):
        return self.C.shape[1]

    @property
    def n2(self):
        return self.C.shape[0]

    @property
    def dim(self):
        return self.n1 + self.n2

    @property
    def is_subdifferential(self):
        if np.any(self.C):
            return False
        return self.A.is_subdifferential and self.B.is_subdifferential

    def _coupled_matrix(self):
        cached = getattr(self, "_smat", None)
        if cached is None:
            try:
                MA = linear_matrix(self.A, self.n1)
                MB = linear_matrix(self.B, self.n2)
            except NotLinear as exc:
                raise UnsupportedComposition(
                    "coupled resolvent needs linear-representable blocks"
                ) from exc
            cached = np.block([[MA, -self.C.T], [self.C, MB]])
            cached.flags.writeable = False
            object.__setattr__(self, "_smat", cached)
        return cached

    def _resolve(self, tau, X):
        if not np.any(self.C):
            # zero coupling: the block system splits exactly
            n1 = self.n1
            left = self.A._resolve(tau, X[:, :n1])
            right = self.B._resolve(tau, X[:, n1:])
            return np.concatenate([left, right], axis=1)
        S = self._coupled_matrix()
        A = np.eye(self.dim) + tau * S
        try:
            return np.linalg.solve(A, X.T).T
        except np.linalg.LinAlgError as exc:
            raise SingularSystem("coupled block system is singular") from exc

    def _graph_residual(self, y, u):
        n1 = self.n1
        y1, y2 = y[:n1], y[n1:]
        u1, u2 = u[:n1], u[n1:]
        ra = self.A._graph_residual(y1, u1 + self.C.T @ y2)
        rb = self.B._graph_residual(y2, u2 - self.C @ y1)
        return max(ra, rb)

    def to_dict(self):
        return {
            "type": "block2x2",
            "A": self.A.to_dict(),
            "B": self.B.to_dict(),
            "C": self.C.tolist(),
        }


def linear_matrix(op, n):
    """Dense matrix M with op(x) = M x, or raise NotLinear.

    Dimension-free variants (Zero, ScaledIdentity) are promoted to n x n.
    """
    if op.dim is not None and op.dim != n:
        raise DimensionMismatch(f"operator acts on dimension {op.dim}, not {n}")
    if isinstance(op, Zero):
        return np.zeros((n, n))
    if isinstance(op, ScaledIdentity):
        return op.alpha * np.eye(n)
    if isinstance(op, LinearRelation):
        return np.array(op.M)
    if isinstance(op, Quadratic):
        if np.any(op.q):
            raise NotLinear("quadratic with a nonzero linear term is affine, not linear")
        return np.array(op.Q)
    if isinstance(op, Inverse):
        inner = linear_matrix(op.inner, n)
        try:
            return np.linalg.inv(inner)
        except np.linalg.LinAlgError as exc:
            raise NotLinear("inverse of a singular matrix is a relation, not a map") from exc
    if isinstance(op, Block2x2):
        MA = linear_matrix(op.A, op.n1)
        MB = linear_matrix(op.B, op.n2)
        return np.block([[MA, -op.C.T], [op.C, MB]])
    raise NotLinear(f"{type(op).__name__} is not linear-representable")


def _rows(x):
    X = np.atleast_1d(np.asarray(x, dtype=float))
    if X.ndim == 1:
        return X[None, :], True
    if X.ndim == 2:
        return X, False
    raise DimensionMismatch(f"points must be 1-D or 2-D, got shape {X.shape}")


def _check_point_dim(op, n):
    if op.dim is not None and op.dim != n:
        raise DimensionMismatch(
            f"point has dimension {n} but operator expects {op.dim}"
        )


def resolve(op, tau, x):
    """Evaluate p = (I + tau*op)^{-1} x.

    Parameters
    ----------
    op : MonotoneOperator
    tau : positive float
    x : array_like, shape (n,) or (m, n)
        A point, or a stack of points (one per row).

    Returns
    -------
    ndarray with the same layout as ``x``.
    """
    tau = float(tau)
    if not tau > 0.0:
        raise ValueError(f"tau must be positive, got {tau}")
    X, single = _rows(x)
    _check_point_dim(op, X.shape[1])
    P = op._resolve(tau, X)
    return P[0] if single else P


def graph_residual(op, y, u):
    """Numeric residual of the membership u in op(y); zero means member."""
    y = np.atleast_1d(np.asarray(y, dtype=float))
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if y.ndim != 1 or y.shape != u.shape:
        raise DimensionMismatch(f"y and u must be vectors of equal length, got {y.shape} and {u.shape}")
    _check_point_dim(op, y.shape[0])
    return op._graph_residual(y, u)


def graph_member(op, y, u, tol=1e-8):
    """True when u lies in op(y) up to tol."""
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    return graph_residual(op, y, u) <= tol


def moreau_residual(op, tau, x):
    """Defect of the identity J(tau, x) + tau * J_inv(1/tau, x/tau) = x."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    p = resolve(op, tau, x)
    q = resolve(Inverse(op), 1.0 / float(tau), x / float(tau))
    return float(np.linalg.norm(p + float(tau) * q - x))


_DECODERS = {
    "zero": lambda d: Zero(),
    "scaled_identity": lambda d: ScaledIdentity(d["alpha"]),
    "linear": lambda d: LinearRelation(d["M"]),
    "prox_quadratic": lambda d: Quadratic(d["Q"], d["q"]),
    "prox_l1": lambda d: L1(d["weight"]),
    "prox_box": lambda d: Box(d["lo"], d["hi"]),
    "prox_affine": lambda d: AffineConstraint(d["E"], d["e"]),
    "inverse": lambda d: Inverse(operator_from_dict(d["inner"])),
    "block2x2": lambda d: Block2x2(
        operator_from_dict(d["A"]), operator_from_dict(d["B"]), d["C"]
    ),
}


def operator_from_dict(data):
    """Rebuild an operator from its tagged-dict form."""
    try:
        tag = data["type"]
    except (TypeError, KeyError):
        raise ValueError("operator document needs a 'type' tag") from None
    try:
        decoder = _DECODERS[tag]
    except KeyError:
        raise ValueError(f"unknown operator type {tag!r}") from None
    try:
        return decoder(data)
    except KeyError as exc:
        raise ValueError(f"operator {tag!r} is missing field {exc}") from None


def operator_to_dict(op):
    """Tagged-dict form of an operator, JSON-ready."""
    return op.to_dict()
