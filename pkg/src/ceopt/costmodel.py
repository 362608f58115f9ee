"""Agent cost functions, their minimizer sets, and exact affine projection.

Each agent owns a convex differentiable cost; the algorithm only ever touches
it through evaluation, gradients, and Euclidean projection onto its minimizer
set. The quadratic family ||A x - b||^2 with full-row-rank A is the required
concrete form: its minimizer set is the affine subspace {x : A x = b} and the
projection has the closed form

    proj(x) = (I - A^T (A A^T)^-1 A) x + A^T (A A^T)^-1 b

so the projection matrix/offset pair is precomputed once per cost.
"""

from __future__ import annotations

import abc

import numpy as np

from ceopt import _kernels
from ceopt.errors import SingularProjectionError

# reject (A A^T)^-1 when the smallest singular value of A A^T is below
# RANK_RTOL times the largest
RANK_RTOL = 1e-12


class CostFunction(abc.ABC):
    """Contract every agent cost must satisfy.

    Implementations must keep evaluate/gradient/project_to_min_set mutually
    consistent: evaluating at a projected point returns min_value and the
    gradient vanishes there.
    """

    @property
    @abc.abstractmethod
    def dimension(self) -> int:
        """Dimension d of the decision variable."""

    @property
    @abc.abstractmethod
    def min_value(self) -> float:
        """Minimum of the cost over R^d."""

    @abc.abstractmethod
    def evaluate(self, x: np.ndarray) -> float: ...

    @abc.abstractmethod
    def gradient(self, x: np.ndarray) -> np.ndarray: ...

    @abc.abstractmethod
    def project_to_min_set(self, x: np.ndarray) -> np.ndarray:
        """Nearest point (Euclidean) of the cost's minimizer set."""


class QuadraticCost(CostFunction):
    """||A x - b||^2 with A (n_i x d) of full row rank.

    Full row rank makes A x = b consistent, so the minimum value is exactly 0
    and the minimizer set is nonempty.
    """

    def __init__(self, a_matrix, b_vector):
        a = np.ascontiguousarray(a_matrix, dtype=np.float64)
        b = np.ascontiguousarray(b_vector, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"a_matrix must be 2-D and nonempty, got shape {a.shape}")
        if b.shape != (a.shape[0],):
            raise ValueError(
                f"b_vector shape {b.shape} does not match {a.shape[0]} rows of a_matrix"
            )
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("a_matrix and b_vector must be finite")
        self.a_matrix = a
        self.b_vector = b

        aat = a @ a.T
        sv = np.linalg.svd(aat, compute_uv=False)
        if sv[0] <= 0.0 or sv[-1] < RANK_RTOL * sv[0]:
            raise SingularProjectionError(
                f"a_matrix is rank deficient (singular values of A A^T span "
                f"[{sv[-1]:.3e}, {sv[0]:.3e}])"
            )
        # proj(x) = proj_mat @ x + proj_off
        pinv_rows = np.linalg.solve(aat, a)  # (A A^T)^-1 A
        self.proj_mat = np.ascontiguousarray(np.eye(a.shape[1]) - a.T @ pinv_rows)
        self.proj_off = np.ascontiguousarray(a.T @ np.linalg.solve(aat, b))

    @property
    def dimension(self) -> int:
        return self.a_matrix.shape[1]

    @property
    def min_value(self) -> float:
        return 0.0

    def _check_dim(self, x) -> np.ndarray:
        x = np.ascontiguousarray(x, dtype=np.float64)
        if x.shape != (self.dimension,):
            raise ValueError(f"expected a vector of length {self.dimension}, got shape {x.shape}")
        return x

    def evaluate(self, x) -> float:
        x = self._check_dim(x)
        r = self.a_matrix @ x - self.b_vector
        return float(r @ r)

    def gradient(self, x) -> np.ndarray:
        x = self._check_dim(x)
        return 2.0 * (self.a_matrix.T @ (self.a_matrix @ x - self.b_vector))

    def project_to_min_set(self, x) -> np.ndarray:
        x = self._check_dim(x)
        return _kernels.affine_project(x, self.proj_mat, self.proj_off)

    def __repr__(self):
        return f"QuadraticCost(a_matrix={self.a_matrix.tolist()}, b_vector={self.b_vector.tolist()})"


def _common_dimension(costs) -> int:
    costs = list(costs)
    if not costs:
        raise ValueError("need at least one cost")
    d = costs[0].dimension
    for c in costs[1:]:
        if c.dimension != d:
            raise ValueError("costs have mixed dimensions")
    return d


def lipschitz_constant(costs) -> float:
    """Smallest mu with mu-Lipschitz gradients for every cost in the list.

    For quadratics the gradient Jacobian is the constant Hessian 2 A^T A, so
    mu is the largest Hessian eigenvalue over the list.
    """
    costs = list(costs)
    _common_dimension(costs)
    mu = 0.0
    for c in costs:
        hess = 2.0 * (c.a_matrix.T @ c.a_matrix)
        mu = max(mu, float(np.linalg.eigvalsh(hess)[-1]))
    return mu


def strong_convexity_constant(costs) -> float:
    """Strong-convexity modulus of the average cost; 0 if it is not strongly convex."""
    costs = list(costs)
    d = _common_dimension(costs)
    avg_hess = np.zeros((d, d))
    for c in costs:
        avg_hess += 2.0 * (c.a_matrix.T @ c.a_matrix)
    avg_hess /= len(costs)
    eigs = np.linalg.eigvalsh(avg_hess)
    if eigs[-1] <= 0.0 or eigs[0] < RANK_RTOL * eigs[-1]:
        return 0.0
    return float(eigs[0])
