"""Checkable theory: redundancy verification and convergence-rate constants.

Everything here is a pure function of the honest costs and the network
parameters (n, f):

  * 2f-redundancy: every subset of at least n-2f honest agents must share the
    aggregate minimizer set of all honest agents (checked by brute-force
    subset enumeration; minimizer sets of quadratics are affine).
  * the fault-tolerance margin  alpha = (1 - sqrt(1 + lam/mu))^2 - f/(n-f);
    alpha > 0 is the sufficient condition for geometric convergence.
  * the contraction constants  beta = (lam(n-f) - mu f)^2 / (2 mu^2 (n-f)) - 2f
    and  rho(eta) = 1 - 2 beta eta + 4 |H|^3 eta^2,  with the step-size window
    2 |H|^3 eta < beta.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ceopt.costmodel import lipschitz_constant, strong_convexity_constant
from ceopt.errors import ScaleError

AFFINE_TOL = 1e-9
MAX_SUBSETS = 10**6


class _AffineMinSet:
    """Minimizer set of a sum of quadratics: a point plus a null-space basis."""

    def __init__(self, costs):
        d = costs[0].dimension
        normal = np.zeros((d, d))
        rhs = np.zeros(d)
        for c in costs:
            normal += c.a_matrix.T @ c.a_matrix
            rhs += c.a_matrix.T @ c.b_vector
        self.normal = normal
        self.rhs = rhs
        self.scale = AFFINE_TOL * (1.0 + np.linalg.norm(normal) + np.linalg.norm(rhs))
        # normal equations are always consistent (rhs lies in range(normal))
        self.point = np.linalg.lstsq(normal, rhs, rcond=None)[0]
        w, vecs = np.linalg.eigh(normal)
        null_mask = w <= AFFINE_TOL * max(w[-1], 0.0)
        self.null_basis = vecs[:, null_mask]

    def contains_point(self, x) -> bool:
        return np.linalg.norm(self.normal @ x - self.rhs) <= self.scale

    def contains_directions(self, basis) -> bool:
        if basis.shape[1] == 0:
            return True
        return np.linalg.norm(self.normal @ basis) <= self.scale

    def equals(self, other: "_AffineMinSet") -> bool:
        if self.null_basis.shape[1] != other.null_basis.shape[1]:
            return False
        return (
            self.contains_point(other.point)
            and other.contains_point(self.point)
            and self.contains_directions(other.null_basis)
            and other.contains_directions(self.null_basis)
        )


def check_2f_redundancy(costs: dict, n: int, f: int) -> bool:
    """Brute-force Definition check: all subsets of size >= n-2f share H's minimizer set.

    Intended for desk scale; raises ScaleError beyond ~10^6 subsets.
    """
    ids = sorted(costs)
    h = len(ids)
    if h < n - f:
        raise ValueError(f"|H|={h} violates |H| >= n-f = {n - f}")
    min_size = n - 2 * f
    if min_size < 1:
        raise ValueError(f"n - 2f = {min_size} must be at least 1")
    total = sum(math.comb(h, k) for k in range(min_size, h + 1))
    if total > MAX_SUBSETS:
        raise ScaleError(f"{total} subsets exceed the brute-force cap of {MAX_SUBSETS}")
    full = _AffineMinSet([costs[i] for i in ids])
    for k in range(min_size, h):
        for subset in itertools.combinations(ids, k):
            if not _AffineMinSet([costs[i] for i in subset]).equals(full):
                return False
    return True


def fault_tolerance_margin(lam: float, mu: float, n: int, f: int) -> float:
    """alpha = (1 - sqrt(1 + lam/mu))^2 - f/(n-f); positive alpha is the sufficient condition."""
    if mu <= 0:
        raise ValueError(f"mu must be positive, got {mu}")
    if not 0 <= lam <= mu:
        raise ValueError(f"need 0 <= lam <= mu, got lam={lam}, mu={mu}")
    if n <= f:
        raise ValueError(f"need n > f, got n={n}, f={f}")
    return (1.0 - math.sqrt(1.0 + lam / mu)) ** 2 - f / (n - f)


def contraction_constants(lam: float, mu: float, n: int, f: int, h_size: int):
    """(beta, eta_max, eta_opt); values are returned even when beta <= 0.

    eta_max is the open upper end of the step-size window 2 |H|^3 eta < beta;
    eta_opt = beta / (4 |H|^3) minimizes the quadratic rho(eta).
    """
    beta = (lam * (n - f) - mu * f) ** 2 / (2.0 * mu**2 * (n - f)) - 2.0 * f
    alpha = fault_tolerance_margin(lam, mu, n, f)
    via_alpha = alpha * (alpha / 2.0 + 2.0 * math.sqrt(1.0 + lam / mu)) * (n - f)
    if abs(beta - via_alpha) > 1e-9 * max(1.0, abs(beta)):
        raise ArithmeticError(
            f"contraction-constant identity violated: {beta} vs {via_alpha}"
        )
    eta_max = beta / (2.0 * h_size**3)
    eta_opt = beta / (4.0 * h_size**3)
    return beta, eta_max, eta_opt


def contraction_factor(beta: float, h_size: int, eta: float) -> float:
    """rho = 1 - 2 beta eta + 4 |H|^3 eta^2."""
    if eta < 0:
        raise ValueError(f"eta must be nonnegative, got {eta}")
    return 1.0 - 2.0 * beta * eta + 4.0 * h_size**3 * eta**2


@dataclass
class TheoryReport:
    """Convergence-theory constants for one instance."""

    n: int
    f: int
    h_size: int
    mu: float
    lam: float
    alpha: float
    beta: float
    eta_max: float
    eta_opt: float
    redundancy_holds: bool | None

    def rho_at(self, eta: float) -> float:
        return contraction_factor(self.beta, self.h_size, eta)

    def eta_satisfies_bound(self, eta: float) -> bool:
        """Whether 2 |H|^3 eta < beta (the step-size condition for rho < 1)."""
        return 2.0 * self.h_size**3 * eta < self.beta

    def to_dict(self, eta: float | None = None) -> dict:
        out = {
            "n": self.n,
            "f": self.f,
            "h_size": self.h_size,
            "mu": self.mu,
            "lambda": self.lam,
            "alpha": self.alpha,
            "beta": self.beta,
            "eta_max": self.eta_max,
            "eta_opt": self.eta_opt,
            "redundancy_holds": self.redundancy_holds,
        }
        if eta is not None:
            out["eta"] = eta
            out["rho_at_eta"] = self.rho_at(eta)
            out["eta_satisfies_bound"] = self.eta_satisfies_bound(eta)
        return out


def theory_report(costs: dict, n: int, f: int, check_redundancy: bool = True) -> TheoryReport:
    """Compute every checkable constant for an instance of honest costs."""
    cost_list = [costs[i] for i in sorted(costs)]
    mu = lipschitz_constant(cost_list)
    # lam <= mu holds exactly (min eigenvalue of the average Hessian vs the max
    # over per-agent ones); clamp away eigensolver rounding at the boundary
    lam = min(strong_convexity_constant(cost_list), mu)
    alpha = fault_tolerance_margin(lam, mu, n, f)
    h_size = len(cost_list)
    beta, eta_max, eta_opt = contraction_constants(lam, mu, n, f, h_size)
    redundancy: bool | None
    if check_redundancy:
        try:
            redundancy = check_2f_redundancy(costs, n, f)
        except ScaleError:
            redundancy = None
    else:
        redundancy = None
    return TheoryReport(
        n=n, f=f, h_size=h_size, mu=mu, lam=lam, alpha=alpha,
        beta=beta, eta_max=eta_max, eta_opt=eta_opt, redundancy_holds=redundancy,
    )
