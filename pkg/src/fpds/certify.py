"""Stability certificate: contraction coefficients, margins, and weight search.

All contraction and stability quantities live in the weighted l1 norm
||z||_{mu,tau} = sum_i mu_i |x_i| + sum_j tau_j |y_j|.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import SpecError, SystemSpec
from .projection import StateVector


@dataclass(frozen=True)
class TildeCoeffs:
    """Worst-case interval magnitudes entering the contraction bound."""

    a_tilde: np.ndarray       # n x n, max(|rho a_lo + H|, |rho a_hi + H|)
    astar_tilde: np.ndarray   # n x m, max(|lo|, |hi|)
    b_tilde: np.ndarray       # m x m, max(|lam b_lo + L|, |lam b_hi + L|)
    bstar_tilde: np.ndarray   # m x n, max(|lo|, |hi|)


@dataclass(frozen=True)
class Weights:
    """Positive scaling vectors defining the weighted l1 norm."""

    mu: np.ndarray
    tau: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mu", np.asarray(self.mu, dtype=float).reshape(-1))
        object.__setattr__(self, "tau", np.asarray(self.tau, dtype=float).reshape(-1))
        if np.any(self.mu <= 0.0) or np.any(self.tau <= 0.0):
            raise SpecError("nonpositive weights")


@dataclass(frozen=True)
class Certificate:
    a2_margins: np.ndarray   # 1 - rho*Abar_ii - H_ii
    a3_margins: np.ndarray   # 1 - lam*Bbar_jj - L_jj
    xi: np.ndarray
    zeta: np.ndarray
    kappa: float
    theta: float
    min_slack: float
    passed: bool
    gains_warning: bool


def weighted_norm(w: Weights, s: StateVector) -> float:
    return float(w.mu @ np.abs(s.x) + w.tau @ np.abs(s.y))


def tilde_coeffs(spec: SystemSpec) -> TildeCoeffs:
    H, L = spec.shifts.H, spec.shifts.L
    a_tilde = np.maximum(np.abs(spec.rho * spec.A.lower + H),
                         np.abs(spec.rho * spec.A.upper + H))
    astar_tilde = np.maximum(np.abs(spec.Astar.lower), np.abs(spec.Astar.upper))
    b_tilde = np.maximum(np.abs(spec.lam * spec.B.lower + L),
                         np.abs(spec.lam * spec.B.upper + L))
    bstar_tilde = np.maximum(np.abs(spec.Bstar.lower), np.abs(spec.Bstar.upper))
    return TildeCoeffs(a_tilde, astar_tilde, b_tilde, bstar_tilde)


def certificate(spec: SystemSpec, w: Weights) -> Certificate:
    """Evaluate the full certificate for the given weights.

    passed requires the diagonal margins to be nonnegative and every xi_i,
    zeta_j to lie strictly inside (0, 1); inequalities are checked exactly in
    floating point (no epsilon slack). min_slack reports how marginal the
    verdict is.
    """
    n, m = spec.n, spec.m
    if w.mu.size != n or w.tau.size != m:
        raise SpecError("dimension mismatch: weights")
    H, L = spec.shifts.H, spec.shifts.L
    tc = tilde_coeffs(spec)

    a2 = 1.0 - spec.rho * np.diag(spec.A.upper) - np.diag(H)
    a3 = 1.0 - spec.lam * np.diag(spec.B.upper) - np.diag(L)

    # xi_i = sum_{j != i} (mu_j/mu_i)(|h_ji| + atilde_ji)
    #        + sum_j (tau_j/mu_i) lam btilde*_ji
    #        + |h_ii| + 1 - rho a_lo_ii - h_ii
    M1 = np.abs(H) + tc.a_tilde
    np.fill_diagonal(M1, 0.0)
    xi = (w.mu @ M1 + spec.lam * (w.tau @ tc.bstar_tilde)) / w.mu
    xi = xi + np.abs(np.diag(H)) + 1.0 - spec.rho * np.diag(spec.A.lower) - np.diag(H)

    M2 = np.abs(L) + tc.b_tilde
    if m > 0:
        np.fill_diagonal(M2, 0.0)
        zeta = (w.tau @ M2 + spec.rho * (w.mu @ tc.astar_tilde)) / w.tau
        zeta = zeta + np.abs(np.diag(L)) + 1.0 - spec.lam * np.diag(spec.B.lower) - np.diag(L)
    else:
        zeta = np.zeros(0)

    both = np.concatenate([xi, zeta])
    kappa = float(np.max(both))
    theta = 1.0 - kappa
    ok = bool(np.all(a2 >= 0.0) and np.all(a3 >= 0.0)
              and np.all(both > 0.0) and np.all(both < 1.0))
    slack_terms = np.concatenate([a2, a3, both, 1.0 - both])
    return Certificate(
        a2_margins=a2, a3_margins=a3, xi=xi, zeta=zeta,
        kappa=kappa, theta=theta,
        min_slack=float(np.min(slack_terms)),
        passed=ok,
        gains_warning=bool(np.any(spec.gains != 1.0)),
    )


def comparison_system(spec: SystemSpec) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal vector d and nonnegative coupling matrix C of the weight
    feasibility conditions: weights w > 0 exist iff d > 0 and rho(D^-1 C) < 1,
    and then any w with (diag(d) - C) w > 0 works."""
    n, m = spec.n, spec.m
    H, L = spec.shifts.H, spec.shifts.L
    tc = tilde_coeffs(spec)
    d = np.empty(n + m)
    d[:n] = spec.rho * np.diag(spec.A.lower) + np.diag(H) - np.abs(np.diag(H))
    d[n:] = spec.lam * np.diag(spec.B.lower) + np.diag(L) - np.abs(np.diag(L))
    C = np.zeros((n + m, n + m))
    M1 = np.abs(H) + tc.a_tilde
    np.fill_diagonal(M1, 0.0)
    C[:n, :n] = M1.T
    C[:n, n:] = spec.lam * tc.bstar_tilde.T
    if m > 0:
        M2 = np.abs(L) + tc.b_tilde
        np.fill_diagonal(M2, 0.0)
        C[n:, n:] = M2.T
        C[n:, :n] = spec.rho * tc.astar_tilde.T
    return d, C


def find_weights(spec: SystemSpec) -> Weights | None:
    """Search for weights making the certificate pass; None if infeasible.

    Solves (diag(d) - C) w = 1: when diag(d) - C is a nonsingular M-matrix its
    inverse is nonnegative, so w is positive and gives uniform slack across
    rows. The returned weights are re-verified through certificate().
    """
    d, C = comparison_system(spec)
    if np.any(d <= 0.0):
        return None
    radius = float(np.max(np.abs(np.linalg.eigvals(C / d[:, None]))))
    if radius >= 1.0:
        return None
    w = np.linalg.solve(np.diag(d) - C, np.ones(d.size))
    if np.any(w <= 0.0):
        return None
    weights = Weights(mu=w[: spec.n], tau=w[spec.n :])
    if not certificate(spec, weights).passed:
        return None
    return weights
