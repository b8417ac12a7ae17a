"""Equilibrium computation by Picard iteration on the contraction map."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .certify import Weights, certificate, weighted_norm
from .model import Realization, SpecError, SystemSpec, check_realization
from .projection import StateVector, picard_map


class CertificateError(RuntimeError):
    """The certificate does not pass, so contraction is not guaranteed."""


@dataclass(frozen=True)
class Equilibrium:
    point: StateVector
    iterations: int
    residual: float
    a_priori_bound: float
    converged: bool
    step_norms: np.ndarray  # successive-difference norms, one per iteration


def _default_start(spec: SystemSpec) -> StateVector:
    return StateVector(x=spec.box1.midpoint(), y=spec.box2.midpoint())


def residual(spec: SystemSpec, real: Realization, w: Weights,
             s: StateVector) -> float:
    """Weighted-l1 deviation from the fixed-point relations; zero only at the
    equilibrium of the given realization."""
    f = picard_map(spec, real, s)
    return weighted_norm(w, StateVector(x=f.x - s.x, y=f.y - s.y))


def picard_solve(spec: SystemSpec, real: Realization, w: Weights,
                 tol: float = 1e-10, max_iter: int = 100_000,
                 start: StateVector | None = None) -> Equilibrium:
    """Iterate z <- F(z) until the a posteriori contraction bound certifies
    that the iterate is within tol of the unique fixed point.

    With contraction modulus kappa the stopping rule is
    ||z_{k+1} - z_k|| <= tol (1 - kappa) / kappa, which guarantees
    ||z_{k+1} - z*|| <= tol. If max_iter is hit first, the best iterate is
    returned with converged=False.
    """
    cert = certificate(spec, w)
    if not cert.passed:
        raise CertificateError("certificate fails; Picard iteration not contractive")
    check_realization(spec, real)
    kappa = cert.kappa
    stop = tol * (1.0 - kappa) / kappa if kappa > 0.0 else tol

    z = _default_start(spec) if start is None else start
    steps: list[float] = []
    first_step = 0.0
    converged = False
    k = 0
    for k in range(1, max_iter + 1):
        z_next = picard_map(spec, real, z)
        delta = weighted_norm(w, StateVector(x=z_next.x - z.x, y=z_next.y - z.y))
        steps.append(delta)
        if k == 1:
            first_step = delta
        z = z_next
        if delta <= stop:
            converged = True
            break

    if kappa > 0.0 and kappa < 1.0:
        a_priori = kappa ** k / (1.0 - kappa) * first_step
    else:
        a_priori = 0.0
    return Equilibrium(
        point=z,
        iterations=k,
        residual=residual(spec, real, w, z),
        a_priori_bound=a_priori,
        converged=converged,
        step_norms=np.array(steps),
    )
