"""Box and shifted-box projections, the Picard map, and the dynamics RHS.

The constraint sets are products of shifted intervals, so every projection
is an exact componentwise clamp; no iterative optimization is involved.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import BoxSet, Realization, SpecError, SystemSpec, check_realization


@dataclass(frozen=True)
class StateVector:
    """Concatenated network state (x in R^n, y in R^m)."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float).reshape(-1))
        object.__setattr__(self, "y", np.asarray(self.y, dtype=float).reshape(-1))

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.x, self.y])

    @staticmethod
    def split(arr: np.ndarray, n: int) -> "StateVector":
        arr = np.asarray(arr, dtype=float).reshape(-1)
        return StateVector(x=arr[:n], y=arr[n:])


def project_box(box: BoxSet, v: np.ndarray) -> np.ndarray:
    """Clamp v into the box componentwise (the Euclidean projection)."""
    v = np.asarray(v, dtype=float)
    if v.shape[-1] != len(box):
        raise SpecError(f"length mismatch: vector of length {v.shape[-1]} vs box of {len(box)}")
    return np.minimum(np.maximum(v, box.lo), box.hi)


def project_implicit(shift: np.ndarray, box: BoxSet, x: np.ndarray,
                     v: np.ndarray) -> np.ndarray:
    """Project v onto the shifted box shift @ x + box.

    Computed as shift @ x + project_box(box, v - shift @ x); the two sides of
    this identity agree bitwise by construction.
    """
    shift = np.asarray(shift, dtype=float)
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    if shift.shape != (len(box), x.shape[-1]):
        raise SpecError(f"shape mismatch: shift is {shift.shape}")
    u = shift @ x
    return u + project_box(box, v - u)


def picard_map(spec: SystemSpec, real: Realization, s: StateVector) -> StateVector:
    """One application of the fixed-point map whose fixed points are equilibria.

    x-block: P_{Hx + K1}[x - rho (A x + A* y + a)], y-block analogous with
    lambda, B, B*, b, L, K2. Gains are not applied here (positive gains do not
    move the fixed point).
    """
    x, y = s.x, s.y
    vx = x - spec.rho * (real.A @ x + real.Astar @ y + spec.a)
    fx = project_implicit(spec.shifts.H, spec.box1, x, vx)
    if spec.m > 0:
        vy = y - spec.lam * (real.B @ y + real.Bstar @ x + spec.b)
        fy = project_implicit(spec.shifts.L, spec.box2, y, vy)
    else:
        fy = y
    return StateVector(x=fx, y=fy)


def rhs(spec: SystemSpec, real: Realization, s: StateVector) -> StateVector:
    """Right-hand side of the projected dynamics, per-equation gains applied."""
    check_realization(spec, real)
    f = picard_map(spec, real, s)
    gx = spec.gains[: spec.n]
    gy = spec.gains[spec.n :]
    return StateVector(x=gx * (f.x - s.x), y=gy * (f.y - s.y))
