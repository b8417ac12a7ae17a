import math

import numpy as np
import pytest

import fpds
from fpds import (StateVector, Weights, envelope_check, integrate,
                  mittag_leffler, picard_solve)

from conftest import make_scalar_decay_spec


def scalar_decay_traj(alpha, t_end=1.0, steps=2000):
    spec = make_scalar_decay_spec(alpha)
    real = fpds.sample_realization(spec, "lower")
    return spec, real, integrate(spec, real, StateVector(x=[1.0], y=[]),
                                 t_end, steps)


def test_equilibrium_start_stays_constant(ex42, w42):
    real = fpds.sample_realization(ex42, "lower")
    eq = picard_solve(ex42, real, w42, tol=1e-13)
    traj = integrate(ex42, real, eq.point, 5.0, 500)
    drift = np.max(np.abs(traj.states - eq.point.as_array()))
    assert drift < 1e-11


def test_alpha_one_exponential_decay():
    # at alpha = 1 the dynamics reduce to x' = -x
    spec, real, traj = scalar_decay_traj(1.0, t_end=2.0, steps=2000)
    expect = np.exp(-traj.times)
    assert np.max(np.abs(traj.states[:, 0] - expect)) < 1e-6


@pytest.mark.parametrize("alpha", [0.5, 0.8, 0.9, 1.0])
def test_matches_mittag_leffler_solution(alpha):
    # exact solution of the engineered scalar system is E_alpha(-t^alpha)
    spec, real, traj = scalar_decay_traj(alpha)
    exact = mittag_leffler(alpha, 1.0, -1.0)
    got = traj.states[-1, 0]
    assert abs(got - exact) / abs(exact) <= 1e-3


@pytest.mark.parametrize("alpha", [0.5, 0.8, 0.9, 1.0])
def test_halving_step_reduces_error(alpha):
    exact = mittag_leffler(alpha, 1.0, -1.0)
    spec = make_scalar_decay_spec(alpha)
    real = fpds.sample_realization(spec, "lower")
    errs = []
    for steps in (500, 1000, 2000):
        traj = integrate(spec, real, StateVector(x=[1.0], y=[]), 1.0, steps)
        errs.append(abs(traj.states[-1, 0] - exact))
    assert errs[2] < errs[1] < errs[0]


def test_single_step_matches_heun_at_alpha_one():
    # one fresh-memory step at alpha = 1 is exactly the Euler/trapezoid pair
    spec = make_scalar_decay_spec(1.0)
    real = fpds.sample_realization(spec, "lower")
    h = 0.01
    x = 1.0
    for _ in range(20):
        traj = integrate(spec, real, StateVector(x=[x], y=[]), h, 1)
        got = traj.states[1, 0]
        pred = x + h * (-x)
        heun = x + 0.5 * h * ((-x) + (-pred))
        assert got == pytest.approx(heun, rel=1e-12)
        x = got


def test_trajectory_grid_and_state_accessor(ex41):
    real = fpds.sample_realization(ex41, "midpoint")
    z0 = StateVector(x=ex41.box1.midpoint(), y=ex41.box2.midpoint())
    traj = integrate(ex41, real, z0, 2.0, 40)
    assert traj.times[0] == 0.0
    assert traj.times[-1] == pytest.approx(2.0)
    assert traj.states.shape == (41, 5)
    s = traj.state(0)
    np.testing.assert_array_equal(s.x, z0.x)
    np.testing.assert_array_equal(s.y, z0.y)


@pytest.mark.parametrize("scenario,x0,y0", [
    ("example-4.1", [8.6, -7.3, -5.2], [6.7, -8.5]),
    ("example-4.2", [5.8, -4.2], []),
])
@pytest.mark.parametrize("selector", ["lower", "upper"])
def test_envelope_passes_for_builtin_examples(scenario, x0, y0, selector):
    spec = fpds.builtin_scenario(scenario)
    w = (Weights(mu=np.ones(spec.n), tau=np.ones(spec.m)) if spec.m
         else Weights(mu=[2.0, 1.0], tau=[]))
    cert = fpds.certificate(spec, w)
    assert cert.passed
    real = fpds.sample_realization(spec, selector)
    eq = picard_solve(spec, real, w, tol=1e-11)
    traj = integrate(spec, real, StateVector(x=x0, y=y0), 20.0, 2000)
    report = envelope_check(traj, eq, w, cert.theta, slack=0.05)
    assert report.passed
    assert report.violations == 0
    assert report.max_ratio <= 1.05


def test_constructed_violation_fails(ex42, w42):
    # freeze the tail at the initial distance: V(t) = V(0) must eventually
    # exceed the decaying envelope
    real = fpds.sample_realization(ex42, "lower")
    cert = fpds.certificate(ex42, w42)
    eq = picard_solve(ex42, real, w42, tol=1e-11)
    traj = integrate(ex42, real, StateVector(x=[5.8, -4.2], y=[]), 20.0, 400)
    states = np.array(traj.states)
    half = states.shape[0] // 2
    states[half:] = states[0]
    fake = fpds.Trajectory(times=traj.times, states=states, alpha=traj.alpha,
                           realization=real, n=traj.n)
    report = envelope_check(fake, eq, w42, cert.theta, slack=0.05)
    assert not report.passed
    assert report.violations > 0
    assert report.max_ratio > 1.05


def test_stationary_start_passes_trivially(ex42, w42):
    real = fpds.sample_realization(ex42, "lower")
    cert = fpds.certificate(ex42, w42)
    eq = picard_solve(ex42, real, w42, tol=1e-13)
    traj = integrate(ex42, real, eq.point, 5.0, 200)
    report = envelope_check(traj, eq, w42, cert.theta)
    assert report.passed
    assert report.v0 <= 1e-9
    assert report.max_ratio == 0.0


def test_two_starts_approach_each_other(ex42, w42):
    # global attractivity: trajectories from different starts close in
    real = fpds.sample_realization(ex42, "upper")
    t1 = integrate(ex42, real, StateVector(x=[5.8, -4.2], y=[]), 20.0, 800)
    t2 = integrate(ex42, real, StateVector(x=[-2.0, 3.0], y=[]), 20.0, 800)
    gap = np.abs(t1.states - t2.states).sum(axis=1)
    assert gap[-1] < 0.02 * gap[0]


def test_argument_validation(ex42):
    real = fpds.sample_realization(ex42, "lower")
    z0 = StateVector(x=[1.0, 1.0], y=[])
    with pytest.raises(fpds.SpecError, match="steps"):
        integrate(ex42, real, z0, 1.0, 0)
    with pytest.raises(fpds.SpecError, match="t_end"):
        integrate(ex42, real, z0, -1.0, 10)


def test_non_finite_state_raises():
    # gain blow-up drives the corrector to overflow; the step index is carried
    spec = fpds.validate_system(fpds.SystemSpec(
        n=1, m=0, alpha=0.9, rho=1.0, lam=1.0, a=[0.0], b=[],
        A=fpds.IntervalMatrix([[-3.0]], [[-3.0]]),
        Astar=fpds.IntervalMatrix(np.zeros((1, 0)), np.zeros((1, 0))),
        B=fpds.IntervalMatrix(np.zeros((0, 0)), np.zeros((0, 0))),
        Bstar=fpds.IntervalMatrix(np.zeros((0, 1)), np.zeros((0, 1))),
        shifts=fpds.ShiftMap(H=[[0.0]], L=np.zeros((0, 0))),
        box1=fpds.BoxSet([-1e300], [1e300]), box2=fpds.BoxSet([], []),
        gains=[1e3],
    ))
    real = fpds.sample_realization(spec, "lower")
    with np.errstate(over="ignore", invalid="ignore"):
        with pytest.raises(fpds.IntegrationError) as exc:
            integrate(spec, real, StateVector(x=[1.0], y=[]), 100.0, 200)
    assert exc.value.step >= 1
