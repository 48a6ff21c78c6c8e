"""Method-of-steps integration of the full nonlinear delay equation.

This is the brute-force companion to the closed-form analysis: a fixed-step
fourth-order integrator whose delayed argument comes from piecewise-cubic
interpolation of the stored history, plus verdict extraction (equilibrium,
limit cycle, divergence) from the resulting trajectory.  Fixed stepping
keeps runs bit-reproducible; there is no adaptive error control.
"""
from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import Divergence, InvalidSpec, StepTooLarge
from .models import ModelSpec, delay_of, equilibrium, rhs

__all__ = [
    "DIVERGENCE_THRESHOLD",
    "SimConfig",
    "Trajectory",
    "Verdict",
    "LimitCycleMetrics",
    "integrate",
    "metrics",
    "sweep_bifurcation",
]

DIVERGENCE_THRESHOLD = 1e6

# post-transient range below this (times max(1, |x_e|)) counts as settled
_EQUILIBRIUM_RANGE_TOL = 1e-6
# peak heights of the last ten cycles must agree to this relative spread
_CYCLE_AGREEMENT = 0.01


@dataclass(frozen=True)
class SimConfig:
    """Knobs of one integration run.

    The initial history on [-tau, 0] is the constant x_init.  dt = None
    picks the default tau/100 at integration time; whatever the value, the
    step must resolve the delay with dt <= tau/20.  transient_fraction of
    the trajectory is dropped before any metric is computed.
    """

    eta: float
    x_init: float
    t_end: float
    dt: Optional[float] = None
    transient_fraction: float = 0.5

    def __post_init__(self):
        if not (self.eta > 0.0 and math.isfinite(self.eta)):
            raise InvalidSpec(f"eta > 0 required, got {self.eta!r}")
        if not math.isfinite(self.x_init):
            raise InvalidSpec("x_init must be finite")
        if not (self.t_end > 0.0 and math.isfinite(self.t_end)):
            raise InvalidSpec(f"t_end > 0 required, got {self.t_end!r}")
        if self.dt is not None and not self.dt > 0.0:
            raise InvalidSpec(f"dt > 0 required, got {self.dt!r}")
        if not 0.0 <= self.transient_fraction < 1.0:
            raise InvalidSpec("transient_fraction must lie in [0, 1)")


@dataclass(frozen=True)
class Trajectory:
    """Samples x(t_i) on the uniform grid t_i = i*dt, plus provenance."""

    times: np.ndarray
    values: np.ndarray
    model: ModelSpec
    config: SimConfig

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0])


class Verdict(enum.Enum):
    CONVERGED_TO_EQUILIBRIUM = "ConvergedToEquilibrium"
    LIMIT_CYCLE = "LimitCycle"
    DIVERGED = "Diverged"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class LimitCycleMetrics:
    """Verdict plus the quantities that back it.

    amplitude is half the peak-to-peak range of the post-transient window
    (of the finite prefix if the run diverged) and is always >= 0.  period
    is the mean spacing of the last ten refined peaks and is set only for
    LimitCycle; decay_rate is the fitted exponential rate and is set only
    for ConvergedToEquilibrium.  Absent quantities are NaN.
    """

    verdict: Verdict
    amplitude: float
    period: float
    decay_rate: float


def integrate(spec: ModelSpec, config: SimConfig) -> Trajectory:
    """Integrate x'(t) = eta*f(x(t), x(t-tau)) by the method of steps.

    Classic fourth-order Runge-Kutta with a fixed step.  The delayed value
    is read from a cubic Hermite interpolant through the stored samples and
    their derivatives, so every stage lookup lands in already-completed
    history (guaranteed by dt <= tau/20).  History on [-tau, 0] is the
    constant config.x_init.

    Raises
    ------
    StepTooLarge
        If dt > tau/20.
    InvalidSpec
        If t_end < 50*tau.
    Divergence
        If |x| exceeds 1e6; the partial trajectory (finite prefix) is
        attached to the exception as .trajectory.
    """
    tau = delay_of(spec)
    dt = config.dt if config.dt is not None else tau / 100.0
    if dt > tau / 20.0 * (1.0 + 1e-12):
        raise StepTooLarge(
            f"dt = {dt:.6g} does not resolve the delay: dt <= tau/20 = "
            f"{tau / 20.0:.6g} required")
    if config.t_end < 50.0 * tau * (1.0 - 1e-12):
        raise InvalidSpec(
            f"t_end = {config.t_end:.6g} too short: t_end >= 50*tau = "
            f"{50.0 * tau:.6g} required")
    eta = config.eta
    n = int(round(config.t_end / dt))
    xs = [0.0] * (n + 1)
    fs = [0.0] * (n + 1)
    x0 = float(config.x_init)

    def f(x: float, xd: float) -> float:
        return rhs(spec, x, xd, eta)

    def lookup(s: float) -> float:
        # delayed-state readout: constant history for s <= 0, cubic Hermite
        # through (x_i, f_i) otherwise
        if s <= 0.0:
            return x0
        i = int(s / dt)
        if i > n - 1:
            i = n - 1
        th = s / dt - i
        if th < 0.0:
            th = 0.0
        h00 = (2.0 * th - 3.0) * th * th + 1.0
        h10 = ((th - 2.0) * th + 1.0) * th
        h01 = (3.0 - 2.0 * th) * th * th
        h11 = (th - 1.0) * th * th
        return (h00 * xs[i] + h01 * xs[i + 1]
                + dt * (h10 * fs[i] + h11 * fs[i + 1]))

    xs[0] = x0
    fs[0] = f(x0, x0)
    half = 0.5 * dt
    sixth = dt / 6.0
    for i in range(n):
        t = i * dt
        x = xs[i]
        k1 = fs[i]
        k2 = f(x + half * k1, lookup(t + half - tau))
        k3 = f(x + half * k2, lookup(t + half - tau))
        k4 = f(x + dt * k3, lookup(t + dt - tau))
        xn = x + sixth * (k1 + 2.0 * (k2 + k3) + k4)
        if not (abs(xn) <= DIVERGENCE_THRESHOLD):
            partial = Trajectory(
                times=np.arange(i + 1, dtype=float) * dt,
                values=np.array(xs[:i + 1]),
                model=spec, config=config)
            raise Divergence(
                f"|x| exceeded {DIVERGENCE_THRESHOLD:.0e} at t = "
                f"{t + dt:.6g}", trajectory=partial)
        xs[i + 1] = xn
        fs[i + 1] = f(xn, lookup(t + dt - tau))
    return Trajectory(times=np.arange(n + 1, dtype=float) * dt,
                      values=np.array(xs), model=spec, config=config)


def _refined_peaks(t: np.ndarray, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Local maxima by the three-point test, with parabolic refinement."""
    left = w[1:-1] > w[:-2]
    right = w[1:-1] >= w[2:]
    idx = np.nonzero(left & right)[0] + 1
    if idx.size == 0:
        return np.empty(0), np.empty(0)
    dt = t[1] - t[0]
    ym, y0, yp = w[idx - 1], w[idx], w[idx + 1]
    denom = ym - 2.0 * y0 + yp
    with np.errstate(divide="ignore", invalid="ignore"):
        delta = np.where(np.abs(denom) > 0.0, 0.5 * (ym - yp) / denom, 0.0)
    delta = np.clip(delta, -0.5, 0.5)
    times = t[idx] + delta * dt
    heights = y0 - 0.25 * (ym - yp) * delta
    return times, heights


def _fit_decay_rate(traj: Trajectory, x_e: float) -> float:
    """Least-squares exponential rate of |x - x_e|, envelope-aware.

    Skips the initial layer (the first two delays), drops samples at the
    numerical noise floor, and fits on envelope peaks when the decay is
    oscillatory.  NaN when fewer than two usable samples remain.
    """
    tau = delay_of(traj.model)
    dev = np.abs(traj.values - x_e)
    scale = max(1.0, abs(x_e))
    t_skip = min(2.0 * tau, 0.2 * float(traj.times[-1]))
    mask = (traj.times >= t_skip) & (dev > 1e-12 * scale)
    if mask.sum() < 2:
        return math.nan
    t, d = traj.times[mask], dev[mask]
    pt, ph = _refined_peaks(t, d)
    keep = ph > 0.0
    if keep.sum() >= 5:
        t, d = pt[keep], ph[keep]
    slope = np.polyfit(t, np.log(d), 1)[0]
    return float(-slope)


def metrics(traj: Trajectory) -> LimitCycleMetrics:
    """Classify a trajectory and measure it.

    The transient_fraction of the run is discarded, then in order:
    Diverged if any sample is non-finite or beyond the divergence
    threshold, or if the trajectory was cut short of its configured span
    (the partial result integrate attaches to a Divergence error);
    ConvergedToEquilibrium if the remaining range is below
    1e-6 * max(1, |x_e|), with decay_rate fitted on log|x - x_e|;
    LimitCycle if at least ten peaks exist and the last ten peak heights
    (measured from the window midline) agree within 1%, with period the
    mean refined peak spacing; Undetermined otherwise.
    """
    vals = traj.values
    finite = np.isfinite(vals) & (np.abs(vals) <= DIVERGENCE_THRESHOLD)
    if not finite.all():
        stop = int(np.argmin(finite))
        prefix = vals[:stop]
        amp = 0.5 * float(prefix.max() - prefix.min()) if stop > 1 else 0.0
        return LimitCycleMetrics(Verdict.DIVERGED, amp, math.nan, math.nan)
    dt = (traj.config.dt if traj.config.dt is not None
          else delay_of(traj.model) / 100.0)
    if len(vals) < int(round(traj.config.t_end / dt)) + 1:
        amp = 0.5 * float(vals.max() - vals.min()) if len(vals) > 1 else 0.0
        return LimitCycleMetrics(Verdict.DIVERGED, amp, math.nan, math.nan)
    x_e = equilibrium(traj.model).x_e
    scale = max(1.0, abs(x_e))
    start = int(round(traj.config.transient_fraction * (len(vals) - 1)))
    w = vals[start:]
    t = traj.times[start:]
    amp = 0.5 * float(w.max() - w.min())
    if w.max() - w.min() < _EQUILIBRIUM_RANGE_TOL * scale:
        rate = _fit_decay_rate(traj, x_e)
        return LimitCycleMetrics(Verdict.CONVERGED_TO_EQUILIBRIUM, amp,
                                 math.nan, rate)
    peak_t, peak_h = _refined_peaks(t, w)
    if peak_t.size >= 10:
        midline = 0.5 * float(w.max() + w.min())
        last_h = peak_h[-10:] - midline
        mean_h = float(np.mean(last_h))
        if mean_h > 0.0 and float(last_h.max() - last_h.min()) < _CYCLE_AGREEMENT * mean_h:
            period = float(np.mean(np.diff(peak_t[-10:])))
            return LimitCycleMetrics(Verdict.LIMIT_CYCLE, amp, period,
                                     math.nan)
    return LimitCycleMetrics(Verdict.UNDETERMINED, amp, math.nan, math.nan)


def sweep_bifurcation(spec: ModelSpec, eta_grid: Sequence[float],
                      config: SimConfig, continue_history: bool = False):
    """integrate + metrics across an ascending gain grid.

    Returns a list of (eta, amplitude, period, verdict) tuples, one per
    grid point.  With continue_history the final state of each run seeds
    the (constant) initial history of the next, which lets a subcritical
    branch keep its large cycle below the linear stability boundary.
    Divergence propagates to the caller.
    """
    grid = [float(g) for g in eta_grid]
    if len(grid) == 0:
        raise InvalidSpec("eta grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidSpec("eta grid must be strictly ascending")
    out = []
    x_init = config.x_init
    for eta in grid:
        cfg = dataclasses.replace(config, eta=eta, x_init=x_init)
        traj = integrate(spec, cfg)
        m = metrics(traj)
        out.append((eta, m.amplitude, m.period, m.verdict))
        if continue_history:
            x_init = float(traj.values[-1])
    return out
