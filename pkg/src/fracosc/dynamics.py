"""Evolution process: time integration of dw/dt + L(t)^a w = F(t, w).

``evolve`` realizes the two-parameter solution family S(t, tau) on the
truncation: deterministic stepping gives S(t, t) = identity exactly and the
composition law bit-exactly on aligned grids (times accumulate
incrementally, so a restarted run repeats the same float sequence).

The physical velocity is not stored: the first block row of the system
gives  u_t = mu^((a-1)/2) sin(pi a/2) nu^((a-1)/2) v - mu^(a/2) cos(pi a/2)
nu^(a/2) u  per mode, which ``recover_velocity`` evaluates (u_t = v at
a = 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fracosc.basis import mode_weights
from fracosc.coeffs import eval_mu
from fracosc.kernels import KernelContext, evolve_arrays, make_context
from fracosc.nonlin import BlowUpError
from fracosc.problem import Problem

__all__ = ["State", "TrajectoryRecord", "step", "evolve", "recover_velocity", "BlowUpError"]


@dataclass(frozen=True)
class State:
    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=np.float64)
        v = np.asarray(self.v, dtype=np.float64)
        if u.shape != v.shape or u.ndim != 1:
            raise ValueError("state components must be 1-d arrays of equal length")
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
            raise ValueError("state components must be finite")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    def scaled(self, c: float) -> "State":
        return State(c * self.u, c * self.v)


@dataclass(frozen=True)
class TrajectoryRecord:
    times: np.ndarray
    U: np.ndarray
    V: np.ndarray
    h: float
    alpha: float
    record_every: int
    blown: bool
    blow_step: int = -1

    def __post_init__(self):
        if self.times.shape[0] != self.U.shape[0] or self.U.shape != self.V.shape:
            raise ValueError("record arrays are inconsistent")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("record times must be strictly increasing")

    def __len__(self) -> int:
        return self.times.shape[0]

    def state(self, i: int) -> State:
        return State(self.U[i], self.V[i])

    @property
    def final_state(self) -> State:
        return self.state(len(self) - 1)

    @property
    def final_time(self) -> float:
        return float(self.times[-1])


def _context(problem: Problem, alpha: float, blow_threshold: float) -> KernelContext:
    return make_context(problem, alpha, blow_threshold)


def step(state: State, t: float, h: float, alpha: float, problem: Problem,
         blow_threshold: float = 1e12) -> State:
    """One exponential two-stage step from time t to t + h."""
    if h <= 0:
        raise ValueError("h must be positive")
    ctx = _context(problem, alpha, blow_threshold)
    times, urec, vrec, nrec, blown = evolve_arrays(ctx, state.u, state.v, t, h, 1, 1)
    if blown >= 0:
        raise BlowUpError(f"step from t={t} left the resolvable range")
    return State(urec[nrec - 1], vrec[nrec - 1])


def evolve(
    initial: State,
    tau: float,
    t_end: float,
    h: float,
    alpha: float,
    problem: Problem,
    record_every: int = 1,
    blow_threshold: float = 1e12,
) -> TrajectoryRecord:
    """Integrate from tau to t_end with fixed step h (h must divide the span)."""
    if t_end < tau:
        raise ValueError("t_end must be >= tau")
    if h <= 0:
        raise ValueError("h must be positive")
    span = t_end - tau
    n_steps = int(round(span / h)) if span > 0 else 0
    if abs(n_steps * h - span) > 1e-9 * max(1.0, abs(span)):
        raise ValueError(f"h={h} does not divide the span {span} within rounding")
    ctx = _context(problem, alpha, blow_threshold)
    times, urec, vrec, nrec, blown = evolve_arrays(
        ctx, initial.u, initial.v, tau, h, n_steps, record_every
    )
    return TrajectoryRecord(
        times=times[:nrec].copy(),
        U=urec[:nrec].copy(),
        V=vrec[:nrec].copy(),
        h=h,
        alpha=alpha,
        record_every=max(1, record_every),
        blown=blown >= 0,
        blow_step=int(blown),
    )


def recover_velocity(state: State, t: float, alpha: float, problem: Problem) -> np.ndarray:
    """Physical velocity u_t from the state pair (u, v)."""
    from fracosc.fracop import sin_cos_half

    mu = float(eval_mu(problem.mu, t))
    s, c = sin_cos_half(alpha)
    basis = problem.basis
    w_lo = mode_weights(basis, (-1.0 + alpha) / 2.0)
    w_hi = mode_weights(basis, alpha / 2.0)
    return mu ** ((-1.0 + alpha) / 2.0) * s * w_lo * state.v - mu ** (alpha / 2.0) * c * w_hi * state.u
