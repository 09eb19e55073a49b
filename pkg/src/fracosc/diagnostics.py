"""Energies, Lyapunov functionals, and the dissipativity experiments.

Conventions fixed here once:

* The natural energy at time t is
  E(u, u_t) = mu^((1+a)/2) ||u||^2_{X^((1+a)/4)} + ||u||^2
            + mu^((1-a)/2) ||u_t||^2_{X^((1-a)/4)},
  always evaluated with the recovered velocity when applied to a state
  pair (u, v).
* Two-sided comparisons use the squared product norm
  q(u, v) = ||u||^2_{X^((1+a)/4)} + ||v||^2_{X^((-1+a)/4)}
  on both sides (energies are quadratic, so this is the dimensionally
  consistent reading).
* eps inside the Lyapunov functionals is frozen at the decay rate of the
  experiment's end time t0, and C_eps is evaluated for that eps.

All attractor-style statements are verified as finite-ensemble,
finite-truncation surrogates; reports phrase them as consistency checks,
not proofs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fracosc.basis import mode_weights, sobolev_norm
from fracosc.coeffs import (
    StructuralConstants,
    check_assumptions,
    compute_constants,
    decay_rate,
    eval_mu,
    eval_omega,
)
from fracosc.dynamics import State, TrajectoryRecord, evolve, recover_velocity
from fracosc.fracop import sin_cos_half
from fracosc.ensembles import energy_ensemble
from fracosc.nonlin import c_epsilon, potential
from fracosc.problem import Problem

__all__ = [
    "natural_energy",
    "phi_functional",
    "lyapunov_L",
    "product_norm_sq",
    "EnergyReport",
    "energy_report",
    "constants_for",
    "norm_equivalence_report",
    "NormEquivalenceReport",
    "decay_estimate_check",
    "DecayReport",
    "AssumptionFailure",
    "absorbing_experiment",
    "AbsorbingReport",
    "pullback_attraction_experiment",
    "PullbackReport",
    "linear_contraction_rate",
    "hausdorff_semidistance",
    "embed_states",
    "tail_energy_table",
]


class AssumptionFailure(RuntimeError):
    """An experiment was started from a configuration failing its assumptions."""


def natural_energy(problem: Problem, alpha: float, t: float, u: np.ndarray, u_t: np.ndarray) -> float:
    mu = float(eval_mu(problem.mu, t))
    basis = problem.basis
    return float(
        mu ** ((1.0 + alpha) / 2.0) * sobolev_norm(basis, u, (1.0 + alpha) / 4.0) ** 2
        + np.sum(np.asarray(u) ** 2)
        + mu ** ((1.0 - alpha) / 2.0) * sobolev_norm(basis, u_t, (1.0 - alpha) / 4.0) ** 2
    )


def phi_functional(
    problem: Problem,
    alpha: float,
    t: float,
    eps: float,
    u: np.ndarray,
    u_t: np.ndarray,
    refine: int = 1,
) -> float:
    """Lyapunov functional in (u, u_t) coordinates.

    Energy plus potential plus the eps-weighted cross terms whose time
    derivative obeys  d Phi/dt + eps Phi <= 16 eps C_eps  along solutions.
    """
    basis = problem.basis
    mu = float(eval_mu(problem.mu, t))
    om = float(eval_omega(problem.omega, t))
    s, c = sin_cos_half(alpha)
    nu = basis.eigenvalues
    u = np.asarray(u, dtype=np.float64)
    u_t = np.asarray(u_t, dtype=np.float64)
    quad = (
        mu ** ((1.0 + alpha) / 2.0) * np.sum(nu ** ((1.0 + alpha) / 2.0) * u**2)
        + mu ** ((1.0 - alpha) / 2.0) * np.sum(nu ** ((1.0 - alpha) / 2.0) * u_t**2)
    )
    cross = (
        2.0 * mu**0.5 * c * np.sum(nu**0.5 * u**2)
        + s * om * np.sum(u**2)
        + 2.0 * mu ** ((1.0 - alpha) / 2.0) * np.sum(nu ** ((1.0 - alpha) / 2.0) * u_t * u)
    )
    return float(quad - 2.0 * s * potential(problem.nonlin, basis, u, refine=refine) + 2.0 * eps * cross)


def lyapunov_L(
    problem: Problem,
    alpha: float,
    t: float,
    eps: float,
    state: State,
    refine: int = 1,
) -> float:
    """Lyapunov functional in (u, v) coordinates.

    Algebraically equal to phi_functional composed with the velocity
    recovery; computed through its own closed form so the identity is a
    genuine cross-check.
    """
    basis = problem.basis
    mu = float(eval_mu(problem.mu, t))
    om = float(eval_omega(problem.omega, t))
    s, c = sin_cos_half(alpha)
    nu = basis.eigenvalues
    u, v = state.u, state.v
    combo = (
        s * mu ** ((alpha - 1.0) / 4.0) * nu ** ((alpha - 1.0) / 4.0) * v
        - c * mu ** ((1.0 + alpha) / 4.0) * nu ** ((1.0 + alpha) / 4.0) * u
    )
    return float(
        mu ** ((1.0 + alpha) / 2.0) * np.sum(nu ** ((1.0 + alpha) / 2.0) * u**2)
        + np.sum(combo**2)
        - 2.0 * s * potential(problem.nonlin, basis, u, refine=refine)
        + 2.0 * eps * s * om * np.sum(u**2)
        + 4.0 * eps * s * np.sum(u * v)
    )


def product_norm_sq(problem: Problem, alpha: float, state: State) -> float:
    """Squared norm of (u, v) in X^((1+a)/4) x X^((-1+a)/4)."""
    basis = problem.basis
    return float(
        sobolev_norm(basis, state.u, (1.0 + alpha) / 4.0) ** 2
        + sobolev_norm(basis, state.v, (-1.0 + alpha) / 4.0) ** 2
    )


@dataclass(frozen=True)
class EnergyReport:
    t: float
    eps: float
    energy: float
    phi: float
    lyapunov: float
    norm_u_high: float
    norm_u: float
    norm_ut_low: float
    norm_product: float


def energy_report(problem: Problem, alpha: float, t: float, eps: float, state: State) -> EnergyReport:
    u_t = recover_velocity(state, t, alpha, problem)
    basis = problem.basis
    return EnergyReport(
        t=t,
        eps=eps,
        energy=natural_energy(problem, alpha, t, state.u, u_t),
        phi=phi_functional(problem, alpha, t, eps, state.u, u_t),
        lyapunov=lyapunov_L(problem, alpha, t, eps, state),
        norm_u_high=sobolev_norm(basis, state.u, (1.0 + alpha) / 4.0),
        norm_u=float(np.sqrt(np.sum(state.u**2))),
        norm_ut_low=sobolev_norm(basis, u_t, (1.0 - alpha) / 4.0),
        norm_product=float(np.sqrt(product_norm_sq(problem, alpha, state))),
    )


def constants_for(problem: Problem, alpha: float, t0: float) -> tuple[StructuralConstants, float]:
    """Structural constants and the frozen eps for a run ending at t0.

    Two passes break the circular reference: the decay rate needs c1 and
    the embedding ratios but not C_eps, so constants are first computed
    with C_eps = 0, eps follows, and C_eps(eps) completes the ledger.
    """
    stage = compute_constants(problem.omega, problem.mu, alpha, problem.basis, 0.0, t0)
    eps = float(decay_rate(problem.omega, stage, t0))
    c_eps = c_epsilon(problem.nonlin, problem.basis, eps)
    return compute_constants(problem.omega, problem.mu, alpha, problem.basis, c_eps, t0), eps


@dataclass(frozen=True)
class NormEquivalenceReport:
    worst_lower: float
    worst_upper: float
    C1: float
    C2: float
    sharp_lower: float
    sharp_upper: float

    @property
    def passed(self) -> bool:
        return self.worst_lower >= self.C1 - 1e-12 and self.worst_upper <= self.C2 + 1e-12


def _pencil_bounds(problem: Problem, alpha: float, t: float) -> tuple[float, float]:
    """Exact per-mode extremal ratios E / q at time t (recovered velocity)."""
    mu = float(eval_mu(problem.mu, t))
    s, c = sin_cos_half(alpha)
    nu = problem.basis.eigenvalues
    axx = (1.0 + c * c) * mu ** ((1.0 + alpha) / 2.0) + nu ** (-(1.0 + alpha) / 2.0)
    ayy = s * s * mu ** ((alpha - 1.0) / 2.0)
    axy = -s * c * mu ** (alpha / 2.0)
    half_tr = 0.5 * (axx + ayy)
    disc = np.sqrt(0.25 * (axx - ayy) ** 2 + axy**2)
    return float(np.min(half_tr - disc)), float(np.max(half_tr + disc))


def norm_equivalence_report(
    problem: Problem,
    alpha: float,
    t: float,
    n_samples: int,
    consts: StructuralConstants,
    seed: int = 0,
    energy_max: float = 10.0,
) -> NormEquivalenceReport:
    """Monte-Carlo check of C1 q <= E <= C2 q on random states.

    Also reports the exact per-mode extremal ratios of the quadratic
    pencil, which bound what any state (not just sampled ones) can attain.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    states = energy_ensemble(
        problem.basis, n_samples, energy_max, seed,
        lambda st: natural_energy(problem, alpha, t, st.u, recover_velocity(st, t, alpha, problem)),
    )
    lo, hi = np.inf, -np.inf
    for st in states:
        q = product_norm_sq(problem, alpha, st)
        e = natural_energy(problem, alpha, t, st.u, recover_velocity(st, t, alpha, problem))
        r = e / q
        lo, hi = min(lo, r), max(hi, r)
    sharp_lo, sharp_hi = _pencil_bounds(problem, alpha, t)
    return NormEquivalenceReport(
        worst_lower=float(lo), worst_upper=float(hi),
        C1=consts.C1, C2=consts.C2,
        sharp_lower=sharp_lo, sharp_upper=sharp_hi,
    )


@dataclass(frozen=True)
class DecayReport:
    t0: float
    eps: float
    energies: np.ndarray
    bounds: np.ndarray
    worst_margin: float
    worst_margin_time: float
    residual_cap: float
    worst_residual: float
    worst_residual_time: float

    @property
    def bound_holds(self) -> bool:
        return self.worst_margin >= 0.0

    @property
    def residual_holds(self) -> bool:
        return self.worst_residual <= self.residual_cap


def _grid_rows(problem: Problem, U: np.ndarray) -> np.ndarray:
    """Collocation values for a batch of coefficient rows (rows, K)."""
    from fracosc.basis import dst_matrices

    basis = problem.basis
    m, d, k = basis.modes_per_axis, basis.dim, basis.size
    perm = np.arange(k).reshape((m,) * d).transpose(tuple(range(1, d)) + (0,)).ravel()
    synth, _ = dst_matrices(m)
    x = U[:, basis.sorted_from_tensor]
    rows = x.shape[0]
    for _ in range(d):
        x = np.einsum("ij,rjl->ril", synth, x.reshape(rows, m, k // m)).reshape(rows, k)[:, perm]
    return x


def _recovered_rows(problem: Problem, alpha: float, times, U, V) -> np.ndarray:
    mu = np.asarray(eval_mu(problem.mu, times), dtype=np.float64)[:, None]
    s, c = sin_cos_half(alpha)
    nu = problem.basis.eigenvalues[None, :]
    return (
        mu ** ((-1.0 + alpha) / 2.0) * s * nu ** ((-1.0 + alpha) / 2.0) * V
        - mu ** (alpha / 2.0) * c * nu ** (alpha / 2.0) * U
    )


def trajectory_energies(problem: Problem, alpha: float, traj: TrajectoryRecord) -> np.ndarray:
    nu = problem.basis.eigenvalues[None, :]
    mu = np.asarray(eval_mu(problem.mu, traj.times), dtype=np.float64)
    ut = _recovered_rows(problem, alpha, traj.times, traj.U, traj.V)
    return (
        mu ** ((1.0 + alpha) / 2.0) * np.sum(nu ** ((1.0 + alpha) / 2.0) * traj.U**2, axis=1)
        + np.sum(traj.U**2, axis=1)
        + mu ** ((1.0 - alpha) / 2.0) * np.sum(nu ** ((1.0 - alpha) / 2.0) * ut**2, axis=1)
    )


def trajectory_phis(problem: Problem, alpha: float, eps: float, traj: TrajectoryRecord) -> np.ndarray:
    basis = problem.basis
    nu = basis.eigenvalues[None, :]
    mu = np.asarray(eval_mu(problem.mu, traj.times), dtype=np.float64)
    om = np.asarray(eval_omega(problem.omega, traj.times), dtype=np.float64)
    s, c = sin_cos_half(alpha)
    ut = _recovered_rows(problem, alpha, traj.times, traj.U, traj.V)
    quad = (
        mu ** ((1.0 + alpha) / 2.0) * np.sum(nu ** ((1.0 + alpha) / 2.0) * traj.U**2, axis=1)
        + mu ** ((1.0 - alpha) / 2.0) * np.sum(nu ** ((1.0 - alpha) / 2.0) * ut**2, axis=1)
    )
    cross = (
        2.0 * mu**0.5 * c * np.sum(nu**0.5 * traj.U**2, axis=1)
        + s * om * np.sum(traj.U**2, axis=1)
        + 2.0 * mu ** ((1.0 - alpha) / 2.0) * np.sum(nu ** ((1.0 - alpha) / 2.0) * ut * traj.U, axis=1)
    )
    grids = _grid_rows(problem, traj.U)
    v_rows = problem.basis.quad_weight * np.sum(problem.nonlin.f_primitive(grids), axis=1)
    return quad - 2.0 * s * v_rows + 2.0 * eps * cross


def trajectory_lyapunovs(problem: Problem, alpha: float, eps: float, traj: TrajectoryRecord) -> np.ndarray:
    basis = problem.basis
    nu = basis.eigenvalues[None, :]
    mu = np.asarray(eval_mu(problem.mu, traj.times), dtype=np.float64)[:, None]
    om = np.asarray(eval_omega(problem.omega, traj.times), dtype=np.float64)
    s, c = sin_cos_half(alpha)
    combo = (
        s * mu ** ((alpha - 1.0) / 4.0) * nu ** ((alpha - 1.0) / 4.0) * traj.V
        - c * mu ** ((1.0 + alpha) / 4.0) * nu ** ((1.0 + alpha) / 4.0) * traj.U
    )
    grids = _grid_rows(problem, traj.U)
    v_rows = basis.quad_weight * np.sum(problem.nonlin.f_primitive(grids), axis=1)
    return (
        mu[:, 0] ** ((1.0 + alpha) / 2.0) * np.sum(nu ** ((1.0 + alpha) / 2.0) * traj.U**2, axis=1)
        + np.sum(combo**2, axis=1)
        - 2.0 * s * v_rows
        + 2.0 * eps * s * om * np.sum(traj.U**2, axis=1)
        + 4.0 * eps * s * np.sum(traj.U * traj.V, axis=1)
    )


def decay_estimate_check(
    traj: TrajectoryRecord,
    problem: Problem,
    consts: StructuralConstants,
    eps: float,
    tol_rel: float = 1e-6,
    check_config: bool = True,
) -> DecayReport:
    """Exponential a-priori bound and the discrete Lyapunov inequality.

    At every recorded time:  E(t) <= M0 E(tau) exp(-eps_omega(t)(t - tau))
    + M1 + tol_rel E(tau).  When the record spacing equals the step size,
    the forward difference quotient of Phi additionally satisfies
    (Phi(t+h) - Phi(t))/h + eps Phi(t) <= 16 eps C_eps + 10 h.
    """
    if traj.blown:
        raise AssumptionFailure("trajectory blew up; the decay bound does not apply")
    if check_config:
        grid = np.linspace(traj.times[0], traj.times[-1], 64)
        report = check_assumptions(problem.omega, problem.mu, traj.alpha, problem.basis, grid)
        if not report.passed:
            names = ", ".join(it.name for it in report.failures())
            raise AssumptionFailure(f"configuration fails structural assumptions: {names}")
    alpha = traj.alpha
    tau = float(traj.times[0])
    energies = trajectory_energies(problem, alpha, traj)
    e0 = energies[0]
    rates = np.asarray(decay_rate(problem.omega, consts, traj.times), dtype=np.float64)
    bounds = consts.M0 * e0 * np.exp(-rates * (traj.times - tau)) + consts.M1 + tol_rel * e0
    margins = bounds - energies
    i = int(np.argmin(margins))

    phis = trajectory_phis(problem, alpha, eps, traj)
    dt = np.diff(traj.times)
    residuals = np.diff(phis) / dt + eps * phis[:-1]
    cap = 16.0 * eps * consts.C_eps + 10.0 * float(np.max(dt))
    j = int(np.argmax(residuals))
    return DecayReport(
        t0=consts.t0,
        eps=eps,
        energies=energies,
        bounds=bounds,
        worst_margin=float(margins[i]),
        worst_margin_time=float(traj.times[i]),
        residual_cap=float(cap),
        worst_residual=float(residuals[j]),
        worst_residual_time=float(traj.times[j]),
    )


@dataclass(frozen=True)
class AbsorbingRow:
    radius: float
    theta: float
    tau: float
    worst_norm_sq: float
    absorbed: bool


@dataclass(frozen=True)
class AbsorbingReport:
    R_abs: float
    rows: tuple[AbsorbingRow, ...]
    control: AbsorbingRow

    @property
    def passed(self) -> bool:
        return all(r.absorbed for r in self.rows) and not self.control.absorbed


def absorbing_experiment(
    problem: Problem,
    alpha: float,
    t_final: float,
    radii=(10.0, 100.0),
    n_states: int = 20,
    seed: int = 0,
    h: float = 1e-2,
    tol_rel: float = 1e-6,
) -> AbsorbingReport:
    """Entry of pulled-back ensembles into the absorbing ball.

    For each energy radius R the entry time is theta = max(0,
    log(M0 R / (1 + M1)) / eps_omega(t_final)); ensembles released at
    t_final - (theta + 1) must land inside the squared-product-norm ball of
    radius R_abs = (1 + 2 M1)/C1.  The negative control releases an
    ensemble of energy 2 C2 R_abs at t_final itself (no transient) and must
    be reported as not yet absorbed.
    """
    consts, eps_t0 = constants_for(problem, alpha, t_final)
    eps_final = float(decay_rate(problem.omega, consts, t_final))
    rows = []
    for idx, radius in enumerate(radii):
        arg = consts.M0 * radius / (1.0 + consts.M1)
        theta = max(0.0, np.log(arg) / eps_final) if arg > 0 else 0.0
        n_steps = int(np.ceil((theta + 1.0) / h))
        tau = t_final - n_steps * h
        states = energy_ensemble(
            problem.basis, n_states, radius, seed + idx,
            lambda st: natural_energy(problem, alpha, tau, st.u, recover_velocity(st, tau, alpha, problem)),
        )
        worst = 0.0
        for st in states:
            traj = evolve(st, tau, t_final, h, alpha, problem, record_every=0)
            if traj.blown:
                raise AssumptionFailure("absorbing ensemble member blew up")
            worst = max(worst, product_norm_sq(problem, alpha, traj.final_state))
        rows.append(AbsorbingRow(
            radius=float(radius), theta=float(theta), tau=float(tau),
            worst_norm_sq=float(worst),
            absorbed=worst <= consts.R_abs * (1.0 + tol_rel),
        ))
    # negative control: no pullback, energy far outside the ball
    r_ctrl = 2.0 * consts.C2 * consts.R_abs
    states = energy_ensemble(
        problem.basis, n_states, r_ctrl, seed + 10_000,
        lambda st: natural_energy(problem, alpha, t_final, st.u, recover_velocity(st, t_final, alpha, problem)),
    )
    # scale every member to the full control energy so the violation is generic
    worst = 0.0
    for st in states:
        e = natural_energy(problem, alpha, t_final, st.u, recover_velocity(st, t_final, alpha, problem))
        st = st.scaled(float(np.sqrt(r_ctrl / e)))
        worst = max(worst, product_norm_sq(problem, alpha, st))
    control = AbsorbingRow(
        radius=float(r_ctrl), theta=0.0, tau=float(t_final),
        worst_norm_sq=float(worst),
        absorbed=worst <= consts.R_abs * (1.0 + tol_rel),
    )
    return AbsorbingReport(R_abs=consts.R_abs, rows=tuple(rows), control=control)


def embed_states(problem: Problem, s: float, states) -> np.ndarray:
    """Stack states as rows of weighted coefficients of X^(s/2) x X^((s-1)/2)."""
    basis = problem.basis
    wu = mode_weights(basis, s / 2.0)
    wv = mode_weights(basis, (s - 1.0) / 2.0)
    return np.stack([np.concatenate([wu * st.u, wv * st.v]) for st in states])


def hausdorff_semidistance(points_a: np.ndarray, points_b: np.ndarray) -> float:
    """sup over a of the distance from a to the set B (brute force)."""
    if points_a.ndim != 2 or points_b.ndim != 2:
        raise ValueError("expected 2-d point arrays")
    diffs = points_a[:, None, :] - points_b[None, :, :]
    d = np.sqrt(np.sum(diffs**2, axis=2))
    return float(np.max(np.min(d, axis=1)))


@dataclass(frozen=True)
class PullbackReport:
    t_fixed: float
    offsets: tuple[float, ...]
    semidistances: tuple[float, ...]
    monotone: bool
    total_decrease: float
    fitted_rate: float


def pullback_attraction_experiment(
    problem: Problem,
    alpha: float,
    t_fixed: float,
    tau_offsets=(10.0, 20.0, 40.0, 80.0),
    n_states: int = 20,
    energy: float = 10.0,
    seed: int = 0,
    h: float = 1e-2,
    s: float = 0.9,
    mono_tol: float = 1e-9,
) -> PullbackReport:
    """Hausdorff semidistance of pulled-back images to the deepest image.

    The same ensemble is released at each tau = t_fixed - offset and
    evolved to t_fixed; distances to the image of the largest offset must
    shrink as the offset grows.  The fitted rate is the least-squares slope
    of log distance against offset (used by the linear contraction
    control, where it has a closed form).
    """
    offsets = tuple(sorted(float(o) for o in tau_offsets))
    if len(offsets) < 3:
        raise ValueError("need at least three pullback offsets")
    states = energy_ensemble(
        problem.basis, n_states, energy, seed,
        lambda st: product_norm_sq(problem, alpha, st),
    )
    images = []
    for off in offsets:
        n_steps = int(round(off / h))
        if abs(n_steps * h - off) > 1e-9 * max(1.0, off):
            raise ValueError(f"h={h} does not divide the offset {off}")
        tau = t_fixed - n_steps * h
        finals = []
        for st in states:
            traj = evolve(st, tau, t_fixed, h, alpha, problem, record_every=0)
            if traj.blown:
                raise AssumptionFailure("pullback ensemble member blew up")
            finals.append(traj.final_state)
        images.append(embed_states(problem, s, finals))
    reference = images[-1]
    dists = [hausdorff_semidistance(img, reference) for img in images[:-1]]
    mono = all(dists[i] >= dists[i + 1] - mono_tol for i in range(len(dists) - 1))
    total = dists[0] / dists[-1] if dists[-1] > 0 else np.inf
    xs = np.array(offsets[:-1])
    ys = np.log(np.maximum(dists, 1e-300))
    slope = float(np.polyfit(xs, ys, 1)[0])
    return PullbackReport(
        t_fixed=t_fixed,
        offsets=offsets,
        semidistances=tuple(float(d) for d in dists),
        monotone=mono,
        total_decrease=float(total),
        fitted_rate=-slope,
    )


def linear_contraction_rate(problem: Problem, alpha: float) -> float:
    """Slowest decay rate of the autonomous linear case (closed form).

    Per mode the damped linear system has characteristic polynomial
    y^2 + (2 a + w0) y + (mu nu)^alpha + a w0 with a = cos(pi alpha/2)
    (mu nu)^(alpha/2); the rate is the least -Re over roots and modes.
    """
    if not problem.linear():
        raise ValueError("closed-form rate applies to the linear case only")
    if problem.omega.kind != "constant" or problem.mu.kind != "constant":
        raise ValueError("closed-form rate applies to constant coefficients only")
    w0 = problem.omega.omega_max
    mu = problem.mu.mu_max
    rate = np.inf
    for nu in problem.basis.eigenvalues:
        m = mu * float(nu)
        a = sin_cos_half(alpha)[1] * m ** (alpha / 2.0)
        b = 2.0 * a + w0
        c = m**alpha + a * w0
        disc = b * b - 4.0 * c
        if disc >= 0.0:
            slow = (-b + np.sqrt(disc)) / 2.0
        else:
            slow = -b / 2.0
        rate = min(rate, -slow)
    return float(rate)


def tail_energy_table(states, basis, cutoffs=None) -> list[tuple[float, float]]:
    """Worst high-mode fraction of the plain coefficient energy per cutoff.

    For each cutoff nu*, reports sup over the ensemble of the fraction of
    sum(u_k^2 + v_k^2) carried by modes with nu_k > nu*; a compactness
    surrogate (small tails = the ensemble is close to a low-dimensional
    box).
    """
    if not states:
        raise ValueError("ensemble must be nonempty")
    nus = basis.eigenvalues
    if cutoffs is None:
        qs = np.quantile(nus, [0.25, 0.5, 0.75])
        cutoffs = sorted(set(float(q) for q in qs))
    rows = []
    for nu_star in cutoffs:
        mask = nus > nu_star
        worst = 0.0
        for st in states:
            total = float(np.sum(st.u**2) + np.sum(st.v**2))
            if total == 0.0:
                continue
            tail = float(np.sum(st.u[mask] ** 2) + np.sum(st.v[mask] ** 2))
            worst = max(worst, tail / total)
        rows.append((float(nu_star), worst))
    return rows
