"""Time-dependent damping / wave-speed coefficients and the constants ledger.

Built-in families:

    constant           omega(t) = W            mu(t) = mu_max (= mu_min)
    logistic-decay     omega(t) = omega_min + (omega_max - omega_min) sigma(-delta t)
    logistic-rise      mu(t)    = mu_min + (mu_max - mu_min) sigma(delta t)

with sigma the standard logistic.  Both families are smooth, globally
bounded, monotone, and have closed-form derivatives, so the structural
requirements (positivity, monotonicity, the bounds 0 < mu_min <= mu <= mu_max,
the slow-variation envelope mu' <= theta mu with sup theta <= eps_omega^2, and
declared Hoelder constants) can be verified on a sampling grid.

``compute_constants`` evaluates every named constant of the energy estimates
from the basis, the coefficient bounds and the dissipation offset C_eps; the
decay rate

    eps_omega(t) = min{1, omega(t)/4, c1 / (4 (W + 2)), d0^2 / (3 d1^2)}

is the exponential rate appearing in the a-priori energy bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy.special import expit

from fracosc.basis import SpectralBasis

__all__ = [
    "OmegaModel",
    "MuModel",
    "StructuralConstants",
    "eval_omega",
    "eval_omega_prime",
    "eval_mu",
    "eval_mu_prime",
    "eval_theta_envelope",
    "decay_rate",
    "compute_constants",
    "check_assumptions",
    "AssumptionReport",
    "largest_delta_mu",
    "mu_half_power_holder_constant",
]

Kind = Literal["constant", "logistic"]


@dataclass(frozen=True)
class OmegaModel:
    """Damping coefficient; nonincreasing, strictly positive, bounded by W."""

    kind: Kind
    omega_min: float
    omega_max: float
    steepness: float = 0.0
    holder_zeta: float = 1.0
    holder_kappa0: float | None = None

    def __post_init__(self):
        # omega = 0 is admitted as a control case; the assumption checker
        # is where strict positivity is enforced.
        if self.omega_max < 0:
            raise ValueError("omega_max must be nonnegative")
        if self.kind == "logistic":
            if not (0 <= self.omega_min <= self.omega_max):
                raise ValueError("need 0 <= omega_min <= omega_max")
            # negative steepness (a rising damping) is constructible so the
            # assumption checker can exhibit the monotonicity failure
            if self.steepness == 0:
                raise ValueError("logistic omega needs nonzero steepness")
        if not (0 < self.holder_zeta <= 1):
            raise ValueError("holder_zeta must lie in (0, 1]")
        if self.holder_kappa0 is None:
            span = self.omega_max - self.omega_min
            kappa = max(abs(self.steepness) * span / 4.0, span, 1e-12)
            object.__setattr__(self, "holder_kappa0", kappa)

    @property
    def sup(self) -> float:
        """W = sup_t omega(t)."""
        return self.omega_max


@dataclass(frozen=True)
class MuModel:
    """Squared propagation speed; 0 < mu_min <= mu(t) <= mu_max, slowly rising."""

    kind: Kind
    mu_min: float
    mu_max: float
    steepness: float = 0.0
    holder_gamma: float = 1.0
    holder_kappa: float | None = None

    def __post_init__(self):
        if not (0 < self.mu_min <= self.mu_max):
            raise ValueError("need 0 < mu_min <= mu_max")
        if self.kind == "logistic" and self.steepness == 0:
            raise ValueError("logistic mu needs nonzero steepness")
        if not (0.5 <= self.holder_gamma <= 1):
            raise ValueError("holder_gamma must lie in [1/2, 1]")
        if self.holder_kappa is None:
            span = self.mu_max - self.mu_min
            kappa = max(abs(self.steepness) * span / 4.0, span, 1e-12)
            object.__setattr__(self, "holder_kappa", kappa)


def constant_omega(value: float) -> OmegaModel:
    return OmegaModel(kind="constant", omega_min=value, omega_max=value)


def logistic_omega(omega_min: float, omega_max: float, steepness: float) -> OmegaModel:
    return OmegaModel(kind="logistic", omega_min=omega_min, omega_max=omega_max, steepness=steepness)


def constant_mu(value: float) -> MuModel:
    return MuModel(kind="constant", mu_min=value, mu_max=value)


def logistic_mu(mu_min: float, mu_max: float, steepness: float) -> MuModel:
    return MuModel(kind="logistic", mu_min=mu_min, mu_max=mu_max, steepness=steepness)


def _descalar(arr: np.ndarray, scalar: bool):
    return float(arr) if scalar else arr


def eval_omega(model: OmegaModel, t):
    tt = np.asarray(t, dtype=np.float64)
    if model.kind == "constant":
        out = np.full_like(tt, model.omega_max)
    else:
        span = model.omega_max - model.omega_min
        out = model.omega_min + span * expit(-model.steepness * tt)
    return _descalar(out, np.ndim(t) == 0)


def eval_omega_prime(model: OmegaModel, t):
    tt = np.asarray(t, dtype=np.float64)
    if model.kind == "constant":
        out = np.zeros_like(tt)
    else:
        span = model.omega_max - model.omega_min
        s = expit(-model.steepness * tt)
        out = -model.steepness * span * s * (1.0 - s)
    return _descalar(out, np.ndim(t) == 0)


def eval_mu(model: MuModel, t):
    tt = np.asarray(t, dtype=np.float64)
    if model.kind == "constant":
        out = np.full_like(tt, model.mu_max)
    else:
        span = model.mu_max - model.mu_min
        out = model.mu_min + span * expit(model.steepness * tt)
    return _descalar(out, np.ndim(t) == 0)


def eval_mu_prime(model: MuModel, t):
    tt = np.asarray(t, dtype=np.float64)
    if model.kind == "constant":
        out = np.zeros_like(tt)
    else:
        span = model.mu_max - model.mu_min
        s = expit(model.steepness * tt)
        out = model.steepness * span * s * (1.0 - s)
    return _descalar(out, np.ndim(t) == 0)


def eval_theta_envelope(model: MuModel, t):
    """Tightest envelope theta(t) = mu'(t)/mu(t) with mu' <= theta mu."""
    return eval_mu_prime(model, t) / eval_mu(model, t)


@dataclass(frozen=True)
class StructuralConstants:
    """Every named constant of the energy and absorbing-set estimates."""

    alpha: float
    t0: float
    W: float
    d0: float
    d1: float
    d2: float
    d3: float
    d4: float
    d5: float
    c1: float
    c2: float
    C1: float
    C2: float
    C_eps: float
    D1: float
    D2: float
    D3: float
    M0: float
    M1: float
    R_abs: float


def compute_constants(
    omega: OmegaModel,
    mu: MuModel,
    alpha: float,
    basis: SpectralBasis,
    C_eps: float,
    t0: float,
) -> StructuralConstants:
    """Evaluate the constants ledger for a run ending at time t0.

    The embedding constants are the sharp diagonal values on the truncation,
    extremal at nu_min.  Ratios carrying a mu_min power from the derivations
    are guarded with max(1, .) so the stated formulas remain valid bounds
    when mu_min < 1; for mu_min >= 1 the guards are inactive.
    """
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    if not np.isfinite(t0):
        raise ValueError("t0 must be finite")
    nu_min = basis.nu_min
    W = omega.sup
    d0 = nu_min ** (-(1.0 - alpha) / 4.0)
    d1 = d0 * nu_min ** (-alpha / 4.0)
    d2 = d1 * nu_min ** (-alpha / 4.0)
    d3 = nu_min ** ((alpha - 1.0) / 4.0)
    d4 = nu_min ** ((alpha - 1.0) / 2.0)
    d5 = nu_min ** (-0.5)
    g_half = max(1.0, mu.mu_min ** (-alpha / 2.0))
    g_full = max(1.0, mu.mu_min ** (-alpha))
    c1 = min(float(eval_omega(omega, t0)) / 2.0, 1.0)
    c2 = max(1.0 + 4.0 * g_half * d2**2 / d1**2 + 2.0 * g_full * d2**2 / d0**2, 2.0 * (1.0 + W), 3.0)
    C1 = min(1.0, 1.0 / d4**2)
    C2 = max(3.0 * mu.mu_max + d5**2 / d3**2, 2.0 * max(1.0, mu.mu_min ** (alpha - 1.0)))
    if C_eps < 0:
        raise ValueError("C_eps must be nonnegative")
    D1 = c1 * C1
    D2 = c2 * C2
    D3 = 2.0 * C_eps
    M0 = c2 / c1
    M1 = 20.0 * C_eps / c1
    R_abs = (1.0 + 2.0 * M1) / C1
    return StructuralConstants(
        alpha=alpha, t0=t0, W=W,
        d0=d0, d1=d1, d2=d2, d3=d3, d4=d4, d5=d5,
        c1=c1, c2=c2, C1=C1, C2=C2, C_eps=C_eps,
        D1=D1, D2=D2, D3=D3, M0=M0, M1=M1, R_abs=R_abs,
    )


def decay_rate(omega: OmegaModel, consts: StructuralConstants, t):
    """eps_omega(t) = min{1, omega(t)/4, c1/(4(W+2)), d0^2/(3 d1^2)}."""
    w = np.asarray(eval_omega(omega, t), dtype=np.float64)
    cap = min(1.0, consts.c1 / (4.0 * (consts.W + 2.0)), consts.d0**2 / (3.0 * consts.d1**2))
    return _descalar(np.minimum(w / 4.0, cap), np.ndim(t) == 0)


def mu_half_power_holder_constant(mu: MuModel, alpha: float) -> float:
    """Constant kappa' with |mu(t)^(a/2) - mu(s)^(a/2)| <= kappa' |t-s|^(1/4).

    Two regimes: for |t-s| <= 1 the mean value bound with the declared
    (gamma, kappa) Hoelder data of mu applies (gamma >= 1/2 >= 1/4); for
    |t-s| > 1 the global oscillation mu_max^(a/2) - mu_min^(a/2) suffices.
    """
    kappa = mu.holder_kappa
    local = (alpha / 2.0) * mu.mu_min ** (alpha / 2.0 - 1.0) * kappa
    global_ = mu.mu_max ** (alpha / 2.0) - mu.mu_min ** (alpha / 2.0)
    return max(local, global_)


def _sqrt_holder_constant(mu: MuModel) -> float:
    kappa = mu.holder_kappa
    local = 0.5 * mu.mu_min ** (-0.5) * kappa
    global_ = np.sqrt(mu.mu_max) - np.sqrt(mu.mu_min)
    return max(local, global_)


@dataclass(frozen=True)
class AssumptionItem:
    name: str
    passed: bool
    worst: float
    threshold: float
    witness_t: float | None = None
    note: str = ""


@dataclass(frozen=True)
class AssumptionReport:
    items: tuple[AssumptionItem, ...]
    kappa_mu_half: float
    eps_floor: float

    @property
    def passed(self) -> bool:
        return all(it.passed for it in self.items)

    def failures(self) -> list[AssumptionItem]:
        return [it for it in self.items if not it.passed]

    def to_lines(self) -> list[str]:
        out = []
        for it in self.items:
            status = "PASS" if it.passed else "FAIL"
            wit = "" if it.witness_t is None else f" at t={it.witness_t:.6g}"
            out.append(f"{status} {it.name}: worst={it.worst:.6g} threshold={it.threshold:.6g}{wit} {it.note}".rstrip())
        out.append(f"INFO kappa_mu_half={self.kappa_mu_half:.6g}")
        out.append(f"INFO eps_floor={self.eps_floor:.6g}")
        return out


def _holder_quotient(values: np.ndarray, grid: np.ndarray, exponent: float) -> tuple[float, float]:
    dv = np.abs(values[:, None] - values[None, :])
    dt = np.abs(grid[:, None] - grid[None, :]) ** exponent
    np.fill_diagonal(dt, np.inf)
    q = dv / dt
    flat = np.argmax(q)
    return float(q.ravel()[flat]), float(grid[flat // grid.size])


def check_assumptions(
    omega: OmegaModel,
    mu: MuModel,
    alpha: float,
    basis: SpectralBasis,
    sample_grid: np.ndarray,
) -> AssumptionReport:
    """Verify the structural assumptions on a finite time grid.

    Each item records the worst sampled value, its threshold and the witness
    time.  t0 for c1 and the decay rate is the last grid time, matching how
    the energy estimate fixes its reference time.
    """
    grid = np.sort(np.asarray(sample_grid, dtype=np.float64))
    if grid.size < 2:
        raise ValueError("sample_grid needs at least two points")
    t0 = float(grid[-1])
    w = np.asarray(eval_omega(omega, grid), dtype=np.float64)
    wp = np.asarray(eval_omega_prime(omega, grid), dtype=np.float64)
    m = np.asarray(eval_mu(mu, grid), dtype=np.float64)
    mp = np.asarray(eval_mu_prime(mu, grid), dtype=np.float64)

    items: list[AssumptionItem] = []

    i = int(np.argmin(w))
    items.append(AssumptionItem("omega_positive", w[i] > 0, float(w[i]), 0.0, float(grid[i])))
    i = int(np.argmax(wp))
    items.append(AssumptionItem("omega_nonincreasing", wp[i] <= 1e-14, float(wp[i]), 0.0, float(grid[i])))
    i = int(np.argmax(w))
    items.append(AssumptionItem("omega_bounded", np.isfinite(omega.sup) and w[i] <= omega.sup + 1e-12,
                                float(w[i]), omega.sup, float(grid[i])))
    q, wit = _holder_quotient(w, grid, omega.holder_zeta)
    items.append(AssumptionItem("omega_holder", q <= omega.holder_kappa0 * (1 + 1e-12), q, omega.holder_kappa0, wit))

    i = int(np.argmin(m))
    items.append(AssumptionItem("mu_lower_bound", m[i] >= mu.mu_min - 1e-12, float(m[i]), mu.mu_min, float(grid[i])))
    i = int(np.argmax(m))
    items.append(AssumptionItem("mu_upper_bound", m[i] <= mu.mu_max + 1e-12, float(m[i]), mu.mu_max, float(grid[i])))
    if mu.kind != "constant":
        i = int(np.argmin(mp))
        items.append(AssumptionItem("mu_prime_positive", mp[i] > 0, float(mp[i]), 0.0, float(grid[i])))
    q, wit = _holder_quotient(m, grid, mu.holder_gamma)
    items.append(AssumptionItem("mu_holder", q <= mu.holder_kappa * (1 + 1e-12), q, mu.holder_kappa, wit))

    kappa_half = mu_half_power_holder_constant(mu, alpha)
    q, wit = _holder_quotient(m ** (alpha / 2.0), grid, 0.25)
    items.append(AssumptionItem("mu_half_power_holder", q <= kappa_half * (1 + 1e-12), q, kappa_half, wit))

    # envelope: sup_{tau <= t} mu'/mu <= eps_omega(t)^2 for every grid t
    consts0 = compute_constants(omega, mu, alpha, basis, 0.0, t0)
    eps = np.asarray(decay_rate(omega, consts0, grid), dtype=np.float64)
    theta = mp / m
    running = np.maximum.accumulate(theta)
    slack = running - eps**2
    i = int(np.argmax(slack))
    items.append(AssumptionItem("mu_envelope", slack[i] <= 1e-14, float(running[i]), float(eps[i] ** 2),
                                float(grid[i])))

    # calibration caveats from the energy estimate: W absorbs the mu_min ratios
    W = omega.sup
    lhs1 = mu.mu_min ** (-alpha) * consts0.d2**2 / consts0.d0**2
    items.append(AssumptionItem("W_absorbs_dissipation_ratio", lhs1 <= (W + 2.0) / 2.0, lhs1, (W + 2.0) / 2.0,
                                None, "(choose W larger if this fails)"))
    lhs2 = 2.0 * np.cos(np.pi * alpha / 2.0) * mu.mu_min ** (-alpha / 2.0) * consts0.d2**2 / consts0.d1**2
    items.append(AssumptionItem("W_absorbs_cross_ratio", lhs2 <= (W + 2.0) / 2.0, lhs2, (W + 2.0) / 2.0,
                                None, "(alpha close enough to 1)"))

    return AssumptionReport(items=tuple(items), kappa_mu_half=kappa_half, eps_floor=float(np.min(eps)))


def largest_delta_mu(
    omega: OmegaModel,
    mu_min: float,
    mu_max: float,
    alpha: float,
    basis: SpectralBasis,
    sample_grid: np.ndarray,
    tol: float = 1e-4,
) -> float:
    """Largest logistic-mu steepness passing the slow-variation envelope check.

    sup_t mu'/mu is monotone in the steepness, so plain bisection applies.
    """
    grid = np.sort(np.asarray(sample_grid, dtype=np.float64))

    def ok(delta: float) -> bool:
        model = MuModel(kind="logistic", mu_min=mu_min, mu_max=mu_max, steepness=delta)
        report = check_assumptions(omega, model, alpha, basis, grid)
        return all(it.passed for it in report.items if it.name == "mu_envelope")

    lo, hi = 1e-12, 1.0
    if not ok(lo):
        raise ValueError("even a nearly constant mu fails the envelope check")
    while ok(hi) and hi < 1e6:
        lo, hi = hi, hi * 2.0
    while hi - lo > tol * hi:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo
