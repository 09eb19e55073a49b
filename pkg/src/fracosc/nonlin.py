"""Dissipative nonlinearity f(s) = beta s - lambda_f |s|^(rho-1) s.

This family satisfies the growth bound |f'(s)| <= C (1 + |s|^(rho-1)) with
C = |beta| + rho lambda_f, and f(s)/s -> -inf as |s| -> inf, so for every
eps > 0 there is a finite dissipation offset

    C_eps = |Omega| sup_s (f(s) s - eps s^2),

computable in closed form because the supremand is a power function.  The
composition operator u(x) -> f(u(x)) is evaluated by collocation: inverse
transform, pointwise application, forward transform.  The plain M-node grid
aliases products; ``refine`` switches to ceil((rho+1)/2) x M nodes, which is
exact for odd integer rho and is what the test oracles use.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fracosc.basis import SpectralBasis, dst_matrices, mode_weights

__all__ = [
    "NonlinearitySpec",
    "BlowUpError",
    "apply_f",
    "potential",
    "c_epsilon",
    "rhs_F",
    "growth_window",
    "nonlinearity_bound_report",
    "e_theta_norm",
    "theta_exponents",
]


class BlowUpError(RuntimeError):
    """Grid values overflowed; the trajectory left the resolvable range."""


@dataclass(frozen=True)
class NonlinearitySpec:
    beta: float
    lambda_f: float
    rho: float

    def __post_init__(self):
        if self.lambda_f < 0:
            raise ValueError("lambda_f must be nonnegative")
        if self.rho <= 1:
            raise ValueError("rho must exceed 1")

    @property
    def growth_constant(self) -> float:
        """C in |f'(s)| <= C (1 + |s|^(rho-1))."""
        return abs(self.beta) + self.rho * self.lambda_f

    def f(self, s):
        s = np.asarray(s, dtype=np.float64)
        return self.beta * s - self.lambda_f * np.abs(s) ** (self.rho - 1.0) * s

    def f_primitive(self, s):
        """G(s) = int_0^s f = beta s^2/2 - lambda_f |s|^(rho+1)/(rho+1)."""
        s = np.asarray(s, dtype=np.float64)
        return 0.5 * self.beta * s**2 - self.lambda_f * np.abs(s) ** (self.rho + 1.0) / (self.rho + 1.0)

    @property
    def dealias_factor(self) -> int:
        return int(np.ceil((self.rho + 1.0) / 2.0))


def growth_window(dim: int) -> tuple[float, float]:
    """Admissible exponent window N/(N-2) < rho < (N+2)/(N-2) for dim >= 3."""
    if dim < 3:
        raise ValueError("the growth window is defined for dim >= 3")
    return dim / (dim - 2.0), (dim + 2.0) / (dim - 2.0)


def theta_exponents(dim: int, rho: float, s: float, alpha: float) -> tuple[float, float]:
    """Scale indices theta1 = (rho s - N(rho-1)/2)/alpha, theta2 = (s-1)/alpha.

    Validates the admissibility of the (rho, s, alpha) triple: s inside its
    window, alpha >= N(rho-1)/2 - rho s, and the resulting indices ordered
    with theta1 in [-1, 0) and theta2 in (theta1, 1).
    """
    s_lo = (dim / 2.0) * (1.0 - 1.0 / rho) - 1.0 / rho
    if not (s_lo < s < 1.0):
        raise ValueError(f"s={s} outside the admissible window ({s_lo:.4g}, 1)")
    alpha_lo = (dim / 2.0) * (rho - 1.0) - rho * s
    if alpha < alpha_lo - 1e-12 or not (0 < alpha <= 1):
        raise ValueError(f"alpha={alpha} below the admissible floor {alpha_lo:.4g}")
    theta1 = (-(dim / 2.0) * (rho - 1.0) + rho * s) / alpha
    theta2 = (s - 1.0) / alpha
    if not (-1.0 - 1e-12 <= theta1 < 0.0 and theta1 < theta2 < 1.0 and 0.0 < theta2 - theta1 < 1.0):
        raise ValueError(f"inadmissible scale indices theta1={theta1:.4g}, theta2={theta2:.4g}")
    return theta1, theta2


def _refined_grid(basis: SpectralBasis, coeffs: np.ndarray, m_ref: int) -> np.ndarray:
    """Evaluate a coefficient vector on a refined (m_ref nodes/axis) grid."""
    tensor = np.zeros(basis.size)
    tensor[basis.tensor_from_sorted] = coeffs
    tensor = tensor.reshape(basis.grid_shape())
    m = basis.modes_per_axis
    pad = [(0, m_ref - m)] * basis.dim
    tensor = np.pad(tensor, pad)
    synth, _ = dst_matrices(m_ref)
    for _ in range(basis.dim):
        tensor = np.moveaxis(np.tensordot(synth, tensor, axes=(1, 0)), 0, -1)
    return tensor


def _project_refined(basis: SpectralBasis, grid: np.ndarray, m_ref: int) -> np.ndarray:
    _, anal = dst_matrices(m_ref)
    tensor = grid
    for _ in range(basis.dim):
        tensor = np.moveaxis(np.tensordot(anal, tensor, axes=(1, 0)), 0, -1)
    m = basis.modes_per_axis
    sl = tuple(slice(0, m) for _ in range(basis.dim))
    return tensor[sl].ravel()[basis.tensor_from_sorted]


def apply_f(spec: NonlinearitySpec, basis: SpectralBasis, u: np.ndarray, refine: int = 1) -> np.ndarray:
    """Collocation image of the composition operator u -> f(u), truncated.

    refine = 1 uses the plain M-node grid; refine = spec.dealias_factor uses
    the padded grid (exact for odd integer rho).
    """
    u = np.asarray(u, dtype=np.float64)
    if u.shape != (basis.size,):
        raise ValueError("coefficient length does not match basis size")
    if refine < 1:
        raise ValueError("refine must be >= 1")
    m_ref = refine * basis.modes_per_axis
    grid = _refined_grid(basis, u, m_ref)
    values = spec.f(grid)
    if not np.all(np.isfinite(values)):
        raise BlowUpError("nonlinearity overflowed on the collocation grid")
    return _project_refined(basis, values, m_ref)


def potential(spec: NonlinearitySpec, basis: SpectralBasis, u: np.ndarray, refine: int = 1) -> float:
    """V(u) = int_Omega G(u(x)) dx by collocation quadrature."""
    u = np.asarray(u, dtype=np.float64)
    if u.shape != (basis.size,):
        raise ValueError("coefficient length does not match basis size")
    m_ref = refine * basis.modes_per_axis
    grid = _refined_grid(basis, u, m_ref)
    w = (np.pi / (m_ref + 1)) ** basis.dim
    return float(w * np.sum(spec.f_primitive(grid)))


def c_epsilon(spec: NonlinearitySpec, basis: SpectralBasis, eps: float) -> float:
    """C_eps = |Omega| sup_s (f(s) s - eps s^2), by the closed-form maximizer.

    The supremand is (beta - eps) s^2 - lambda_f |s|^(rho+1); for
    beta <= eps it is nonpositive and the sup is 0; otherwise the sup sits at
    |s|^(rho-1) = 2(beta - eps) / ((rho+1) lambda_f).
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    a = spec.beta - eps
    if a <= 0:
        return 0.0
    if spec.lambda_f == 0:
        raise ValueError("beta > eps with lambda_f = 0 has no finite dissipation offset")
    s_pow = 2.0 * a / ((spec.rho + 1.0) * spec.lambda_f)   # = |s*|^(rho-1)
    s2 = s_pow ** (2.0 / (spec.rho - 1.0))
    sup = a * s2 * (spec.rho - 1.0) / (spec.rho + 1.0)
    return float(basis.volume * sup)


def rhs_F(spec: NonlinearitySpec, omega_model, basis: SpectralBasis, t: float, state, refine: int = 1):
    """Right-hand side (0, f(u) - omega(t) v) in spectral coordinates."""
    from fracosc.coeffs import eval_omega  # local import to avoid cycle at module load

    u, v = state
    fu = apply_f(spec, basis, u, refine=refine)
    return np.zeros_like(fu), fu - float(eval_omega(omega_model, t)) * np.asarray(v, dtype=np.float64)


def e_theta_norm(basis: SpectralBasis, alpha: float, theta: float, u: np.ndarray, v: np.ndarray) -> float:
    """Product norm of the diagonal scale X^((1+a th)/2) x X^(a th/2)."""
    wu = mode_weights(basis, (1.0 + alpha * theta) / 2.0)
    wv = mode_weights(basis, alpha * theta / 2.0)
    return float(np.sqrt(np.sum((wu * u) ** 2) + np.sum((wv * v) ** 2)))


def nonlinearity_bound_report(
    spec: NonlinearitySpec,
    omega_model,
    basis: SpectralBasis,
    alpha: float,
    s: float,
    n_samples: int = 100,
    magnitudes=(1.0, 10.0, 100.0),
    seed: int = 0,
):
    """Empirical sup of ||F(t,w)|| / (1 + ||w||^rho) across state magnitudes.

    Norms live on the scale indices theta1 (image) and theta2 (argument)
    determined by (rho, s, alpha).  The returned per-magnitude maxima must
    stabilize as the magnitude grows if the power-growth bound holds.
    """
    theta1, theta2 = theta_exponents(basis.dim, spec.rho, s, alpha)
    rng = np.random.default_rng(seed)
    out = []
    for mag in magnitudes:
        worst = 0.0
        for _ in range(n_samples):
            u = rng.standard_normal(basis.size)
            v = rng.standard_normal(basis.size)
            scale = mag / max(e_theta_norm(basis, alpha, theta2, u, v), 1e-300)
            u, v = scale * u, scale * v
            fu, fv = rhs_F(spec, omega_model, basis, 0.0, (u, v), refine=spec.dealias_factor)
            num = e_theta_norm(basis, alpha, theta1, fu, fv)
            den = 1.0 + e_theta_norm(basis, alpha, theta2, u, v) ** spec.rho
            worst = max(worst, num / den)
        out.append((float(mag), float(worst)))
    return out
