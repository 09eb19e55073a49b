"""Spectral solver and verification suite for fractional oscillon dynamics.

The package simulates the first-order system  dw/dt + L(t)^a w = F(t, w)
obtained from the damped wave equation  u_tt + omega(t) u_t - mu(t) Lap u = f(u)
on the box (0, pi)^d with zero boundary values, where L(t)^a is the fractional
power of the wave operator, realized exactly as a 2x2 block per Laplacian
eigenmode.  On top of the integrator it provides the energy / Lyapunov
functionals and the absorbing-set and pullback-attraction experiments used to
check the dissipativity theory at desk scale.
"""

from fracosc.basis import SpectralBasis, build_basis, sobolev_norm, embedding_constant
from fracosc.coeffs import (
    OmegaModel,
    MuModel,
    StructuralConstants,
    compute_constants,
    decay_rate,
    check_assumptions,
)
from fracosc.nonlin import NonlinearitySpec
from fracosc.problem import Problem
from fracosc.dynamics import State, TrajectoryRecord, evolve, step, recover_velocity

__version__ = "0.1.0"

__all__ = [
    "SpectralBasis",
    "build_basis",
    "sobolev_norm",
    "embedding_constant",
    "OmegaModel",
    "MuModel",
    "StructuralConstants",
    "compute_constants",
    "decay_rate",
    "check_assumptions",
    "NonlinearitySpec",
    "Problem",
    "State",
    "TrajectoryRecord",
    "evolve",
    "step",
    "recover_velocity",
]
