"""Reproducible random states via the counter-based Philox generator.

Draw order is documented so any implementation can reproduce the
ensembles: one Philox4x64-10 stream keyed by the seed; per member, first
the u coefficients (basis.size standard normals), then the v coefficients,
then one uniform in (0, 1] for the target energy fraction when an energy
cap is requested.
"""

from __future__ import annotations

import numpy as np

from fracosc.basis import SpectralBasis
from fracosc.dynamics import State

__all__ = ["philox_rng", "gaussian_state", "state_with_energy", "energy_ensemble"]


def philox_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed))


def gaussian_state(basis: SpectralBasis, rng: np.random.Generator) -> State:
    u = rng.standard_normal(basis.size)
    v = rng.standard_normal(basis.size)
    return State(u, v)


def state_with_energy(state: State, energy: float, energy_of) -> State:
    """Scale a state so the quadratic functional ``energy_of`` hits ``energy``."""
    e0 = energy_of(state)
    if e0 <= 0:
        raise ValueError("cannot scale a zero-energy state")
    return state.scaled(float(np.sqrt(energy / e0)))


def energy_ensemble(
    basis: SpectralBasis,
    n: int,
    energy_max: float,
    seed: int,
    energy_of,
) -> list[State]:
    """n Gaussian states rescaled to energies energy_max * U_i, U_i in (0, 1]."""
    rng = philox_rng(seed)
    out = []
    for _ in range(n):
        st = gaussian_state(basis, rng)
        frac = 1.0 - rng.random()  # in (0, 1]
        out.append(state_with_energy(st, energy_max * frac, energy_of))
    return out
