"""Hot loops of the time stepper, with numba- and numpy-backed variants.

The exponential two-stage step is exact for the frozen linear part and
second order overall; one step per mode costs a handful of complex scalars,
so for long trajectories the Python-level loop dominates.  The numba
backend compiles the whole trajectory loop; the numpy backend keeps the
loop in Python with vectorized per-step math and is the reference
implementation.

Backend selection: the environment variable ``FRACOSC_NUMBA`` set to
``0``/``false``/``off`` forces the numpy path; otherwise numba is used when
importable.  ``benchmarks/bench_backends.py`` compares the two.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from fracosc.problem import Problem

__all__ = ["KernelContext", "make_context", "get_backend", "backend_name", "USING_NUMBA", "evolve_arrays"]

_KIND_CODE = {"constant": 0, "logistic": 1}


@dataclass(frozen=True)
class KernelContext:
    """Plain-array view of a Problem, consumable by either backend."""

    dim: int
    modes: int
    size: int
    nu: np.ndarray
    gather_tensor_from_sorted: np.ndarray
    gather_sorted_from_tensor: np.ndarray
    perm_rotate: np.ndarray
    synth: np.ndarray
    anal: np.ndarray
    alpha: float
    om_kind: int
    om_lo: float
    om_hi: float
    om_steep: float
    mu_kind: int
    mu_lo: float
    mu_hi: float
    mu_steep: float
    beta: float
    lam: float
    rho: float
    blow_threshold: float


def make_context(problem: Problem, alpha: float, blow_threshold: float = 1e12) -> KernelContext:
    from fracosc.basis import dst_matrices

    basis = problem.basis
    m, d, k = basis.modes_per_axis, basis.dim, basis.size
    synth, anal = dst_matrices(m)
    perm = np.arange(k).reshape((m,) * d)
    perm = perm.transpose(tuple(range(1, d)) + (0,)).ravel().astype(np.int64)
    return KernelContext(
        dim=d,
        modes=m,
        size=k,
        nu=basis.eigenvalues.astype(np.float64),
        gather_tensor_from_sorted=basis.sorted_from_tensor.astype(np.int64),
        gather_sorted_from_tensor=basis.tensor_from_sorted.astype(np.int64),
        perm_rotate=perm,
        synth=np.ascontiguousarray(synth),
        anal=np.ascontiguousarray(anal),
        alpha=float(alpha),
        om_kind=_KIND_CODE[problem.omega.kind],
        om_lo=problem.omega.omega_min,
        om_hi=problem.omega.omega_max,
        om_steep=problem.omega.steepness,
        mu_kind=_KIND_CODE[problem.mu.kind],
        mu_lo=problem.mu.mu_min,
        mu_hi=problem.mu.mu_max,
        mu_steep=problem.mu.steepness,
        beta=problem.nonlin.beta,
        lam=problem.nonlin.lambda_f,
        rho=problem.nonlin.rho,
        blow_threshold=float(blow_threshold),
    )


def _env_disables_numba() -> bool:
    return os.environ.get("FRACOSC_NUMBA", "1").strip().lower() in ("0", "false", "no", "off")


USING_NUMBA = False
if not _env_disables_numba():
    try:
        from fracosc.kernels import _numba_backend as _backend

        USING_NUMBA = True
    except ImportError:
        from fracosc.kernels import _numpy_backend as _backend
else:
    from fracosc.kernels import _numpy_backend as _backend


def get_backend():
    return _backend


def backend_name() -> str:
    return "numba" if USING_NUMBA else "numpy"


def evolve_arrays(
    ctx: KernelContext,
    u0: np.ndarray,
    v0: np.ndarray,
    tau: float,
    h: float,
    n_steps: int,
    record_every: int = 1,
    backend=None,
):
    """Run the trajectory loop; returns (times, U, V, n_recorded, blown_step).

    Rows hold the initial state, every ``record_every``-th step, and the
    final step.  ``blown_step`` is -1 unless a coefficient left the
    resolvable range, in which case the record stops at the last finite
    state.
    """
    mod = backend if backend is not None else _backend
    if n_steps < 0:
        raise ValueError("n_steps must be >= 0")
    if record_every < 1:
        record_every = max(n_steps, 1)
    u0 = np.ascontiguousarray(u0, dtype=np.float64)
    v0 = np.ascontiguousarray(v0, dtype=np.float64)
    return mod.evolve_loop(
        u0, v0, float(tau), float(h), int(n_steps), int(record_every),
        ctx.nu, ctx.gather_tensor_from_sorted, ctx.gather_sorted_from_tensor,
        ctx.perm_rotate, ctx.synth, ctx.anal,
        ctx.dim, ctx.modes,
        ctx.alpha,
        ctx.om_kind, ctx.om_lo, ctx.om_hi, ctx.om_steep,
        ctx.mu_kind, ctx.mu_lo, ctx.mu_hi, ctx.mu_steep,
        ctx.beta, ctx.lam, ctx.rho,
        ctx.blow_threshold,
    )
