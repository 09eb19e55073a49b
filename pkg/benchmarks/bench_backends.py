"""Timing comparison of the numba and numpy trajectory backends.

Runs the default nonlinear configuration for a fixed horizon at several
basis sizes and reports wall time per backend plus the speedup.  The numba
figures exclude compilation (one warm-up call per kernel signature).

    python benchmarks/bench_backends.py [--t-end 20] [--csv out.csv]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from fracosc.basis import build_basis
from fracosc.coeffs import logistic_mu, logistic_omega
from fracosc.kernels import _numba_backend, _numpy_backend, evolve_arrays, make_context
from fracosc.nonlin import NonlinearitySpec
from fracosc.problem import Problem


def bench(dim: int, modes: int, t_end: float, h: float = 1e-2) -> tuple[int, float, float]:
    basis = build_basis(dim, modes)
    prob = Problem(
        basis,
        logistic_omega(0.5, 2.0, 0.1),
        logistic_mu(1.0, 2.0, 1.5e-3),
        NonlinearitySpec(1.0, 1.0, 4.0),
    )
    ctx = make_context(prob, 0.9)
    rng = np.random.default_rng(0)
    u0 = 0.1 * rng.standard_normal(basis.size)
    v0 = 0.1 * rng.standard_normal(basis.size)
    n_steps = int(round(t_end / h))

    def run(backend):
        out = evolve_arrays(ctx, u0, v0, 0.0, h, n_steps, n_steps, backend=backend)
        assert out[4] == -1, "benchmark trajectory blew up"
        return out

    run(_numba_backend)  # warm-up: compile outside the timed region
    t0 = time.perf_counter()
    out_nb = run(_numba_backend)
    t_nb = time.perf_counter() - t0
    t0 = time.perf_counter()
    out_np = run(_numpy_backend)
    t_np = time.perf_counter() - t0
    drift = float(np.max(np.abs(out_nb[1][-1] - out_np[1][-1])))
    assert drift <= 1e-10, f"backends disagree: {drift}"
    return basis.size, t_nb, t_np


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t-end", type=float, default=20.0)
    ap.add_argument("--csv", default=None)
    args = ap.parse_args()

    cases = [(1, 16), (2, 8), (3, 4), (3, 6)]
    rows = []
    print(f"{'basis':>10} {'modes':>6} {'numba [s]':>10} {'numpy [s]':>10} {'speedup':>8}")
    for dim, modes in cases:
        k, t_nb, t_np = bench(dim, modes, args.t_end)
        rows.append((dim, modes, k, t_nb, t_np, t_np / t_nb))
        print(f"{dim}d M={modes:<4} {k:>6} {t_nb:>10.3f} {t_np:>10.3f} {t_np / t_nb:>8.1f}x")
    if args.csv:
        from fracosc.output import write_csv

        write_csv(args.csv, ["dim", "modes_per_axis", "n_modes", "numba_s", "numpy_s", "speedup"],
                  rows, {"t_end": args.t_end})
        print(f"wrote {args.csv}")


if __name__ == "__main__":
    main()
