"""Sectioned key-value experiment configuration.

Format: INI-style sections read by ``configparser``.  Unknown keys are
rejected so typos fail fast and the offending key is named.  Example with
every section (defaults shown by ``fracosc print-config``):

    [basis]
    dim = 3
    modes_per_axis = 4

    [omega]
    kind = logistic          ; or: constant (then only omega_max is used)
    omega_min = 0.5
    omega_max = 2.0
    steepness = 0.1

    [mu]
    kind = logistic
    mu_min = 1.0
    mu_max = 2.0
    steepness = auto         ; auto = largest value passing the envelope check

    [nonlinearity]
    beta = 1.0
    lambda_f = 1.0
    rho = 4.0

    [scheme]
    alpha = 0.9
    s = 0.9
    h = 0.01
    t_start = 0.0
    t_end = 50.0
    seed = 1234

    [experiment]
    kind = decay_check
    ; kind-specific keys, see the handlers in cli.py

    [output]
    out_dir = out
    write_states = false
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from fracosc.basis import build_basis
from fracosc.coeffs import MuModel, OmegaModel, largest_delta_mu
from fracosc.nonlin import NonlinearitySpec, growth_window, theta_exponents
from fracosc.problem import Problem

__all__ = ["ConfigError", "ExperimentConfig", "load_config", "default_config_text", "EXPERIMENT_KINDS"]

EXPERIMENT_KINDS = (
    "verify_operator",
    "check_assumptions",
    "simulate",
    "energy_report",
    "decay_check",
    "absorbing",
    "pullback",
    "spectrum_table",
)


class ConfigError(ValueError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key
        self.message = message


_KNOWN_KEYS = {
    "basis": {"dim", "modes_per_axis"},
    "omega": {"kind", "omega_min", "omega_max", "steepness", "holder_zeta", "holder_kappa0"},
    "mu": {"kind", "mu_min", "mu_max", "steepness", "holder_gamma", "holder_kappa"},
    "nonlinearity": {"beta", "lambda_f", "rho"},
    "scheme": {"alpha", "s", "h", "t_start", "t_end", "seed"},
    "output": {"out_dir", "write_states"},
}


@dataclass
class ExperimentConfig:
    problem: Problem
    alpha: float
    s: float
    h: float
    t_start: float
    t_end: float
    seed: int
    kind: str
    options: dict = field(default_factory=dict)
    out_dir: Path = Path("out")
    write_states: bool = False

    def assumption_grid(self, n: int = 160) -> np.ndarray:
        span = max(self.t_end - self.t_start, 1.0)
        return np.linspace(self.t_start - 1.2 * span, self.t_end, n)


def _get(parser, section, key, cast, default=None, required=False):
    full = f"{section}.{key}"
    if not parser.has_option(section, key):
        if required:
            raise ConfigError(full, "missing required key")
        return default
    raw = parser.get(section, key).strip()
    try:
        if cast is bool:
            if raw.lower() in ("1", "true", "yes", "on"):
                return True
            if raw.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError("not a boolean")
        return cast(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(full, f"cannot parse {raw!r}: {exc}") from None


def _check_known(parser) -> None:
    for section in parser.sections():
        if section == "experiment":
            continue
        if section not in _KNOWN_KEYS:
            raise ConfigError(section, "unknown section")
        for key in parser.options(section):
            if key not in _KNOWN_KEYS[section]:
                raise ConfigError(f"{section}.{key}", "unknown key")


def default_config_text(kind: str = "decay_check") -> str:
    return f"""[basis]
dim = 3
modes_per_axis = 4

[omega]
kind = logistic
omega_min = 0.5
omega_max = 2.0
steepness = 0.1

[mu]
kind = logistic
mu_min = 1.0
mu_max = 2.0
steepness = auto

[nonlinearity]
beta = 1.0
lambda_f = 1.0
rho = 4.0

[scheme]
alpha = 0.9
s = 0.9
h = 0.01
t_start = 0.0
t_end = 50.0
seed = 1234

[experiment]
kind = {kind}

[output]
out_dir = out
write_states = false
"""


def _parse(parser: configparser.ConfigParser) -> ExperimentConfig:
    _check_known(parser)
    dim = _get(parser, "basis", "dim", int, 3)
    modes = _get(parser, "basis", "modes_per_axis", int, 4)
    try:
        basis = build_basis(dim, modes)
    except ValueError as exc:
        raise ConfigError("basis.dim", str(exc)) from None

    om_kind = _get(parser, "omega", "kind", str, "logistic")
    if om_kind not in ("constant", "logistic"):
        raise ConfigError("omega.kind", f"unknown kind {om_kind!r}")
    try:
        omega = OmegaModel(
            kind=om_kind,
            omega_min=_get(parser, "omega", "omega_min", float, 0.5),
            omega_max=_get(parser, "omega", "omega_max", float, 2.0),
            steepness=_get(parser, "omega", "steepness", float, 0.1 if om_kind == "logistic" else 0.0),
            holder_zeta=_get(parser, "omega", "holder_zeta", float, 1.0),
            holder_kappa0=_get(parser, "omega", "holder_kappa0", float, None),
        )
    except ValueError as exc:
        raise ConfigError("omega", str(exc)) from None

    alpha = _get(parser, "scheme", "alpha", float, 0.9)
    if not (0.0 < alpha <= 1.0):
        raise ConfigError("scheme.alpha", f"alpha must lie in (0, 1], got {alpha}")

    mu_kind = _get(parser, "mu", "kind", str, "logistic")
    if mu_kind not in ("constant", "logistic"):
        raise ConfigError("mu.kind", f"unknown kind {mu_kind!r}")
    mu_min = _get(parser, "mu", "mu_min", float, 1.0)
    mu_max = _get(parser, "mu", "mu_max", float, 2.0)
    steep_raw = _get(parser, "mu", "steepness", str, "auto" if mu_kind == "logistic" else "0")
    t_start = _get(parser, "scheme", "t_start", float, 0.0)
    t_end = _get(parser, "scheme", "t_end", float, 50.0)
    if t_end < t_start:
        raise ConfigError("scheme.t_end", "t_end must be >= t_start")
    if mu_kind == "logistic" and steep_raw.strip().lower() == "auto":
        span = max(t_end - t_start, 1.0)
        grid = np.linspace(t_start - 1.2 * span, t_end, 160)
        mu_steep = largest_delta_mu(omega, mu_min, mu_max, alpha, basis, grid)
    else:
        try:
            mu_steep = float(steep_raw)
        except ValueError:
            raise ConfigError("mu.steepness", f"cannot parse {steep_raw!r}") from None
    try:
        mu = MuModel(
            kind=mu_kind,
            mu_min=mu_min,
            mu_max=mu_max,
            steepness=mu_steep,
            holder_gamma=_get(parser, "mu", "holder_gamma", float, 1.0),
            holder_kappa=_get(parser, "mu", "holder_kappa", float, None),
        )
    except ValueError as exc:
        raise ConfigError("mu", str(exc)) from None

    try:
        nonlin = NonlinearitySpec(
            beta=_get(parser, "nonlinearity", "beta", float, 1.0),
            lambda_f=_get(parser, "nonlinearity", "lambda_f", float, 1.0),
            rho=_get(parser, "nonlinearity", "rho", float, 4.0),
        )
    except ValueError as exc:
        raise ConfigError("nonlinearity", str(exc)) from None

    s = _get(parser, "scheme", "s", float, 0.9)
    h = _get(parser, "scheme", "h", float, 0.01)
    if h <= 0:
        raise ConfigError("scheme.h", "h must be positive")
    seed = _get(parser, "scheme", "seed", int, 1234)

    # admissibility of (rho, s, alpha) on dimensions where the growth
    # window applies; lower dimensions are diagnostic bases
    if dim >= 3 and not (nonlin.beta == 0.0 and nonlin.lambda_f == 0.0):
        lo, hi = growth_window(dim)
        if not (lo < nonlin.rho < hi):
            raise ConfigError("nonlinearity.rho", f"rho must lie in ({lo:.4g}, {hi:.4g}) for dim={dim}")
        try:
            theta_exponents(dim, nonlin.rho, s, alpha)
        except ValueError as exc:
            raise ConfigError("scheme.s", str(exc)) from None

    kind = "decay_check"
    options: dict = {}
    if parser.has_section("experiment"):
        kind = parser.get("experiment", "kind", fallback="decay_check").strip()
        if kind not in EXPERIMENT_KINDS:
            raise ConfigError("experiment.kind", f"unknown kind {kind!r}; choose from {EXPERIMENT_KINDS}")
        options = {k: parser.get("experiment", k).strip() for k in parser.options("experiment") if k != "kind"}

    return ExperimentConfig(
        problem=Problem(basis, omega, mu, nonlin),
        alpha=alpha, s=s, h=h, t_start=t_start, t_end=t_end, seed=seed,
        kind=kind, options=options,
        out_dir=Path(_get(parser, "output", "out_dir", str, "out")),
        write_states=_get(parser, "output", "write_states", bool, False),
    )


def load_config(path: str | Path | None = None, kind: str | None = None) -> ExperimentConfig:
    """Parse a config file; with path = None the built-in defaults are used."""
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    if path is None:
        parser.read_string(default_config_text(kind or "decay_check"))
    else:
        path = Path(path)
        if not path.exists():
            raise ConfigError("config", f"file not found: {path}")
        try:
            with open(path) as fh:
                parser.read_file(fh)
        except configparser.Error as exc:
            raise ConfigError("config", f"parse error: {exc}") from None
    cfg = _parse(parser)
    if kind is not None:
        cfg.kind = kind
    return cfg
