import numpy as np
import pytest

from fracosc.basis import build_basis
from fracosc.coeffs import (
    MuModel,
    OmegaModel,
    check_assumptions,
    compute_constants,
    constant_mu,
    constant_omega,
    decay_rate,
    eval_mu,
    eval_mu_prime,
    eval_omega,
    eval_theta_envelope,
    largest_delta_mu,
    logistic_mu,
    logistic_omega,
    mu_half_power_holder_constant,
)


def test_logistic_mu_midpoint():
    mu = logistic_mu(1.0, 2.0, 0.3)
    assert eval_mu(mu, 0.0) == pytest.approx(1.5, rel=1e-15)
    assert eval_mu_prime(mu, 0.0) > 0


def test_constant_omega_everywhere():
    om = constant_omega(2.0)
    for t in (-10.0, 0.0, 7.5):
        assert eval_omega(om, t) == 2.0


def test_logistic_omega_asymptote_is_sup():
    om = logistic_omega(0.5, 2.0, 0.1)
    assert eval_omega(om, -1e3) == pytest.approx(2.0, abs=1e-12)
    assert om.sup == 2.0
    ts = np.linspace(-50, 50, 101)
    vals = eval_omega(om, ts)
    assert np.all(np.diff(vals) < 0)
    assert np.all(vals > 0)


def test_decay_rate_example():
    b = build_basis(1, 4)  # d0 = d1 = 1
    om = constant_omega(2.0)
    consts = compute_constants(om, constant_mu(1.0), 0.9, b, 0.0, 0.0)
    assert consts.c1 == 1.0
    assert decay_rate(om, consts, 0.0) == pytest.approx(0.0625, rel=1e-15)


def test_decay_rate_caps():
    b = build_basis(3, 4)
    om = logistic_omega(0.5, 2.0, 0.1)
    consts = compute_constants(om, constant_mu(1.0), 0.9, b, 0.0, 50.0)
    ts = np.linspace(-20, 50, 50)
    eps = decay_rate(om, consts, ts)
    w = eval_omega(om, ts)
    assert np.all(eps <= 1.0)
    assert np.all(eps <= w / 4.0 + 1e-15)
    assert np.all(np.diff(eps) <= 1e-15)  # nonincreasing along decreasing omega


def test_decay_rate_third_fourth_terms_nu_min_one():
    b = build_basis(1, 4)
    om = constant_omega(40.0)  # omega/4 = 10 is never the min
    consts = compute_constants(om, constant_mu(1.0), 0.9, b, 0.0, 0.0)
    expected = min(1.0, 10.0, consts.c1 / (4.0 * (40.0 + 2.0)), 1.0 / 3.0)
    assert decay_rate(om, consts, 0.0) == pytest.approx(expected, rel=1e-15)


def test_constants_nu_min_one_example():
    b = build_basis(1, 4)
    om = constant_omega(2.0)
    c = compute_constants(om, constant_mu(1.0), 0.9, b, 0.0, 0.0)
    assert (c.d0, c.d1, c.d2, c.d3, c.d4, c.d5) == (1.0,) * 6
    assert c.c1 == 1.0
    assert c.c2 == 7.0  # max{1+4+2, 2(1+2), 3}
    assert c.C1 == 1.0
    assert c.C2 == 4.0  # max{3 mu_max + 1, 2}
    assert c.M0 == 7.0 and c.M1 == 0.0 and c.R_abs == 1.0


def test_constants_with_offset_and_small_damping():
    b = build_basis(1, 4)
    om = constant_omega(2.0)
    c = compute_constants(om, constant_mu(1.0), 0.9, b, 1.0, 0.0)
    assert c.M1 == 20.0 and c.R_abs == 41.0 and c.D3 == 2.0
    c2 = compute_constants(constant_omega(1.0), constant_mu(1.0), 0.9, b, 0.0, 0.0)
    assert c2.c1 == 0.5


def test_constants_monotone_in_c_eps():
    b = build_basis(3, 4)
    om = logistic_omega(0.5, 2.0, 0.1)
    mu = constant_mu(1.0)
    lo = compute_constants(om, mu, 0.9, b, 1.0, 0.0)
    hi = compute_constants(om, mu, 0.9, b, 5.0, 0.0)
    assert hi.M1 > lo.M1 and hi.D3 > lo.D3 and hi.R_abs > lo.R_abs


def test_constants_invariants():
    b = build_basis(3, 4)
    c = compute_constants(logistic_omega(0.5, 2.0, 0.1), logistic_mu(1.0, 2.0, 1e-3), 0.9, b, 2.0, 50.0)
    for name in ("d0", "d1", "d2", "d3", "d4", "d5", "c1", "c2", "C1", "C2", "D1", "D2", "M0", "R_abs"):
        assert getattr(c, name) > 0
    assert c.c1 <= 1.0 and c.C1 <= 1.0


def test_constants_reject_bad_alpha():
    b = build_basis(1, 2)
    with pytest.raises(ValueError):
        compute_constants(constant_omega(1.0), constant_mu(1.0), 1.5, b, 0.0, 0.0)
    with pytest.raises(ValueError):
        compute_constants(constant_omega(1.0), constant_mu(1.0), 0.0, b, 0.0, 0.0)


def _default_grid():
    return np.linspace(-60.0, 50.0, 120)


def test_assumptions_default_config_pass(default_problem):
    rep = check_assumptions(default_problem.omega, default_problem.mu, 0.9,
                            default_problem.basis, _default_grid())
    assert rep.passed, [it.name for it in rep.failures()]


def test_assumptions_steep_mu_fails_envelope(default_problem):
    steep = logistic_mu(1.0, 2.0, 10.0)
    rep = check_assumptions(default_problem.omega, steep, 0.9, default_problem.basis, _default_grid())
    assert not rep.passed
    assert any(it.name == "mu_envelope" for it in rep.failures())
    # failures carry the witness time
    fail = [it for it in rep.failures() if it.name == "mu_envelope"][0]
    assert fail.witness_t is not None


def test_assumptions_increasing_omega_fails(default_problem):
    rising = OmegaModel(kind="logistic", omega_min=0.5, omega_max=2.0, steepness=-0.1)
    rep = check_assumptions(rising, default_problem.mu, 0.9, default_problem.basis, _default_grid())
    assert any(it.name == "omega_nonincreasing" for it in rep.failures())


def test_mu_half_power_holder_verified_on_grid(default_problem):
    mu = default_problem.mu
    kappa = mu_half_power_holder_constant(mu, 0.9)
    grid = _default_grid()
    vals = np.asarray(eval_mu(mu, grid)) ** 0.45
    dv = np.abs(vals[:, None] - vals[None, :])
    dt = np.abs(grid[:, None] - grid[None, :]) ** 0.25
    np.fill_diagonal(dt, np.inf)
    assert np.max(dv / dt) <= kappa * (1 + 1e-12)


def test_theta_envelope_definition():
    mu = logistic_mu(1.0, 2.0, 0.01)
    for t in (-3.0, 0.0, 4.0):
        assert eval_theta_envelope(mu, t) == pytest.approx(eval_mu_prime(mu, t) / eval_mu(mu, t), rel=1e-14)


def test_largest_delta_mu_is_maximal(default_problem):
    grid = np.linspace(-60.0, 50.0, 80)
    om, basis = default_problem.omega, default_problem.basis
    best = largest_delta_mu(om, 1.0, 2.0, 0.9, basis, grid, tol=1e-3)
    ok = check_assumptions(om, logistic_mu(1.0, 2.0, best), 0.9, basis, grid)
    assert all(it.passed for it in ok.items if it.name == "mu_envelope")
    bad = check_assumptions(om, logistic_mu(1.0, 2.0, 2.0 * best), 0.9, basis, grid)
    assert not all(it.passed for it in bad.items if it.name == "mu_envelope")


def test_model_validation():
    with pytest.raises(ValueError):
        MuModel(kind="constant", mu_min=2.0, mu_max=1.0)
    with pytest.raises(ValueError):
        MuModel(kind="constant", mu_min=0.0, mu_max=0.0)
    with pytest.raises(ValueError):
        OmegaModel(kind="constant", omega_min=-1.0, omega_max=-1.0)
    with pytest.raises(ValueError):
        MuModel(kind="logistic", mu_min=1.0, mu_max=2.0, steepness=0.1, holder_gamma=0.3)
