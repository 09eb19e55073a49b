"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Tolerances are pinned here, not configurable.  The default desk-scale
configuration (d=3, M=4, alpha=0.9, rho=4, s=0.9, h=1e-2) comes from
conftest; the limit-table criterion runs on the 1-d diagnostic basis with
constant unit wave speed, where its stated decade requirement is sharp.
"""

import numpy as np
import pytest

from fracosc.basis import build_basis
from fracosc.coeffs import constant_mu, decay_rate, logistic_mu
from fracosc.diagnostics import (
    absorbing_experiment,
    constants_for,
    decay_estimate_check,
    linear_contraction_rate,
    lyapunov_L,
    natural_energy,
    norm_equivalence_report,
    phi_functional,
    product_norm_sq,
    pullback_attraction_experiment,
    trajectory_energies,
)
from fracosc.dynamics import State, evolve, recover_velocity
from fracosc.ensembles import energy_ensemble, gaussian_state, philox_rng
from fracosc.fracop import (
    alpha_limit_report,
    balakrishnan_block,
    lambda_block,
    lambda_inverse_block,
    spectrum,
)

ALPHA = 0.9
H = 1e-2
T_END = 50.0


def _report(num: int, ok: bool, text: str) -> None:
    print(f"ACCEPTANCE {num:2d} {'PASS' if ok else 'FAIL'}: {text}")


def test_criterion_01_operator_identity_suite(default_problem):
    mu_model = default_problem.mu
    rng = philox_rng(101)
    worst_prod = worst_det = worst_tr = worst_spec = 0.0
    for _ in range(1000):
        a = float(rng.uniform(0.05, 1.0))
        t = float(rng.uniform(-5.0, 5.0))
        nu = float(rng.uniform(0.5, 200.0))
        blk = lambda_block(t, a, nu, mu_model)
        inv = lambda_inverse_block(t, a, nu, mu_model)
        worst_prod = max(worst_prod, float(np.max(np.abs(blk.as_array() @ inv.as_array() - np.eye(2)))))
        from fracosc.coeffs import eval_mu

        m = float(eval_mu(mu_model, t)) * nu
        worst_det = max(worst_det, abs(blk.det - m**a) / m**a)
        ctr = 2.0 * np.cos(np.pi * a / 2.0) * m ** (a / 2.0)
        worst_tr = max(worst_tr, abs(blk.trace - ctr) / max(1.0, abs(ctr)))
        lp, lm = spectrum(t, a, nu, mu_model)
        eig = sorted(-np.linalg.eigvals(blk.as_array()), key=lambda z: z.imag)
        want = sorted([lp, lm], key=lambda z: z.imag)
        worst_spec = max(worst_spec, max(abs(g - w) for g, w in zip(eig, want)) / abs(lp))
    ok = worst_prod <= 1e-12 and worst_det <= 1e-12 and worst_tr <= 1e-12 and worst_spec <= 1e-10
    _report(1, ok, f"operator identities: product {worst_prod:.2e} (<=1e-12), "
                   f"det {worst_det:.2e}, trace {worst_tr:.2e} (<=1e-12), "
                   f"spectrum {worst_spec:.2e} (<=1e-10) over 1000 triples")
    assert worst_prod <= 1e-12
    assert worst_det <= 1e-12
    assert worst_tr <= 1e-12
    assert worst_spec <= 1e-10


def test_criterion_02_balakrishnan_oracle(default_problem):
    rng = philox_rng(102)
    worst = 0.0
    for a in np.arange(0.1, 0.91, 0.1):
        for _ in range(10):
            t = float(rng.uniform(-5.0, 5.0))
            nu = float(rng.uniform(0.5, 100.0))
            qb = balakrishnan_block(t, float(a), nu, default_problem.mu, quad_tol=1e-8)
            cf = lambda_inverse_block(t, float(a), nu, default_problem.mu)
            worst = max(worst, float(np.max(np.abs(qb.as_array() - cf.as_array()))))
    ok = worst <= 1e-6
    _report(2, ok, f"resolvent-integral oracle vs closed form: worst {worst:.2e} (<=1e-6), "
                   f"alpha in 0.1..0.9 x 10 draws")
    assert ok


def test_criterion_03_alpha_limit_convergence():
    basis = build_basis(1, 4)
    mu = constant_mu(1.0)
    decay = np.exp(-basis.eigenvalues)
    state = (decay, 0.5 * decay)
    rep = alpha_limit_report(0.0, state, mu, basis, [0.9, 0.99, 0.999])
    dec_inv = all(x > y for x, y in zip(rep.inverse_errors, rep.inverse_errors[1:]))
    dec_fwd = all(x > y for x, y in zip(rep.forward_errors, rep.forward_errors[1:]))
    r_inv = rep.inverse_errors[-1] / rep.inverse_errors[0]
    r_fwd = rep.forward_errors[-1] / rep.forward_errors[0]
    ok = dec_inv and dec_fwd and r_inv < 1e-2 and r_fwd < 1e-2
    _report(3, ok, f"limit toward the classical operator: strictly decreasing columns "
                   f"({dec_inv}, {dec_fwd}); final/first {r_inv:.4e}, {r_fwd:.4e} (<1e-2)")
    assert dec_inv and dec_fwd
    assert r_inv < 1e-2
    assert r_fwd < 1e-2


def test_criterion_04_unitary_limit(undamped_problem):
    rng = philox_rng(104)
    st = gaussian_state(undamped_problem.basis, rng)
    nu = undamped_problem.basis.eigenvalues
    mu0 = undamped_problem.mu.mu_max
    e0 = float(np.sum(mu0 * nu * st.u**2 + st.v**2))
    traj = evolve(st, 0.0, 1e4 * H, H, 1.0, undamped_problem, record_every=100)
    energies = (mu0 * nu * traj.U**2 + traj.V**2).sum(axis=1)
    drift = float(np.max(np.abs(energies - e0)) / e0)
    ok = drift <= 1e-10
    _report(4, ok, f"unitary limit (alpha=1, f=0, omega=0): relative energy drift over "
                   f"10^4 steps {drift:.2e} (<=1e-10)")
    assert ok


def test_criterion_05_lyapunov_identity(default_problem, default_constants):
    _, eps = default_constants
    prob = default_problem
    worst = 0.0
    for t in (0.0, 25.0, T_END):
        states = energy_ensemble(
            prob.basis, 334, 10.0, 105,
            lambda st: natural_energy(prob, ALPHA, t, st.u, recover_velocity(st, t, ALPHA, prob)),
        )
        for st in states:
            ut = recover_velocity(st, t, ALPHA, prob)
            phi = phi_functional(prob, ALPHA, t, eps, st.u, ut)
            worst = max(worst, abs(lyapunov_L(prob, ALPHA, t, eps, st) - phi))
    ok = worst <= 1e-10
    _report(5, ok, f"Lyapunov identity L = Phi(recovered velocity): worst |diff| {worst:.2e} "
                   f"(<=1e-10) on 1002 random states")
    assert ok


def test_criterion_06_two_sided_bounds(default_problem, default_constants):
    consts, eps = default_constants
    prob = default_problem
    m_phi_lo = m_phi_hi = m_l_lo = m_l_hi = m_eq_lo = m_eq_hi = np.inf
    for t in (0.0, T_END):
        states = energy_ensemble(
            prob.basis, 500, 10.0, 106,
            lambda st: natural_energy(prob, ALPHA, t, st.u, recover_velocity(st, t, ALPHA, prob)),
        )
        for st in states:
            ut = recover_velocity(st, t, ALPHA, prob)
            e = natural_energy(prob, ALPHA, t, st.u, ut)
            phi = phi_functional(prob, ALPHA, t, eps, st.u, ut)
            ly = lyapunov_L(prob, ALPHA, t, eps, st)
            q = product_norm_sq(prob, ALPHA, st)
            m_phi_lo = min(m_phi_lo, phi - (consts.c1 * e - 2 * consts.C_eps))
            m_phi_hi = min(m_phi_hi, (consts.c2 * e + 2 * consts.C_eps) - phi)
            m_l_lo = min(m_l_lo, ly - (consts.D1 * q - consts.D3))
            m_l_hi = min(m_l_hi, (consts.D2 * q + consts.D3) - ly)
            m_eq_lo = min(m_eq_lo, e - consts.C1 * q)
            m_eq_hi = min(m_eq_hi, consts.C2 * q - e)
    margins = (m_phi_lo, m_phi_hi, m_l_lo, m_l_hi, m_eq_lo, m_eq_hi)
    ok = min(margins) >= 0.0
    _report(6, ok, "two-sided bounds on 1000 random states, worst margins "
                   f"Phi=({m_phi_lo:.3g},{m_phi_hi:.3g}) L=({m_l_lo:.3g},{m_l_hi:.3g}) "
                   f"equiv=({m_eq_lo:.3g},{m_eq_hi:.3g}) (all >= 0)")
    assert ok


@pytest.fixture(scope="module")
def decay_runs(default_problem, default_constants):
    consts, eps = default_constants
    prob = default_problem
    states = energy_ensemble(
        prob.basis, 20, 10.0, 107,
        lambda st: natural_energy(prob, ALPHA, 0.0, st.u, recover_velocity(st, 0.0, ALPHA, prob)),
    )
    out = {}
    for h in (H, H / 2):
        reports = []
        for i, st in enumerate(states):
            traj = evolve(st, 0.0, T_END, h, ALPHA, prob, record_every=1)
            assert not traj.blown
            reports.append(decay_estimate_check(traj, prob, consts, eps, tol_rel=1e-6,
                                                check_config=(i == 0 and h == H)))
        out[h] = reports
    return out


def test_criterion_07_apriori_decay(decay_runs, default_constants):
    consts, eps = default_constants
    reports = decay_runs[H]
    worst_margin = min(r.worst_margin for r in reports)
    worst_resid = max(r.worst_residual for r in reports)
    cap = reports[0].residual_cap
    ok = worst_margin >= 0.0 and worst_resid <= cap
    _report(7, ok, f"a-priori decay on 20 trajectories (T=50): worst bound margin "
                   f"{worst_margin:.4g} (>=0), worst Lyapunov residual {worst_resid:.4g} "
                   f"(<= 16 eps C_eps + 10h = {cap:.4g})")
    assert worst_margin >= 0.0
    assert worst_resid <= cap


def test_criterion_08_absorbing_family(default_problem):
    rep = absorbing_experiment(default_problem, ALPHA, T_END, radii=(10.0, 100.0),
                               n_states=20, seed=108, h=H)
    inside = all(r.absorbed for r in rep.rows)
    control_out = not rep.control.absorbed
    ok = inside and control_out
    detail = ", ".join(f"R={r.radius:g}: worst {r.worst_norm_sq:.3g} <= {rep.R_abs:.4g} "
                       f"(theta={r.theta:.2f})" for r in rep.rows)
    _report(8, ok, f"absorbing ball entry after theta+1 pullback: {detail}; negative control "
                   f"{'reported not yet absorbed' if control_out else 'MISSED'} "
                   f"(worst {rep.control.worst_norm_sq:.3g})")
    assert inside
    assert control_out


def test_criterion_09_pullback_attraction(default_problem, linear_problem):
    rep = pullback_attraction_experiment(default_problem, ALPHA, 0.0,
                                         (10.0, 20.0, 40.0, 80.0), n_states=20,
                                         energy=10.0, seed=109, h=H, s=0.9)
    nonlinear_ok = rep.monotone and rep.total_decrease >= 10.0
    alpha_lin = 0.5
    closed = linear_contraction_rate(linear_problem, alpha_lin)
    rep_lin = pullback_attraction_experiment(linear_problem, alpha_lin, 0.0,
                                             (10.0, 20.0, 40.0, 80.0), n_states=20,
                                             energy=10.0, seed=109, h=H, s=0.9)
    rel = abs(rep_lin.fitted_rate - closed) / closed
    linear_ok = rep_lin.monotone and rel <= 0.05
    ok = nonlinear_ok and linear_ok
    _report(9, ok, f"pullback attraction: distances {tuple(f'{d:.3e}' for d in rep.semidistances)} "
                   f"monotone={rep.monotone}, total decrease {rep.total_decrease:.3g} (>=10); "
                   f"linear control rate {rep_lin.fitted_rate:.5g} vs closed form {closed:.5g} "
                   f"(rel err {rel:.3%} <= 5%)")
    assert nonlinear_ok
    assert linear_ok


def test_criterion_10_order_and_step_robustness(default_problem, decay_runs):
    rng = philox_rng(110)
    st = gaussian_state(default_problem.basis, rng)
    st = st.scaled(0.5)
    finals = {}
    for h in (0.02, 0.01, 0.005):
        tr = evolve(st, 0.0, 1.0, h, ALPHA, default_problem, record_every=0)
        finals[h] = np.concatenate([tr.final_state.u, tr.final_state.v])
    e1 = float(np.linalg.norm(finals[0.02] - finals[0.01]))
    e2 = float(np.linalg.norm(finals[0.01] - finals[0.005]))
    order = float(np.log2(e1 / e2))
    verdicts_h = [(r.bound_holds, r.residual_holds) for r in decay_runs[H]]
    verdicts_h2 = [(r.bound_holds, r.residual_holds) for r in decay_runs[H / 2]]
    identical = verdicts_h == verdicts_h2
    all_pass = all(a and b for a, b in verdicts_h2)
    ok = order >= 1.9 and identical and all_pass
    _report(10, ok, f"self-convergence order {order:.3f} (>=1.9); decay verdicts at h and h/2 "
                    f"identical={identical}, all pass at h/2={all_pass}")
    assert order >= 1.9
    assert identical and all_pass
