import numpy as np
import pytest

from fracosc.basis import build_basis
from fracosc.coeffs import constant_mu, constant_omega, logistic_mu, logistic_omega
from fracosc.diagnostics import constants_for
from fracosc.nonlin import NonlinearitySpec
from fracosc.problem import Problem

# desk-scale defaults shared across the suite: d=3, M=4, alpha=0.9, rho=4,
# s=0.9, h=1e-2; mu steepness fixed below the largest admissible value
ALPHA = 0.9
S_INDEX = 0.9
H_STEP = 1e-2
T_END = 50.0
DELTA_MU = 1.5e-3


@pytest.fixture(scope="session")
def basis3():
    return build_basis(3, 4)


@pytest.fixture(scope="session")
def basis1():
    return build_basis(1, 4)


@pytest.fixture(scope="session")
def default_problem(basis3):
    return Problem(
        basis=basis3,
        omega=logistic_omega(0.5, 2.0, 0.1),
        mu=logistic_mu(1.0, 2.0, DELTA_MU),
        nonlin=NonlinearitySpec(beta=1.0, lambda_f=1.0, rho=4.0),
    )


@pytest.fixture(scope="session")
def default_constants(default_problem):
    """(constants, frozen eps) for runs ending at T_END."""
    return constants_for(default_problem, ALPHA, T_END)


@pytest.fixture(scope="session")
def linear_problem():
    """Autonomous contractive control: f = 0, constant damping and speed."""
    return Problem(
        basis=build_basis(3, 2),
        omega=constant_omega(2.0),
        mu=constant_mu(1.0),
        nonlin=NonlinearitySpec(0.0, 0.0, 4.0),
    )


@pytest.fixture(scope="session")
def undamped_problem(basis3):
    """Unitary-limit control: f = 0, omega = 0, constant mu."""
    return Problem(
        basis=basis3,
        omega=constant_omega(0.0),
        mu=constant_mu(1.3),
        nonlin=NonlinearitySpec(0.0, 0.0, 4.0),
    )
