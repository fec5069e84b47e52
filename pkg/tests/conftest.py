from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from fdgns import Algebra, PointedRep, identity, vector_state

settings.register_profile("ci", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")

FIXTURES = Path(__file__).parent / "fixtures"

UP = np.array([1.0, 0.0])
DOWN = np.array([0.0, 1.0])
EPR = np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2)

# filled by test_acceptance, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def qubit():
    return Algebra.full(2)


@pytest.fixture
def omega_up():
    return vector_state(UP)


@pytest.fixture
def epr_state():
    return vector_state(EPR)


@pytest.fixture
def up_rep(qubit):
    return PointedRep.from_morphism(identity(qubit), UP)


@pytest.fixture
def epr_rep():
    return PointedRep.from_morphism(identity(Algebra.full(4)), EPR)


def random_element(rng, algebra, scale=1.0):
    blocks = [
        scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        for n in algebra.block_dims
    ]
    return algebra.from_blocks(blocks)


def random_density(rng, n):
    B = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = B.conj().T @ B
    return rho / np.trace(rho).real
