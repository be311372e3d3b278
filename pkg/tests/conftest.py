import pytest

from drivenosc import OscillatorParams


@pytest.fixture
def ref_params():
    """Reference configuration used across the suite: unit mass and
    frequencies, off-resonant drive at Omega=0.3, product Q*E = 0.2."""
    return OscillatorParams(mu=1.0, omega1=1.0, omega2=1.0, Omega=0.3,
                            Q=1.0, E=0.2)


@pytest.fixture
def resonant_params():
    return OscillatorParams(mu=1.0, omega1=1.0, omega2=1.0, Omega=1.0,
                            Q=1.0, E=0.2)
