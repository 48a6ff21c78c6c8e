import pytest

from delaybif import CubicBD, Nicholson, TaylorCoefficients, taylor_coefficients


@pytest.fixture(scope="session")
def ex1_spec():
    return CubicBD(k=9.0, mu=1.0, lam=-7.0, tau=0.187)


@pytest.fixture(scope="session")
def ex1_coeffs(ex1_spec):
    return taylor_coefficients(ex1_spec)


@pytest.fixture(scope="session")
def ex2_spec():
    return CubicBD(k=4.75, mu=1.0, lam=-7.0, tau=1.0)


@pytest.fixture(scope="session")
def ex2_coeffs(ex2_spec):
    return taylor_coefficients(ex2_spec)


@pytest.fixture(scope="session")
def wright_coeffs():
    # x'(t) = -x(t - 1): the classic scalar benchmark with a = 0, b = 1.
    return TaylorCoefficients(xi_x=0.0, xi_y=-1.0, tau=1.0)


@pytest.fixture(scope="session")
def nich_spec():
    return Nicholson(gamma=1.0, p_rate=50.0, x0_size=1.0, tau=1.0)
