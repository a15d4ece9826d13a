import math

import pytest

from thzdra.graphene import GrapheneSheet
from thzdra.multilayer import HybridStackTemplate


def sheet(n=5, mu=0.9, tau=0.6e-12, temperature=300.0):
    return GrapheneSheet.from_ev(n, mu, tau, temperature)


def hybrid_template(mu_ev=0.9, **kw):
    """PMMA | graphene | PMMA 3 um | GaAs 30 um | air, 3 THz."""
    return HybridStackTemplate(sheet(mu=mu_ev), **kw)


def type1_template(mu_ev=0.8, d_H=5e-6):
    """GaAs substrate | PMMA 100 nm | graphene | PMMA 100 nm | GaAs d_H | air."""
    return HybridStackTemplate(
        sheet(mu=mu_ev), d_H=d_H, d_L=100e-9, d_under=100e-9, eps_substrate=12.9, eps_cover=1.0
    )


@pytest.fixture(scope="session")
def hybrid_stack():
    return hybrid_template().build()


@pytest.fixture(scope="session")
def type1_stack():
    return type1_template().build()[0]


def omega_of(f):
    return 2 * math.pi * f


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    if module is None or not module.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.VERDICTS:
        terminalreporter.write_line(line)
