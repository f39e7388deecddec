import numpy as np
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from spinrevival import JacobiMatrix, NonSimpleSpectrum, eigendecompose

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# one line per acceptance criterion, collected by test_acceptance.py
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k[2:])):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


@st.composite
def chains(draw, min_n=0, max_n=12):
    """Random valid chains with well separated levels."""
    n = draw(st.integers(min_n, max_n))
    J = draw(st.lists(st.floats(0.2, 3.0), min_size=n, max_size=n))
    B = draw(st.lists(st.floats(-2.0, 2.0), min_size=n + 1, max_size=n + 1))
    chain = JacobiMatrix(np.array(J, dtype=float), np.array(B, dtype=float))
    if n:
        try:
            lam = eigendecompose(chain, gap_tol=1e-6).eigenvalues
        except NonSimpleSpectrum:
            assume(False)
        assume(np.diff(lam).min() > 1e-4)
    return chain


@st.composite
def persymmetric_chains(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    half_J = draw(st.lists(st.floats(0.2, 3.0), min_size=(n + 1) // 2, max_size=(n + 1) // 2))
    half_B = draw(st.lists(st.floats(-2.0, 2.0), min_size=n // 2 + 1, max_size=n // 2 + 1))
    J = np.array(half_J + half_J[: n // 2][::-1])
    B = np.array(half_B + half_B[: (n + 1) // 2][::-1])
    chain = JacobiMatrix(J, B)
    try:
        lam = eigendecompose(chain, gap_tol=1e-6).eigenvalues
    except NonSimpleSpectrum:
        assume(False)
    assume(np.diff(lam).min() > 1e-4)
    return chain
