import numpy as np
import pytest

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def ket(*bits):
    v = np.zeros(2 ** len(bits), dtype=complex)
    idx = 0
    for b in bits:
        idx = 2 * idx + b
    v[idx] = 1.0
    return v


def random_density(dim, rng):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def random_hermitian(dim, rng):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (g + g.conj().T) / 2


def bell_encoder():
    """|0> -> (|00>+|11>)/sqrt2, |1> -> (|01>+|10>)/sqrt2."""
    from scramblemeter import SiteLayout, validate_isometry

    mat = np.array([[1, 0], [0, 1], [0, 1], [1, 0]], dtype=complex) / np.sqrt(2)
    return validate_isometry(mat, SiteLayout((2, 2)))


def replacement_isometry():
    """|i> -> |i>_D (x) |0>_C with C = site 1.

    The discard factor D is a qutrit, so the only qubit-sized subsystem is
    the replaced site C and the channel to any k = 2 subsystem is trivial.
    """
    from scramblemeter import SiteLayout, validate_isometry

    mat = np.zeros((6, 2), dtype=complex)
    mat[0, 0] = 1.0
    mat[2, 1] = 1.0
    return validate_isometry(mat, SiteLayout((3, 2)))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# one pass/fail line per acceptance criterion, printed after the run
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for idx in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[idx]
        verdict = "PASS" if ok else "FAIL"
        line = f"CRITERION {idx}: {verdict}"
        if detail:
            line += f" — {detail}"
        terminalreporter.write_line(line)
