import numpy as np
import pytest

XOR_HAM = """spins A B C
sqrt(2)*pi/4 zA yB
sqrt(2)*pi/4 zB yC
-pi/4 yB xC
"""


@pytest.fixture
def xor_ham_text():
    return XOR_HAM


@pytest.fixture
def xor_ham_file(tmp_path):
    path = tmp_path / "xor.ham"
    path.write_text(XOR_HAM)
    return str(path)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


_call_report = pytest.StashKey()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    rep = (yield).get_result()
    if rep.when == "call":
        item.stash[_call_report] = rep


@pytest.fixture
def criterion(request):
    """Collects a detail string and prints one PASS/FAIL line after the test."""
    outcome = {}
    yield outcome
    rep = request.node.stash.get(_call_report, None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    tr = request.config.pluginmanager.get_plugin("terminalreporter")
    if tr is not None:
        tr.write_line(f"[{status}] {request.node.name}: {outcome.get('detail', '')}")
