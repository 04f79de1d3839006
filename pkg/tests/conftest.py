import pytest

from rigiditykit import _kernels

from helpers import KERNEL_PATHS


@pytest.fixture(params=KERNEL_PATHS)
def kernel_path(request, monkeypatch):
    """Run a test once per kernel implementation."""
    suffix = "jit" if request.param == "numba" else "py"
    for name in ("t_closure", "canonical_code", "components"):
        monkeypatch.setattr(_kernels, name, getattr(_kernels, f"{name}_{suffix}"))
    return request.param


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
