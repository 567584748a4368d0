import pytest

from kleinzeta import _accel

# criterion number -> (ok, detail), filled in by test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture(params=["numba", "numpy"] if _accel.HAVE_NUMBA else ["numpy"])
def backend(request):
    saved = _accel.backend()
    _accel.set_backend(request.param)
    yield request.param
    _accel.set_backend(saved)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
