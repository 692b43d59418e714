import pytest

from leavitt import _kernel, _kernel_py
from leavitt.algebra import LeavittAlgebra
from leavitt.cylinder import l2
from leavitt.graph import line_graph, toeplitz, two_loop, two_vertex_F, cycle_graph
from leavitt.rings import QQ, ZZ, zmod


@pytest.fixture
def L2():
    return l2(ZZ)


TEST_GRAPHS = {
    "two_loop": two_loop(),
    "toeplitz": toeplitz(),
    "F": two_vertex_F(),
    "A3": line_graph(3),
    "C2": cycle_graph(2),
}

RINGS = [ZZ, QQ, zmod(4), zmod(6)]


@pytest.fixture(params=sorted(TEST_GRAPHS))
def graph(request):
    return TEST_GRAPHS[request.param]


@pytest.fixture(params=["python", "compiled"])
def backend(request, monkeypatch):
    """Run the test once per kernel backend."""
    if request.param == "compiled":
        if _kernel.BACKEND != "cython":
            pytest.skip("compiled kernel not built")
        return _kernel
    for name in ("mul_terms", "reduce_terms", "mono_mul"):
        monkeypatch.setattr(_kernel, name, getattr(_kernel_py, name))
    return _kernel_py


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
