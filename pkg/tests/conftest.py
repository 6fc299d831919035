import numpy as np
import pytest

from argew.graph import build_graph

A, B, C, D = 0, 1, 2, 3


@pytest.fixture
def triangle():
    # a-b 1, a-c 3, b-c 2
    return build_graph([(A, B, 1.0), (A, C, 3.0), (B, C, 2.0)])


@pytest.fixture
def clique4():
    # 4-clique with w(b, d) = 5, all other weights 1
    edges = [(u, v, 1.0) for u in range(4) for v in range(u + 1, 4)]
    edges = [(u, v, 5.0 if (u, v) == (B, D) else w) for u, v, w in edges]
    return build_graph(edges)


def two_cliques(size=8):
    edges = [(a, b, 1.0) for base in (0, size) for a in range(base, base + size) for b in range(a + 1, base + size)]
    return build_graph(edges), ["left"] * size + ["right"] * size


def random_graph(rng, n, density=0.4, weights=None):
    """Random undirected graph; ``weights`` is a list of values to draw from (default: all 1)."""
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                w = 1.0 if weights is None else float(rng.choice(weights))
                edges.append((u, v, w))
    if not edges:
        edges.append((0, 1, 1.0))
    return build_graph(edges, node_count=n)


_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not (report.when == "setup" and report.skipped):
        return
    detail = getattr(item, "criterion_detail", "")
    status = "SKIP" if report.skipped else ("PASS" if report.passed else "FAIL")
    _ACCEPTANCE.append((marker.args[0], status, marker.args[1], detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, title, detail in sorted(_ACCEPTANCE, key=lambda r: (str(r[0]).zfill(4), r[2])):
        line = f"[{status}] {number}. {title}"
        terminalreporter.write_line(line + (f" -- {detail}" if detail else ""))
