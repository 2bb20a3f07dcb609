import pytest
from hypothesis import settings

from metaplectic import build_fstore, build_rstore
from metaplectic.params import all_params

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def stores():
    """Cached (F, R) builder keyed by Params."""
    cache = {}

    def get(params):
        if params not in cache:
            f = build_fstore(params)
            cache[params] = (f, build_rstore(params, f.ring))
        return cache[params]

    return get


def params_upto(pmax, with_lambda=False):
    return [P for p in range(1, pmax + 1) for P in all_params(p, with_lambda=with_lambda)]


ACCEPTANCE_LINES: dict[int, str] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion:2d}: {detail}"
    ACCEPTANCE_LINES[criterion] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
