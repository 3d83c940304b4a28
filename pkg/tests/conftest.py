import functools

import numpy as np

from ortholab.code_core import (
    LinearCode,
    macwilliams,
    macwilliams_transform,
    pless_verify,
    weight_distribution,
)
from ortholab.families import FamilyParams, build_family

# one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE: dict[int, str] = {}


def checked_wd(code: LinearCode, budget: int | None = None, workers: int = 1):
    """Weight distribution plus the checks every enumerated code must pass."""
    wd = weight_distribution(code, budget, workers)
    assert wd.is_consistent()
    dual = macwilliams(wd)
    back = macwilliams_transform(wd.n, wd.q, dual.dual.vector(), wd.n - wd.k)
    assert back == wd.vector()
    assert dual.dual.k == code.n - code.k
    assert pless_verify(wd, *dual.a_perp[:3]).ok
    return wd, dual


@functools.lru_cache(maxsize=None)
def family(text: str):
    return build_family(FamilyParams.parse(text))


@functools.lru_cache(maxsize=None)
def family_wd(text: str):
    return checked_wd(family(text))


def random_code(rng: np.random.Generator, spec, k: int, n: int) -> LinearCode:
    rows = rng.integers(0, spec.q, size=(k, n))
    return LinearCode(spec, rows)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[num])
