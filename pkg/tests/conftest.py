import functools

import pytest

from parryindex.words import ParryParams, fixed_point_prefix

GRID = [(p, q) for p in range(2, 9) for q in range(1, p)]

# filled by tests/test_acceptance.py, printed after the run
ACCEPTANCE = {}


def oracle_fixed_point(p, q, length):
    """Prefix of the fixed point by plain string rewriting."""
    image = {"0": "0" * p + "1", "1": "0" * q + "1"}
    word = "0"
    while len(word) < length:
        word = "".join(image[c] for c in word)
    return word[:length]


@functools.lru_cache(maxsize=None)
def prefix_of(p, q, length):
    return fixed_point_prefix(ParryParams(p, q), length, truncate=True)


@pytest.fixture
def prefix():
    return prefix_of


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        name, ok, note = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {name}"
                                    + (f" ({note})" if note else ""))
