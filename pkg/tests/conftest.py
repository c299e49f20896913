from functools import lru_cache
from itertools import product

import pytest

from cayley_machina.catalog import canonical_semigroup, iso_catalog


@lru_cache(maxsize=None)
def catalog(n):
    return tuple(canonical_semigroup(e) for e in iso_catalog(n))


def catalog_upto(n):
    return [s for k in range(1, n + 1) for s in catalog(k)]


def simulate(s, state, word, dual):
    """Run the (dual) Cayley automaton straight from the multiplication table."""
    t = s.table
    out = []
    for x in word:
        out.append(t[x][state] if dual else t[state][x])
        state = t[state][x]
    return out


def simulate_word(s, states, word, dual):
    """Apply a product of states, leftmost first."""
    for q in states:
        word = simulate(s, q, word, dual)
    return word


def all_words(k, length):
    for n in range(length + 1):
        yield from product(range(k), repeat=n)


@pytest.fixture(scope="session")
def order3():
    return catalog_upto(3)


@pytest.fixture(scope="session")
def order4():
    return catalog_upto(4)


# ---------------------------------------------------------------- acceptance lines

ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


class criterion:
    """Context manager recording one acceptance criterion as PASS or FAIL."""

    def __init__(self, number, title):
        self.number, self.title, self.detail = number, title, ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        ok = exc_type is None
        detail = self.detail if ok else f"{exc_type.__name__}: {exc}"
        ACCEPTANCE[self.number] = (self.title, ok, detail)
        return False


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} [{n:2d}] {title}: {detail}")
