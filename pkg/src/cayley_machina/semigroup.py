"""Finite semigroups given by multiplication tables.

Elements are the integers ``0..n-1``; ``table[a][b]`` is the product ``a*b``.
Labels are cosmetic and never used by the algorithms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import NonAssociative, OutOfRange, SemigroupError, UnknownFamily

MAX_ORDER = 256


@dataclass(frozen=True)
class FiniteSemigroup:
    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def product(self, word) -> int:
        """Product of a nonempty sequence of elements, left to right."""
        it = iter(word)
        acc = next(it)
        t = self.table
        for x in it:
            acc = t[acc][x]
        return acc

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def elements(self) -> range:
        return range(len(self.table))

    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.table for v in row)

    def __repr__(self):
        return f"FiniteSemigroup(order={self.order}, table={[list(r) for r in self.table]})"


def check_associative(table) -> tuple[int, int, int] | None:
    """First failing triple in lexicographic order, or None."""
    n = len(table)
    for a, b in product(range(n), repeat=2):
        ab = table[a][b]
        row_ab = table[ab]
        row_a = table[a]
        row_b = table[b]
        for c in range(n):
            if row_ab[c] != row_a[row_b[c]]:
                return a, b, c
    return None


def from_table(order: int, table, labels=None, max_order: int = MAX_ORDER) -> FiniteSemigroup:
    if order < 1:
        raise SemigroupError("order must be at least 1")
    if order > max_order:
        raise SemigroupError(f"order {order} exceeds maximum {max_order}")
    rows = [list(r) for r in table]
    if len(rows) != order:
        raise SemigroupError(f"expected {order} rows, got {len(rows)}")
    for i, row in enumerate(rows):
        if len(row) != order:
            raise SemigroupError(f"row {i} has {len(row)} entries, expected {order}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < order:
                raise OutOfRange(i, j, v, order)
    bad = check_associative(rows)
    if bad is not None:
        raise NonAssociative(*bad)
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != order:
            raise SemigroupError(f"expected {order} labels, got {len(labels)}")
    return FiniteSemigroup(tuple(tuple(r) for r in rows), labels)


def _family_table(family: str, k: int):
    rk = range(k)
    if family == "cyclic":
        return [[(a + b) % k for b in rk] for a in rk]
    if family == "leftzero":
        return [[a for _ in rk] for a in rk]
    if family == "rightzero":
        return [[b for b in rk] for _ in rk]
    if family == "chain":
        return [[min(a, b) for b in rk] for a in rk]
    if family == "null":
        return [[0 for _ in rk] for _ in rk]
    raise UnknownFamily(f"unknown family {family!r}")


FAMILIES = ("cyclic", "leftzero", "rightzero", "chain", "null", "trivial")


def named(spec: str) -> FiniteSemigroup:
    """Build a semigroup from a family spec such as ``"rightzero:3"``.

    Families: ``cyclic:k`` (addition mod k), ``leftzero:k``, ``rightzero:k``,
    ``chain:k`` (min), ``null:k`` (every product is 0) and ``trivial``.
    """
    spec = spec.strip()
    if spec == "trivial":
        return from_table(1, [[0]])
    family, sep, arg = spec.partition(":")
    if family not in FAMILIES or family == "trivial" or not sep:
        raise UnknownFamily(f"unknown semigroup spec {spec!r}")
    try:
        k = int(arg)
    except ValueError:
        raise UnknownFamily(f"bad size in {spec!r}") from None
    if k < 1:
        raise SemigroupError(f"size must be at least 1 in {spec!r}")
    return from_table(k, _family_table(family, k))


def is_named_spec(text: str) -> bool:
    family = text.strip().partition(":")[0]
    return family in FAMILIES


def direct_product(a: FiniteSemigroup, b: FiniteSemigroup, max_order: int = MAX_ORDER) -> FiniteSemigroup:
    """Componentwise product; the pair (i, j) is encoded as ``i*|b| + j``."""
    na, nb = a.order, b.order
    n = na * nb
    if n > max_order:
        raise SemigroupError(f"product order {n} exceeds maximum {max_order}")
    ta, tb = a.table, b.table
    table = [[ta[i // nb][k // nb] * nb + tb[i % nb][k % nb] for k in range(n)] for i in range(n)]
    labels = None
    if a.labels or b.labels:
        labels = [f"({a.label(i // nb)},{b.label(i % nb)})" for i in range(n)]
    return from_table(n, table, labels, max_order=max_order)


def idempotents(s: FiniteSemigroup) -> list[int]:
    return [e for e in s.elements() if s.table[e][e] == e]


def identity_element(s: FiniteSemigroup) -> int | None:
    t = s.table
    for e in s.elements():
        if all(t[e][x] == x and t[x][e] == x for x in s.elements()):
            return e
    return None


def classify(s: FiniteSemigroup) -> dict:
    t = s.table
    els = s.elements()
    e = identity_element(s)
    is_group = e is not None and all(any(t[a][b] == e for b in els) for a in els)
    return {
        "is_group": is_group,
        "is_left_zero": all(t[a][b] == a for a in els for b in els),
        "is_right_zero": all(t[a][b] == b for a in els for b in els),
        "is_commutative": all(t[a][b] == t[b][a] for a in els for b in els),
        "idempotent_set": frozenset(idempotents(s)),
    }
