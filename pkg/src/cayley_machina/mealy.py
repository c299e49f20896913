"""Complete deterministic Mealy machines and the canonical pointed
transducers that represent elements of automaton semigroups.

Composition convention: in ``compose(u, v)`` the machine ``u`` reads the
input first and its output is fed to ``v``. A product of states
``a1 a2 ... ak`` therefore acts with ``a1`` first.
"""

from __future__ import annotations

from array import array
from collections import deque
from dataclasses import dataclass

from .errors import StateBudgetExceeded
from .semigroup import FiniteSemigroup

MAX_PRODUCT_STATES = 1_000_000


@dataclass(frozen=True)
class MealyMachine:
    state_count: int
    alphabet_size: int
    delta: tuple[tuple[int, ...], ...]
    lam: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.delta) != self.state_count or len(self.lam) != self.state_count:
            raise ValueError("delta and lam need one row per state")
        for q in range(self.state_count):
            if len(self.delta[q]) != self.alphabet_size or len(self.lam[q]) != self.alphabet_size:
                raise ValueError(f"row {q} is not total on the alphabet")
            for x in range(self.alphabet_size):
                if not 0 <= self.delta[q][x] < self.state_count:
                    raise ValueError(f"delta({q},{x}) out of range")
                if not 0 <= self.lam[q][x] < self.alphabet_size:
                    raise ValueError(f"lam({q},{x}) out of range")

    def to_dot(self) -> str:
        lines = [f"# states={self.state_count} alphabet={self.alphabet_size}"]
        for q in range(self.state_count):
            for x in range(self.alphabet_size):
                lines.append(f"{q} {x} -> {self.delta[q][x]} / {self.lam[q][x]}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PointedTransducer:
    machine: MealyMachine
    initial: int = 0
    canonical: bool = False

    @property
    def state_count(self) -> int:
        return self.machine.state_count

    @property
    def alphabet_size(self) -> int:
        return self.machine.alphabet_size

    def key(self) -> bytes:
        """Serialization of the canonical form, usable as a dict key."""
        u = self if self.canonical else canonicalize(self)
        m = u.machine
        buf = array("I", (m.state_count, m.alphabet_size))
        for row in m.delta:
            buf.extend(row)
        for row in m.lam:
            buf.extend(row)
        return buf.tobytes()

    def __mul__(self, other: PointedTransducer) -> PointedTransducer:
        return compose(self, other)


def cayley(s: FiniteSemigroup) -> MealyMachine:
    """State q reading x moves to q*x and outputs q*x."""
    t = s.table
    return MealyMachine(s.order, s.order, t, t)


def dual_cayley(s: FiniteSemigroup) -> MealyMachine:
    """State q reading x moves to q*x and outputs x*q."""
    t = s.table
    out = tuple(tuple(t[x][q] for x in s.elements()) for q in s.elements())
    return MealyMachine(s.order, s.order, t, out)


def identity(alphabet_size: int) -> PointedTransducer:
    m = MealyMachine(1, alphabet_size, ((0,) * alphabet_size,), (tuple(range(alphabet_size)),))
    return PointedTransducer(m, 0, True)


def _reachable(delta, initial, alphabet_size) -> list[int]:
    order = [initial]
    seen = {initial}
    for q in order:
        for x in range(alphabet_size):
            r = delta[q][x]
            if r not in seen:
                seen.add(r)
                order.append(r)
    return order


def canonicalize(u: PointedTransducer) -> PointedTransducer:
    """Minimal, accessible, BFS-numbered form of ``u``.

    Two pointed transducers define the same map on infinite sequences
    exactly when their canonical forms are identical.
    """
    if u.canonical:
        return u
    m = u.machine
    k = m.alphabet_size
    states = _reachable(m.delta, u.initial, k)
    index = {q: i for i, q in enumerate(states)}
    delta = [[index[m.delta[q][x]] for x in range(k)] for q in states]
    lam = [m.lam[q] for q in states]

    # Moore refinement: start from equal output rows, split on successor blocks.
    ids: dict = {}
    block = [ids.setdefault(row, len(ids)) for row in lam]
    count = len(ids)
    while True:
        ids = {}
        new = [ids.setdefault((block[q], tuple(block[r] for r in delta[q])), len(ids))
               for q in range(len(states))]
        if len(ids) == count:
            break
        block, count = new, len(ids)

    # Quotient relabelled in BFS order from the initial block.
    rep: dict[int, int] = {}
    for q in range(len(states)):
        rep.setdefault(block[q], q)
    order = [block[0]]
    number = {block[0]: 0}
    for b in order:
        q = rep[b]
        for x in range(k):
            nb = block[delta[q][x]]
            if nb not in number:
                number[nb] = len(order)
                order.append(nb)
    new_delta = tuple(tuple(number[block[delta[rep[b]][x]]] for x in range(k)) for b in order)
    new_lam = tuple(lam[rep[b]] for b in order)
    return PointedTransducer(MealyMachine(len(order), k, new_delta, new_lam), 0, True)


def repoint(u: PointedTransducer, state: int) -> PointedTransducer:
    return canonicalize(PointedTransducer(u.machine, state, False))


def generator(m: MealyMachine, s: int) -> PointedTransducer:
    if not 0 <= s < m.state_count:
        raise ValueError(f"state {s} out of range")
    return repoint(PointedTransducer(m, s), s)


def compose(u: PointedTransducer, v: PointedTransducer,
            max_states: int = MAX_PRODUCT_STATES) -> PointedTransducer:
    """Cascade product: ``u`` acts first, then ``v`` on ``u``'s output."""
    if u.alphabet_size != v.alphabet_size:
        raise ValueError("alphabet sizes differ")
    k = u.alphabet_size
    du, lu = u.machine.delta, u.machine.lam
    dv, lv = v.machine.delta, v.machine.lam
    start = (u.initial, v.initial)
    index = {start: 0}
    pairs = [start]
    delta: list[tuple[int, ...]] = []
    lam: list[tuple[int, ...]] = []
    for p, q in pairs:
        drow, lrow = [], []
        for x in range(k):
            y = lu[p][x]
            nxt = (du[p][x], dv[q][y])
            i = index.get(nxt)
            if i is None:
                i = index[nxt] = len(pairs)
                pairs.append(nxt)
                if len(pairs) > max_states:
                    raise StateBudgetExceeded(f"product exceeds {max_states} states")
            drow.append(i)
            lrow.append(lv[q][y])
        delta.append(tuple(drow))
        lam.append(tuple(lrow))
    raw = MealyMachine(len(pairs), k, tuple(delta), tuple(lam))
    return canonicalize(PointedTransducer(raw, 0))


def compose_all(items, max_states: int = MAX_PRODUCT_STATES) -> PointedTransducer:
    it = iter(items)
    acc = next(it)
    for v in it:
        acc = compose(acc, v, max_states)
    return acc


def equal(u: PointedTransducer, v: PointedTransducer) -> bool:
    return canonicalize(u).machine == canonicalize(v).machine


def _check_symbol(u: PointedTransducer, x: int):
    if not 0 <= x < u.alphabet_size:
        raise ValueError(f"symbol {x} out of range 0..{u.alphabet_size - 1}")


def step(u: PointedTransducer, x: int) -> tuple[int, PointedTransducer]:
    _check_symbol(u, x)
    m = u.machine
    return m.lam[u.initial][x], repoint(u, m.delta[u.initial][x])


def output_map(u: PointedTransducer) -> tuple[int, ...]:
    return tuple(u.machine.lam[u.initial])


def apply_prefix(u: PointedTransducer, word) -> list[int]:
    m = u.machine
    q = u.initial
    out = []
    for x in word:
        _check_symbol(u, x)
        out.append(m.lam[q][x])
        q = m.delta[q][x]
    return out
