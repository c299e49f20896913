"""Green's relations, criteria for finiteness of the Cayley automaton
semigroups, Schützenberger groups and the Miller-Clifford check."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import InternalDisagreement
from .semigroup import FiniteSemigroup, idempotents


def _partition(keys) -> tuple[int, ...]:
    ids: dict = {}
    return tuple(ids.setdefault(k, len(ids)) for k in keys)


def _classes(labels) -> list[list[int]]:
    out: list[list[int]] = [[] for _ in range(max(labels) + 1)]
    for a, c in enumerate(labels):
        out[c].append(a)
    return out


def right_ideal(s: FiniteSemigroup, a: int) -> frozenset:
    return frozenset(s.table[a]) | {a}


def left_ideal(s: FiniteSemigroup, a: int) -> frozenset:
    return frozenset(row[a] for row in s.table) | {a}


def two_sided_ideal(s: FiniteSemigroup, a: int) -> frozenset:
    t = s.table
    ideal = set(right_ideal(s, a)) | left_ideal(s, a)
    ideal.update(t[t[x][a]][y] for x in s.elements() for y in s.elements())
    return frozenset(ideal)


@dataclass(frozen=True)
class GreenStructure:
    """Each relation is stored as a class index per element.

    ``d_order`` holds pairs ``(lower, upper)`` of D-class ids whose principal
    ideals are strictly nested.
    """

    r_classes: tuple[int, ...]
    l_classes: tuple[int, ...]
    h_classes: tuple[int, ...]
    d_classes: tuple[int, ...]
    d_order: frozenset
    maximal_d: frozenset
    ideal_i: frozenset

    def classes(self, relation: str) -> list[list[int]]:
        return _classes(getattr(self, f"{relation.lower()}_classes"))

    def h_class_of(self, a: int) -> list[int]:
        return [x for x, c in enumerate(self.h_classes) if c == self.h_classes[a]]

    def r_related(self, a: int, b: int) -> bool:
        return self.r_classes[a] == self.r_classes[b]

    def l_related(self, a: int, b: int) -> bool:
        return self.l_classes[a] == self.l_classes[b]

    def eggbox(self, d: int) -> list[list[list[int]]]:
        """Egg-box grid of D-class ``d``: rows are R-classes, columns L-classes."""
        members = [a for a, c in enumerate(self.d_classes) if c == d]
        rows = sorted({self.r_classes[a] for a in members})
        cols = sorted({self.l_classes[a] for a in members})
        grid = [[[] for _ in cols] for _ in rows]
        for a in members:
            grid[rows.index(self.r_classes[a])][cols.index(self.l_classes[a])].append(a)
        return grid


def green(s: FiniteSemigroup) -> GreenStructure:
    els = list(s.elements())
    right = [right_ideal(s, a) for a in els]
    left = [left_ideal(s, a) for a in els]
    two = [two_sided_ideal(s, a) for a in els]
    r = _partition(right)
    l = _partition(left)
    h = _partition(zip(r, l))
    d = _partition(two)

    reps = {}
    for a in els:
        reps.setdefault(d[a], two[a])
    order = frozenset((i, j) for i, j in product(reps, repeat=2) if reps[i] < reps[j])
    maximal = frozenset(i for i in reps if not any(lo == i for lo, _ in order))
    ideal = frozenset(a for a in els if d[a] not in maximal)
    return GreenStructure(r, l, h, d, order, maximal, ideal)


@dataclass(frozen=True)
class CriterionVerdict:
    h_trivial: bool
    right_zero_pair: tuple[int, int] | None
    cayley_finite: bool
    dual_finite: bool


def _first_right_zero_pair(s: FiniteSemigroup):
    t = s.table
    idem = idempotents(s)
    for e in idem:
        for f in idem:
            if e < f and t[e][f] == f and t[f][e] == e:
                return e, f
    return None


def _first_r_related_idempotents(s: FiniteSemigroup, g: GreenStructure):
    idem = idempotents(s)
    for e in idem:
        for f in idem:
            if e < f and g.r_related(e, f):
                return e, f
    return None


def criteria(s: FiniteSemigroup, g: GreenStructure | None = None) -> CriterionVerdict:
    """Decide finiteness of C(S) and C*(S) from the structure of S.

    C(S) is finite iff S is H-trivial; C*(S) is finite iff additionally S has
    no two distinct R-related idempotents (equivalently no two-element right
    zero subsemigroup). Both forms of the second condition are evaluated and
    must agree.
    """
    g = g or green(s)
    h_trivial = len(set(g.h_classes)) == s.order
    by_products = _first_right_zero_pair(s)
    by_green = _first_r_related_idempotents(s, g)
    if by_products != by_green:
        raise InternalDisagreement(
            f"right zero pair {by_products} disagrees with R-related idempotents {by_green}"
        )
    return CriterionVerdict(
        h_trivial=h_trivial,
        right_zero_pair=by_green,
        cayley_finite=h_trivial,
        dual_finite=h_trivial and by_green is None,
    )


@dataclass(frozen=True)
class SchutzenbergerGroup:
    h_class: tuple[int, ...]
    stabilizer_t: tuple[int, ...]
    maps: frozenset  # each map is a tuple: image of h_class[i] at position i
    side: str = "right"

    def map_of(self, t: int, s: FiniteSemigroup) -> tuple[int, ...]:
        if self.side == "right":
            return tuple(s.table[h][t] for h in self.h_class)
        return tuple(s.table[t][h] for h in self.h_class)


def schutzenberger(s: FiniteSemigroup, h_member: int, g: GreenStructure | None = None,
                   side: str = "right") -> SchutzenbergerGroup:
    """Schützenberger group of the H-class of ``h_member``.

    With ``side="right"`` the stabilizer is ``{t : Ht ⊆ H}`` acting by
    ``h -> ht``; ``side="left"`` uses ``{t : tH ⊆ H}`` and ``h -> th``.
    ``stabilizer_t`` lists elements of S only, while ``maps`` always contains
    the identity of H.
    """
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    g = g or green(s)
    hc = tuple(g.h_class_of(h_member))
    members = set(hc)
    t = s.table
    if side == "right":
        act = lambda h, x: t[h][x]  # noqa: E731
    else:
        act = lambda h, x: t[x][h]  # noqa: E731
    stab = tuple(x for x in s.elements() if all(act(h, x) in members for h in hc))
    # The adjoined identity of S^1 always stabilizes H.
    maps = frozenset(tuple(act(h, x) for h in hc) for x in stab) | {hc}
    for m in maps:
        if set(m) != members:
            raise InternalDisagreement(f"stabilizer map {m} is not a bijection of {hc}")
    return SchutzenbergerGroup(hc, stab, maps, side)


def is_group_of_maps(maps, domain) -> bool:
    """Whether a set of permutations (tuples indexed like ``domain``) is
    closed under composition and contains the identity."""
    pos = {x: i for i, x in enumerate(domain)}
    ident = tuple(domain)
    if ident not in maps:
        return False
    for f, h in product(maps, repeat=2):
        if tuple(h[pos[f[i]]] for i in range(len(domain))) not in maps:
            return False
    return True


def miller_clifford_holds(s: FiniteSemigroup, g: GreenStructure | None = None) -> bool:
    """Check: whenever a, b and ab share a D-class, ab lies in R_a ∩ L_b."""
    g = g or green(s)
    d = g.d_classes
    t = s.table
    for a, b in product(s.elements(), repeat=2):
        ab = t[a][b]
        if d[a] == d[b] == d[ab]:
            if not (g.r_related(ab, a) and g.l_related(ab, b)):
                return False
    return True
