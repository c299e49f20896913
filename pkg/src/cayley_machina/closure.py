"""Enumeration of automaton semigroups generated by pointed transducers.

Two engines share the BFS contract (right multiplication by generators,
generator-index-lexicographic discovery order, exact deduplication):

* When the generators are closed under taking sections (every state of every
  generator machine is itself a generator, as for the states of a Cayley or
  dual Cayley machine), each discovered element is stored as its output map
  plus pointers to the elements that are its sections. The discovered
  elements then form one minimal Mealy machine, and a new product is equal to
  an old element iff the two are bisimilar in it. A depth-bounded hash of the
  section tree screens candidates; bisimulation confirms. Product machines are
  never built, which keeps free cases (whose minimal machines grow
  exponentially with word length) affordable.

* Otherwise elements are kept as words. Their action on a fixed set of probe
  sequences screens candidates and an exact walk over pairs of cascade states
  confirms equality.

Either way the equality relation is the functional one, so the reports match
what deduplication by canonical minimized transducers produces.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExhausted, InternalDisagreement, NotFinite, StateBudgetExceeded
from .green import criteria, green, schutzenberger
from .mealy import (
    MealyMachine,
    PointedTransducer,
    canonicalize,
    cayley,
    compose,
    dual_cayley,
    generator,
    repoint,
    step,
)
from .semigroup import FiniteSemigroup

HASH_ROUNDS = 32


@dataclass(frozen=True)
class Budget:
    max_elements: int = 100_000
    max_machine_states: int = 1_000_000
    max_millis: int = 60_000

    def __post_init__(self):
        for name in ("max_elements", "max_machine_states", "max_millis"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class ClosureReport:
    finite: bool
    generator_count: int
    growth_by_length: tuple[int, ...]
    elements_found: int
    limit: str | None = None  # "elements", "machine_states" or "time" when exhausted
    words: tuple[tuple[int, ...], ...] | None = None
    elements: tuple[PointedTransducer, ...] | None = field(default=None, repr=False)
    right: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False)
    table: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False)

    @property
    def size(self) -> int | None:
        return self.elements_found if self.finite else None

    @property
    def verdict(self) -> str:
        return "finite" if self.finite else "exhausted"


# ---------------------------------------------------------------- hashing

def _mix(h):
    h = h ^ (h >> np.uint64(33))
    h = h * np.uint64(0xFF51AFD7ED558CCD)
    h = h ^ (h >> np.uint64(33))
    h = h * np.uint64(0xC4CEB9FE1A85EC53)
    return h ^ (h >> np.uint64(33))


def _weights(count, seed):
    rng = np.random.default_rng(seed)
    return rng.integers(0, 2**63, size=count, dtype=np.uint64) * np.uint64(2) + np.uint64(1)


def _dedup_generators(generators):
    gens, keys, seen = [], [], {}
    if not generators:
        raise ValueError("need at least one generator")
    k = generators[0].alphabet_size
    for g in generators:
        if g.alphabet_size != k:
            raise ValueError("generators must share one alphabet")
        g = canonicalize(g)
        key = g.key()
        if key not in seen:
            seen[key] = len(gens)
            gens.append(g)
            keys.append(key)
    return gens, seen


def _section_table(gens, index):
    """Generator index of every section of every generator, or None."""
    out = []
    for g in gens:
        m = g.machine
        row = []
        for x in range(g.alphabet_size):
            j = index.get(repoint(g, m.delta[g.initial][x]).key())
            if j is None:
                return None
            row.append(j)
        out.append(row)
    return out


class _Timer:
    def __init__(self, millis):
        self.deadline = time.monotonic() + millis / 1000.0

    def expired(self):
        return time.monotonic() > self.deadline


# ---------------------------------------------------------------- section-closed engine

class _SectionEngine:
    def __init__(self, gens, gsec, budget: Budget):
        self.gens = gens
        self.m = len(gens)
        self.n = gens[0].alphabet_size
        self.budget = budget
        self.gtau = np.array([g.machine.lam[g.initial] for g in gens], dtype=np.int64)
        self.gsec = np.array(gsec, dtype=np.int64)
        self.w_tau = _weights(self.n, 1)
        self.w_sec = _weights(self.n, 2)

        cap = max(64, self.m)
        self.TAU = np.zeros((cap, self.n), dtype=np.int64)
        self.SEC = np.zeros((cap, self.n), dtype=np.int64)
        self.RIGHT = np.full((cap, self.m), -1, dtype=np.int64)
        self.H = np.zeros((cap, HASH_ROUNDS + 1), dtype=np.uint64)
        self.tau_list: list[tuple] = []
        self.sec_list: list[list] = []
        self.parent: list[int] = []
        self.via: list[int] = []
        self.count = 0

    def _grow(self, need):
        cap = self.TAU.shape[0]
        if need <= cap:
            return
        new = max(need, 2 * cap)
        for name, fill in (("TAU", 0), ("SEC", 0), ("RIGHT", -1), ("H", 0)):
            old = getattr(self, name)
            arr = np.full((new, old.shape[1]), fill, dtype=old.dtype)
            arr[:cap] = old
            setattr(self, name, arr)

    def _tau_hash(self, tau):
        return _mix((tau.astype(np.uint64) * self.w_tau).sum(axis=1, dtype=np.uint64))

    def _seed_generators(self):
        m = self.m
        self._grow(m)
        self.TAU[:m] = self.gtau
        self.SEC[:m] = self.gsec
        th = self._tau_hash(self.gtau)
        self.H[:m, 0] = th
        for r in range(1, HASH_ROUNDS + 1):
            prev = self.H[:m, r - 1][self.gsec]
            self.H[:m, r] = _mix(th + (prev * self.w_sec).sum(axis=1, dtype=np.uint64))
        self.tau_list = [tuple(row) for row in self.gtau.tolist()]
        self.sec_list = [list(row) for row in self.gsec.tolist()]
        self.parent = [-1] * m
        self.via = list(range(m))
        self.count = m

    def run(self) -> ClosureReport:
        timer = _Timer(self.budget.max_millis)
        if self.m > self.budget.max_elements:
            return self._exhausted([self.budget.max_elements], "elements")
        self._seed_generators()
        buckets: dict[int, list[int]] = {}
        for i in range(self.m):
            buckets.setdefault(int(self.H[i, HASH_ROUNDS]), []).append(i)
        growth = [self.m]
        lo, hi = 0, self.m
        while hi > lo:
            if timer.expired():
                return self._exhausted(growth, "time")
            n0 = self.count
            f = hi - lo
            m = self.m
            tauf = self.TAU[lo:hi]
            secf = self.SEC[lo:hi]
            # candidate c = (frontier element lo + c // m) * (generator c % m)
            ctau = self.gtau[:, tauf].transpose(1, 0, 2).reshape(f * m, self.n)
            hgen = self.gsec[:, tauf].transpose(1, 0, 2)             # (f, m, n)
            a = np.broadcast_to(secf[:, None, :], hgen.shape)
            known = self.RIGHT[a, hgen]
            if np.any((known < 0) & ((a < lo) | (a >= hi))):
                raise InternalDisagreement("section outside the current frontier is unresolved")
            target = np.where(known >= 0, known, n0 + (a - lo) * m + hgen).reshape(f * m, self.n)

            th = self._tau_hash(ctau)
            hc = np.zeros((f * m, HASH_ROUNDS + 1), dtype=np.uint64)
            hc[:, 0] = th
            for r in range(1, HASH_ROUNDS + 1):
                prev = np.concatenate([self.H[:n0, r - 1], hc[:, r - 1]])[target]
                hc[:, r] = _mix(th + (prev * self.w_sec).sum(axis=1, dtype=np.uint64))

            c_tau = [tuple(row) for row in ctau.tolist()]
            c_sec = [[t if t < n0 else -(t - n0) - 1 for t in row] for row in target.tolist()]
            final = hc[:, HASH_ROUNDS].tolist()
            resolved = [-1] * (f * m)
            added = 0
            limit = None
            for c in range(f * m):
                if c & 1023 == 0 and timer.expired():
                    limit = "time"
                    break
                key = final[c]
                found = resolved[c]
                for cand in (buckets.get(key, ()) if found < 0 else ()):
                    if self._bisim(-c - 1, cand, c_tau, c_sec, resolved):
                        found = cand
                        break
                if found < 0:
                    if self.count >= self.budget.max_elements:
                        limit = "elements"
                        break
                    found = self.count
                    self._grow(found + 1)
                    self.tau_list.append(c_tau[c])
                    self.sec_list.append(list(c_sec[c]))
                    self.TAU[found] = ctau[c]
                    self.H[found] = hc[c]
                    self.parent.append(lo + c // m)
                    self.via.append(c % m)
                    self.count += 1
                    buckets.setdefault(key, []).append(found)
                    added += 1
                resolved[c] = found
                self.RIGHT[lo + c // m, c % m] = found
            if limit is not None:
                growth.append(added)
                return self._exhausted(growth, limit)
            for i in range(n0, self.count):
                row = [t if t >= 0 else resolved[-t - 1] for t in self.sec_list[i]]
                self.sec_list[i] = row
                self.SEC[i] = row
            if added:
                growth.append(added)
            lo, hi = n0, self.count
        return self._finite(growth)

    def _bisim(self, a, b, c_tau, c_sec, resolved) -> bool:
        """Exact equality of two states of the growing machine.

        Non-negative ids are discovered elements (pairwise inequivalent);
        negative ids are unresolved candidates of the current level.
        """
        tau_list, sec_list = self.tau_list, self.sec_list

        def norm(s):
            if s < 0:
                r = resolved[-s - 1]
                if r >= 0:
                    return r
            return s

        def info(s):
            if s >= 0:
                return tau_list[s], sec_list[s]
            return c_tau[-s - 1], c_sec[-s - 1]

        stack = [(a, b)]
        seen = set()
        while stack:
            p, q = stack.pop()
            p, q = norm(p), norm(q)
            if p == q:
                continue
            if p >= 0 and q >= 0:
                return False
            if (p, q) in seen:
                continue
            seen.add((p, q))
            tp, sp = info(p)
            tq, sq = info(q)
            if tp != tq:
                return False
            stack.extend(zip(sp, sq))
        # The explored pairs form a bisimulation: every candidate met opposite
        # an element equals it, and is resolved now instead of later.
        for p, q in seen:
            if p < 0 <= q:
                resolved[-p - 1] = q
            elif q < 0 <= p:
                resolved[-q - 1] = p
        return True

    def _word(self, i):
        w = []
        while i >= 0:
            w.append(self.via[i])
            i = self.parent[i]
        return tuple(reversed(w))

    def _exhausted(self, growth, limit):
        return ClosureReport(False, self.m, tuple(growth), self.count or self.budget.max_elements, limit)

    def _finite(self, growth):
        count = self.count
        words = tuple(self._word(i) for i in range(count))
        elements = tuple(self._element_machine(i) for i in range(count))
        right = tuple(tuple(int(v) for v in row) for row in self.RIGHT[:count].tolist())
        return ClosureReport(True, self.m, tuple(growth), count, None, words, elements, right,
                             _closure_table(right, words))

    def _element_machine(self, i) -> PointedTransducer:
        order = [i]
        index = {i: 0}
        for s in order:
            for t in self.sec_list[s]:
                if t not in index:
                    index[t] = len(order)
                    order.append(t)
        delta = tuple(tuple(index[t] for t in self.sec_list[s]) for s in order)
        lam = tuple(self.tau_list[s] for s in order)
        return canonicalize(PointedTransducer(MealyMachine(len(order), self.n, delta, lam), 0))


def _closure_table(right, words):
    count = len(words)
    table = []
    for i in range(count):
        row = []
        for j in range(count):
            cur = i
            for g in words[j]:
                cur = right[cur][g]
            row.append(cur)
        table.append(tuple(row))
    return tuple(table)


# ---------------------------------------------------------------- word / probe engine

class _WordSpace:
    """Generators as arrays plus a probe set used to fingerprint words."""

    def __init__(self, gens, probe_length=48, random_probes=6, seed=20240601):
        self.gens = gens
        self.n = n = gens[0].alphabet_size
        self.dtype = np.uint8 if n <= 256 else np.uint16
        self.delta = [np.array(g.machine.delta, dtype=np.int64) for g in gens]
        self.lam = [np.array(g.machine.lam, dtype=np.int64) for g in gens]
        self.init = [g.initial for g in gens]
        self.delta_l = [g.machine.delta for g in gens]
        self.lam_l = [g.machine.lam for g in gens]
        rng = np.random.default_rng(seed)
        consts = [np.full(probe_length, x) for x in range(min(n, 16))]
        rand = [rng.integers(0, n, probe_length) for _ in range(random_probes)]
        self.probes = np.array(consts + rand, dtype=self.dtype)
        self.w1 = _weights(self.probes.size, 3)
        self.w2 = _weights(self.probes.size, 4)

    def base(self, count=1):
        return np.broadcast_to(self.probes, (count,) + self.probes.shape).copy()

    def advance(self, outs, g):
        """Feed every probe output in ``outs`` (B, P, L) through generator g."""
        b, p, length = outs.shape
        flat = outs.reshape(b * p, length)
        res = np.empty_like(flat)
        state = np.full(b * p, self.init[g], dtype=np.int64)
        d, l = self.delta[g], self.lam[g]
        for t in range(length):
            col = flat[:, t]
            res[:, t] = l[state, col]
            state = d[state, col]
        return res.reshape(b, p, length)

    def keys(self, outs, chunk=2048):
        b = outs.shape[0]
        flat = outs.reshape(b, -1)
        out = []
        for s in range(0, b, chunk):
            block = flat[s:s + chunk].astype(np.uint64)
            h1 = _mix((block * self.w1).sum(axis=1, dtype=np.uint64)).tolist()
            h2 = _mix((block * self.w2).sum(axis=1, dtype=np.uint64)).tolist()
            out.extend((x << 64) | y for x, y in zip(h1, h2))
        return out

    def _run(self, word, states, x):
        nxt = []
        dl, ll = self.delta_l, self.lam_l
        for g, q in zip(word, states):
            y = ll[g][q][x]
            nxt.append(dl[g][q][x])
            x = y
        return x, tuple(nxt)

    def words_equal(self, w1, w2, cap) -> bool:
        """Exact equality of two generator words by walking pairs of cascade
        states reachable from the initial pair."""
        if tuple(w1) == tuple(w2):
            return True
        start = (tuple(self.init[g] for g in w1), tuple(self.init[g] for g in w2))
        seen = {start}
        stack = [start]
        while stack:
            s1, s2 = stack.pop()
            for x in range(self.n):
                y1, n1 = self._run(w1, s1, x)
                y2, n2 = self._run(w2, s2, x)
                if y1 != y2:
                    return False
                pair = (n1, n2)
                if pair not in seen:
                    seen.add(pair)
                    if len(seen) > cap:
                        raise StateBudgetExceeded(f"equality check exceeds {cap} state pairs")
                    stack.append(pair)
        return True

    def word_transducer(self, word, cap) -> PointedTransducer:
        start = tuple(self.init[g] for g in word)
        index = {start: 0}
        order = [start]
        delta, lam = [], []
        for s in order:
            drow, lrow = [], []
            for x in range(self.n):
                y, nxt = self._run(word, s, x)
                i = index.get(nxt)
                if i is None:
                    i = index[nxt] = len(order)
                    order.append(nxt)
                    if len(order) > cap:
                        raise StateBudgetExceeded(f"word machine exceeds {cap} states")
                drow.append(i)
                lrow.append(y)
            delta.append(tuple(drow))
            lam.append(tuple(lrow))
        return canonicalize(PointedTransducer(MealyMachine(len(order), self.n, tuple(delta), tuple(lam)), 0))


def _word_closure(gens, budget: Budget) -> ClosureReport:
    timer = _Timer(budget.max_millis)
    space = _WordSpace(gens)
    m = len(gens)
    cap = budget.max_machine_states
    words: list[tuple[int, ...]] = []
    buckets: dict[int, list[int]] = {}
    right: list[list[int]] = []
    growth: list[int] = []

    def exhausted(limit):
        return ClosureReport(False, m, tuple(growth), len(words), limit)

    frontier_ids: list[int] = []
    frontier_outs = None
    # Level 1: the generators themselves, already pairwise distinct.
    if m > budget.max_elements:
        growth.append(budget.max_elements)
        return ClosureReport(False, m, tuple(growth), budget.max_elements, "elements")
    outs = np.stack([space.advance(space.base(), g)[0] for g in range(m)])
    for g, key in enumerate(space.keys(outs)):
        words.append((g,))
        right.append([-1] * m)
        buckets.setdefault(key, []).append(g)
    growth.append(m)
    frontier_ids = list(range(m))
    frontier_outs = outs
    while frontier_ids:
        if timer.expired():
            return exhausted("time")
        cand_outs = np.stack([space.advance(frontier_outs, g) for g in range(m)], axis=1)
        cand_outs = cand_outs.reshape((-1,) + cand_outs.shape[2:])
        keys = space.keys(cand_outs)
        new_ids, new_rows = [], []
        for c, key in enumerate(keys):
            e, g = frontier_ids[c // m], c % m
            w = words[e] + (g,)
            found = -1
            try:
                for other in buckets.get(key, ()):
                    if space.words_equal(w, words[other], cap):
                        found = other
                        break
            except StateBudgetExceeded:
                growth.append(len(new_ids))
                return exhausted("machine_states")
            if found < 0:
                if len(words) >= budget.max_elements:
                    growth.append(len(new_ids))
                    return exhausted("elements")
                found = len(words)
                words.append(w)
                right.append([-1] * m)
                buckets.setdefault(key, []).append(found)
                new_ids.append(found)
                new_rows.append(c)
            right[e][g] = found
        if new_ids:
            growth.append(len(new_ids))
        frontier_ids = new_ids
        frontier_outs = cand_outs[new_rows] if new_rows else None
    try:
        elements = tuple(space.word_transducer(w, cap) for w in words)
    except StateBudgetExceeded:
        return exhausted("machine_states")
    right_t = tuple(tuple(r) for r in right)
    words_t = tuple(words)
    return ClosureReport(True, m, tuple(growth), len(words), None, words_t, elements, right_t,
                         _closure_table(right_t, words_t))


# ---------------------------------------------------------------- public operations

SOUNDNESS_CHECK_LIMIT = 4096


def closure(generators, budget: Budget | None = None, check: bool = True) -> ClosureReport:
    """BFS closure of the semigroup generated by ``generators``.

    Returns a finite report (elements in discovery order, their shortest
    words over the deduplicated generators, right-multiplication table and
    the full multiplication table) or an exhausted report naming the limit
    that stopped the search.
    """
    budget = budget or Budget()
    gens, index = _dedup_generators(list(generators))
    gsec = _section_table(gens, index)
    if gsec is not None:
        report = _SectionEngine(gens, gsec, budget).run()
    else:
        report = _word_closure(gens, budget)
    if check and report.finite and report.size * len(gens) <= SOUNDNESS_CHECK_LIMIT:
        verify_closed(report, gens, budget.max_machine_states)
    return report


def closure_generators(s: FiniteSemigroup, dual: bool) -> list[PointedTransducer]:
    machine = dual_cayley(s) if dual else cayley(s)
    return [generator(machine, a) for a in s.elements()]


def verify_closed(report: ClosureReport, generators, max_states: int = 1_000_000) -> None:
    """Recheck a finite report with independent transducer composition:
    every element times every generator must be the recorded element."""
    if not report.finite:
        raise NotFinite("only finite reports can be verified")
    gens, _ = _dedup_generators(list(generators))
    keys = {e.key(): i for i, e in enumerate(report.elements)}
    if len(keys) != report.size:
        raise InternalDisagreement("closure elements are not pairwise distinct")
    for i, e in enumerate(report.elements):
        for g, gen in enumerate(gens):
            j = keys.get(compose(e, gen, max_states).key())
            if j is None or j != report.right[i][g]:
                raise InternalDisagreement(f"element {i} times generator {g} is not element {report.right[i][g]}")


@dataclass(frozen=True)
class FreeCheckReport:
    length: int
    distinct_counts: tuple[int, ...]
    is_free_up_to_L: bool
    generator_count: int
    total_words: int
    total_distinct: int  # across all lengths


def _enumerate_words(gens, length: int, budget: Budget):
    """Distinct elements among all products of exactly i generators, for
    i = 1..length, and among all of them together. Generators are taken
    as given (not deduplicated)."""
    g = len(gens)
    total = sum(g ** i for i in range(1, length + 1))
    if g ** length > budget.max_elements:
        raise BudgetExhausted(f"{g ** length} words of length {length} exceed the element budget {budget.max_elements}")
    space = _WordSpace(gens, probe_length=max(48, 2 * length + 16))
    cap = budget.max_machine_states

    def word(level, idx):
        w = []
        for _ in range(level):
            idx, r = divmod(idx, g)
            w.append(r)
        return tuple(reversed(w))

    global_buckets: dict[int, list[tuple[int, int]]] = {}
    counts = []
    total_distinct = 0
    outs = space.base()
    for level in range(1, length + 1):
        outs = np.stack([space.advance(outs, k) for k in range(g)], axis=1)
        outs = outs.reshape((-1,) + outs.shape[2:])
        keys = space.keys(outs)
        level_buckets: dict[int, list[int]] = {}
        distinct = 0
        for idx, key in enumerate(keys):
            w = word(level, idx)
            bucket = level_buckets.setdefault(key, [])
            if not any(space.words_equal(w, word(level, o), cap) for o in bucket):
                bucket.append(idx)
                distinct += 1
                gb = global_buckets.setdefault(key, [])
                if not any(space.words_equal(w, word(lv, o), cap) for lv, o in gb):
                    gb.append((level, idx))
                    total_distinct += 1
        counts.append(distinct)
    return tuple(counts), total, total_distinct


def free_check(generators, length: int, budget: Budget | None = None) -> FreeCheckReport:
    if length < 1:
        raise ValueError("length must be at least 1")
    budget = budget or Budget()
    gens = [canonicalize(x) for x in generators]
    counts, total, total_distinct = _enumerate_words(gens, length, budget)
    g = len(gens)
    free = all(c == g ** (i + 1) for i, c in enumerate(counts))
    return FreeCheckReport(length, counts, free, g, total, total_distinct)


@dataclass(frozen=True)
class Certificate:
    kind: str  # "FreeRightZeroPair" or "NontrivialHClass"
    witnesses: tuple[int, ...]
    witness_words_checked: int
    all_distinct: bool
    distinct_counts: tuple[int, ...]
    pair: tuple[int, int] | None = None
    h_class: tuple[int, ...] | None = None
    stabilizer_t: tuple[int, ...] | None = None

    def summary(self) -> str:
        if self.kind == "FreeRightZeroPair":
            what = f"FreeRightZeroPair{{{self.pair[0]},{self.pair[1]}}}"
        else:
            what = f"NontrivialHClass{{H={list(self.h_class)}, T={list(self.stabilizer_t)}}}"
        return f"{what} words<={self.witness_words_checked} all_distinct={self.all_distinct}"


def certificate(s: FiniteSemigroup, dual: bool, length: int,
                budget: Budget | None = None) -> Certificate | None:
    """Evidence of infiniteness for C*(S) (``dual``) or C(S).

    For a pair of distinct R-related idempotents e, f the witnesses are e, f.
    Otherwise a non-trivial H-class is used, with one witness per map of its
    Schützenberger group (right translations for the dual machine, left ones
    for the Cayley machine). All products of witnesses up to ``length`` are
    checked for pairwise distinctness.
    """
    g = green(s)
    v = criteria(s, g)
    if (v.dual_finite if dual else v.cayley_finite):
        return None
    machine = dual_cayley(s) if dual else cayley(s)
    if dual and v.right_zero_pair is not None:
        witnesses = tuple(v.right_zero_pair)
        extra = {"pair": v.right_zero_pair}
    else:
        first = next(a for a in s.elements() if len(g.h_class_of(a)) > 1)
        sg = schutzenberger(s, first, g, side="right" if dual else "left")
        chosen = {}
        for t in sg.stabilizer_t:
            chosen.setdefault(sg.map_of(t, s), t)
        witnesses = tuple(sorted(chosen.values()))
        extra = {"h_class": sg.h_class, "stabilizer_t": sg.stabilizer_t}
    gens = [generator(machine, t) for t in witnesses]
    counts, total, total_distinct = _enumerate_words(gens, length, budget or Budget())
    kind = "FreeRightZeroPair" if "pair" in extra else "NontrivialHClass"
    return Certificate(kind, witnesses, length, total_distinct == total, counts, **extra)


def closure_isomorphic(a: ClosureReport, b: ClosureReport, max_size: int = 64) -> bool:
    """Whether the multiplication tables of two finite closures are isomorphic."""
    if not (a.finite and b.finite):
        raise NotFinite("both closures must be finite")
    if a.size > max_size or b.size > max_size:
        raise ValueError(f"closures larger than {max_size} are not compared")
    if a.size != b.size:
        return False
    return tables_isomorphic(a.table, b.table)


def _invariant(t, x):
    n = len(t)
    powers = [x]
    seen = {x: 0}
    while True:
        p = t[powers[-1]][x]
        if p in seen:
            index, period = seen[p], len(powers) - seen[p]
            break
        seen[p] = len(powers)
        powers.append(p)
    return (t[x][x] == x, len(set(t[x])), len({t[y][x] for y in range(n)}), index, period)


def tables_isomorphic(ta, tb) -> bool:
    n = len(ta)
    if n != len(tb):
        return False
    inv_a = [_invariant(ta, x) for x in range(n)]
    inv_b = [_invariant(tb, x) for x in range(n)]
    if sorted(inv_a) != sorted(inv_b):
        return False
    f = [-1] * n
    used = [False] * n

    def assign(x, y, trail):
        f[x] = y
        used[y] = True
        trail.append(x)

    def propagate(trail):
        queue = list(trail)
        while queue:
            x = queue.pop()
            for z in range(n):
                if f[z] < 0:
                    continue
                for p, q in ((ta[x][z], tb[f[x]][f[z]]), (ta[z][x], tb[f[z]][f[x]])):
                    if f[p] >= 0:
                        if f[p] != q:
                            return False
                    elif used[q] or inv_a[p] != inv_b[q]:
                        return False
                    else:
                        assign(p, q, trail)
                        queue.append(p)
        return True

    def undo(trail):
        for x in trail:
            used[f[x]] = False
            f[x] = -1

    def search():
        x = next((i for i in range(n) if f[i] < 0), None)
        if x is None:
            return True
        for y in range(n):
            if used[y] or inv_a[x] != inv_b[y]:
                continue
            trail = []
            assign(x, y, trail)
            if propagate(trail) and search():
                return True
            undo(trail)
        return False

    return search()


@dataclass(frozen=True)
class Eq1Check:
    ok: bool
    trials: int
    failure: tuple | None = None  # (word, x, reason)

    def __bool__(self):
        return self.ok


def verify_eq1(s: FiniteSemigroup, trials: int, seed: int, max_k: int = 5) -> Eq1Check:
    """Sample words a1..ak and symbols x; check that the dual generator word
    read at x emits x*a1*...*ak and moves to the product of the generators
    of a1*x, a2*x*a1, ..., ak*x*a1*...*a(k-1)."""
    import random

    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    machine = dual_cayley(s)
    n = s.order
    gens = [generator(machine, a) for a in s.elements()]
    cache: dict[tuple, PointedTransducer] = {}

    def word_element(word):
        word = tuple(word)
        hit = cache.get(word)
        if hit is None:
            hit = gens[word[0]] if len(word) == 1 else compose(word_element(word[:-1]), gens[word[-1]])
            cache[word] = hit
        return hit

    t = s.table
    for _ in range(trials):
        k = rng.randint(1, max_k)
        a = [rng.randrange(n) for _ in range(k)]
        x = rng.randrange(n)
        out, nxt = step(word_element(a), x)
        if out != s.product([x] + a):
            return Eq1Check(False, trials, (tuple(a), x, f"output {out} != x*a1*...*ak"))
        expected = []
        prefix = None
        for ai in a:
            head = t[ai][x]
            expected.append(head if prefix is None else t[head][prefix])
            prefix = ai if prefix is None else t[prefix][ai]
        if nxt.key() != word_element(expected).key():
            return Eq1Check(False, trials, (tuple(a), x, f"state is not the product over {expected}"))
    return Eq1Check(True, trials)
