"""Small semigroups: exhaustive enumeration, canonical forms up to
isomorphism, table files, and criterion-versus-closure sweeps."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product
from pathlib import Path

from .closure import Budget, certificate, closure, closure_generators
from .errors import ParseError, SemigroupError
from .green import criteria, green
from .semigroup import FiniteSemigroup, check_associative, from_table

MAX_CATALOG_ORDER = 4
THREADS_ENV = "CAYLEY_MACHINA_THREADS"


def canonical_table(table) -> bytes:
    """Lexicographically least relabelling of ``table`` over all n! permutations."""
    n = len(table)
    best = None
    for perm in permutations(range(n)):
        inv = [0] * n
        for a, pa in enumerate(perm):
            inv[pa] = a
        flat = bytes(perm[table[inv[i]][inv[j]]] for i in range(n) for j in range(n))
        if best is None or flat < best:
            best = flat
    return best


@dataclass(frozen=True)
class CatalogEntry:
    semigroup: FiniteSemigroup
    canonical_table: bytes
    labeled_index: int

    @property
    def canonical_id(self) -> str:
        n = self.semigroup.order
        return f"{n}:" + "".join(str(v) for v in self.canonical_table)


def _check_order(n, limit=MAX_CATALOG_ORDER):
    if not 1 <= n <= limit:
        raise SemigroupError(f"order {n} outside supported range 1..{limit}")


def _cells(n, fill):
    if fill == "rows":
        return [(i, j) for i in range(n) for j in range(n)]
    if fill == "columns":
        return [(i, j) for j in range(n) for i in range(n)]
    raise ValueError(f"unknown fill order {fill!r}")


def _labeled_tables(n, fill="rows"):
    """Backtracking over cells; each new cell closes some associativity
    equations (ab)c = a(bc) and those are checked at once."""
    cells = _cells(n, fill)
    t = [[-1] * n for _ in range(n)]
    rn = range(n)

    def ok(i, j):
        v = t[i][j]
        # (i,j) as the inner product ab with a=i, b=j: (v)c = i(jc)
        for c in rn:
            jc, vc = t[j][c], t[v][c]
            if jc >= 0 and vc >= 0:
                r = t[i][jc]
                if r >= 0 and r != vc:
                    return False
        # (i,j) as bc with b=i, c=j: (ai)j = a v
        for a in rn:
            ai, av = t[a][i], t[a][v]
            if ai >= 0 and av >= 0:
                l = t[ai][j]
                if l >= 0 and l != av:
                    return False
        # (i,j) as the outer product (ab)c with ab = i, c = j
        for a in rn:
            for b in rn:
                if t[a][b] == i:
                    bj = t[b][j]
                    if bj >= 0:
                        r = t[a][bj]
                        if r >= 0 and r != v:
                            return False
        # (i,j) as the outer product a(bc) with a = i, bc = j
        for b in rn:
            for c in rn:
                if t[b][c] == j:
                    ib = t[i][b]
                    if ib >= 0:
                        l = t[ib][c]
                        if l >= 0 and l != v:
                            return False
        return True

    def rec(k):
        if k == len(cells):
            yield tuple(tuple(row) for row in t)
            return
        i, j = cells[k]
        for v in rn:
            t[i][j] = v
            if ok(i, j):
                yield from rec(k + 1)
        t[i][j] = -1

    yield from rec(0)


def enumerate_semigroups(n: int, mode: str = "labeled", fill: str = "rows"):
    """Yield every semigroup table of order n (``mode="labeled"``) or one
    representative per isomorphism class (``mode="up_to_iso"``)."""
    _check_order(n)
    if mode not in ("labeled", "up_to_iso"):
        raise ValueError(f"unknown mode {mode!r}")
    seen = set()
    for idx, table in enumerate(_labeled_tables(n, fill)):
        canon = canonical_table(table)
        if mode == "up_to_iso":
            if canon in seen:
                continue
            seen.add(canon)
        yield CatalogEntry(FiniteSemigroup(table), canon, idx)


def naive_enumerate(n: int):
    """Every n^(n*n) table filtered by a full associativity check."""
    _check_order(n, 3)
    for idx, flat in enumerate(product(range(n), repeat=n * n)):
        table = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if check_associative(table) is None:
            yield CatalogEntry(FiniteSemigroup(table), canonical_table(table), idx)


def iso_catalog(n: int) -> list[CatalogEntry]:
    """Iso-class representatives, sorted by canonical table."""
    return sorted(enumerate_semigroups(n, "up_to_iso"), key=lambda e: e.canonical_table)


def canonical_semigroup(entry: CatalogEntry) -> FiniteSemigroup:
    n = entry.semigroup.order
    c = entry.canonical_table
    return FiniteSemigroup(tuple(tuple(c[i * n:(i + 1) * n]) for i in range(n)))


# ---------------------------------------------------------------- table files

def load(path) -> FiniteSemigroup:
    """Read a table file (``.json`` for structured data, text otherwise)."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno) from None
        if not isinstance(data, dict) or "table" not in data:
            raise ParseError("expected an object with 'order' and 'table'")
        table = data["table"]
        order = data.get("order", len(table))
        return from_table(order, table, data.get("labels"))
    return parse_table_text(text)


def parse_table_text(text: str) -> FiniteSemigroup:
    lines = [(no, line.strip()) for no, line in enumerate(text.splitlines(), 1)]
    lines = [(no, line) for no, line in lines if line and not line.startswith("#")]
    if not lines:
        raise ParseError("empty table file")
    no, first = lines[0]
    try:
        n = int(first)
    except ValueError:
        raise ParseError(f"expected the order, got {first!r}", no) from None
    if n < 1:
        raise ParseError("order must be positive", no)
    rows = lines[1:]
    if len(rows) != n:
        line = rows[n][0] if len(rows) > n else (rows[-1][0] if rows else no)
        raise ParseError(f"expected {n} table rows, found {len(rows)}", line)
    table = []
    for no, line in rows:
        try:
            row = [int(v) for v in line.split()]
        except ValueError:
            raise ParseError(f"non-integer entry in {line!r}", no) from None
        if len(row) != n:
            raise ParseError(f"expected {n} entries, found {len(row)}", no)
        table.append(row)
    return from_table(n, table)


def format_table(table, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(str(len(table)))
    out.extend(" ".join(str(v) for v in row) for row in table)
    return "\n".join(out) + "\n"


def save(s: FiniteSemigroup, path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".json":
        data = {"order": s.order, "table": [list(r) for r in s.table]}
        if s.labels:
            data["labels"] = list(s.labels)
        path.write_text(json.dumps(data) + "\n")
    else:
        path.write_text(format_table(s.table))


# ---------------------------------------------------------------- sweeps

@dataclass(frozen=True)
class SweepRecord:
    canonical_id: str
    table: tuple[tuple[int, ...], ...]
    h_trivial: bool
    right_zero_pair: tuple[int, int] | None
    cayley_finite_predicted: bool
    dual_finite_predicted: bool
    cayley_verdict: str
    cayley_size: int
    cayley_limit: str | None
    dual_verdict: str
    dual_size: int
    dual_limit: str | None
    cayley_certificate: str | None
    dual_certificate: str | None
    cayley_growth: tuple[int, ...] = ()
    dual_growth: tuple[int, ...] = ()
    mismatches: tuple[str, ...] = ()


@dataclass(frozen=True)
class SweepReport:
    order: int
    records: tuple[SweepRecord, ...]
    counts: dict = field(default_factory=dict)

    @property
    def mismatches(self) -> list[str]:
        return [f"{r.canonical_id}: {m}" for r in self.records for m in r.mismatches]


def _side(s, dual, predicted_finite, budget, exhaust_budget, cert_length):
    report = closure(closure_generators(s, dual), budget if predicted_finite else exhaust_budget)
    problems = []
    cert = None
    if predicted_finite and not report.finite:
        problems.append(f"{'dual' if dual else 'cayley'}: predicted finite, closure exhausted ({report.limit})")
    if not predicted_finite:
        if report.finite:
            problems.append(f"{'dual' if dual else 'cayley'}: predicted infinite, closure finite ({report.size})")
        elif report.limit != "elements":
            problems.append(f"{'dual' if dual else 'cayley'}: stopped by {report.limit} before the element budget")
        if cert_length:
            cert = certificate(s, dual, cert_length)
            if not cert.all_distinct:
                problems.append(f"{'dual' if dual else 'cayley'}: certificate words coincide")
    return report, cert, problems


def sweep_entry(entry: CatalogEntry, budget: Budget, exhaust_budget: Budget,
                cert_length: int = 8) -> SweepRecord:
    s = canonical_semigroup(entry)
    v = criteria(s, green(s))
    cay, cay_cert, p1 = _side(s, False, v.cayley_finite, budget, exhaust_budget, cert_length)
    dua, dua_cert, p2 = _side(s, True, v.dual_finite, budget, exhaust_budget, cert_length)
    return SweepRecord(
        canonical_id=entry.canonical_id,
        table=s.table,
        h_trivial=v.h_trivial,
        right_zero_pair=v.right_zero_pair,
        cayley_finite_predicted=v.cayley_finite,
        dual_finite_predicted=v.dual_finite,
        cayley_verdict=cay.verdict,
        cayley_size=cay.elements_found,
        cayley_limit=cay.limit,
        dual_verdict=dua.verdict,
        dual_size=dua.elements_found,
        dual_limit=dua.limit,
        cayley_certificate=cay_cert.summary() if cay_cert else None,
        dual_certificate=dua_cert.summary() if dua_cert else None,
        cayley_growth=cay.growth_by_length,
        dual_growth=dua.growth_by_length,
        mismatches=tuple(p1 + p2),
    )


def worker_count(requested: int | None = None) -> int:
    cpus = os.cpu_count() or 1
    env = os.environ.get(THREADS_ENV)
    cap = int(env) if env and env.isdigit() and int(env) > 0 else cpus
    return max(1, min(requested or cpus, cap))


def _sweep_task(args):
    return sweep_entry(*args)


def sweep(n: int, budget: Budget | None = None, exhaust_elements: int = 10_000,
          cert_length: int = 8, workers: int | None = None) -> SweepReport:
    """Compare the finiteness criteria with closure outcomes on every
    isomorphism class of order n.

    Criterion-finite cases must close within ``budget``; criterion-infinite
    cases must exhaust ``exhaust_elements`` elements and have pairwise
    distinct certificate words up to ``cert_length``.
    """
    budget = budget or Budget()
    exhaust = Budget(min(exhaust_elements, budget.max_elements), budget.max_machine_states, budget.max_millis)
    entries = iso_catalog(n)
    tasks = [(e, budget, exhaust, cert_length) for e in entries]
    workers = worker_count(workers)
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = tuple(pool.map(_sweep_task, tasks))
    else:
        records = tuple(_sweep_task(t) for t in tasks)
    counts = {
        "classes": len(records),
        "h_trivial": sum(r.h_trivial for r in records),
        "cayley_finite": sum(r.cayley_verdict == "finite" for r in records),
        "dual_finite": sum(r.dual_verdict == "finite" for r in records),
        "cayley_finite_predicted": sum(r.cayley_finite_predicted for r in records),
        "dual_finite_predicted": sum(r.dual_finite_predicted for r in records),
        "mismatches": sum(len(r.mismatches) for r in records),
    }
    return SweepReport(n, records, counts)
