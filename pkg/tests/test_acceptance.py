"""Acceptance suite: one test per criterion, each reported as a PASS/FAIL
line in the terminal summary."""

import random
import time
from itertools import product

from cayley_machina import (
    Budget,
    apply_prefix,
    closure,
    closure_generators,
    closure_isomorphic,
    criteria,
    direct_product,
    dual_cayley,
    enumerate_semigroups,
    equal,
    free_check,
    generator,
    green,
    miller_clifford_holds,
    named,
    naive_enumerate,
    schutzenberger,
    sweep,
    verify_eq1,
)
from cayley_machina.catalog import iso_catalog
from cayley_machina.green import is_group_of_maps
from cayley_machina.semigroup import classify

from conftest import all_words, catalog_upto, criterion


def _sweep_side(side, title, number):
    with criterion(number, title) as c:
        start = time.perf_counter()
        r = sweep(3, Budget(max_elements=100_000), exhaust_elements=10_000, cert_length=8)
        elapsed = time.perf_counter() - start
        assert r.counts["classes"] == 24
        side_mismatches = [m for m in r.mismatches if f": {side}:" in m]
        assert side_mismatches == [], side_mismatches
        for rec in r.records:
            predicted = rec.dual_finite_predicted if side == "dual" else rec.cayley_finite_predicted
            verdict = rec.dual_verdict if side == "dual" else rec.cayley_verdict
            limit = rec.dual_limit if side == "dual" else rec.cayley_limit
            size = rec.dual_size if side == "dual" else rec.cayley_size
            cert = rec.dual_certificate if side == "dual" else rec.cayley_certificate
            if predicted:
                assert verdict == "finite"
            else:
                assert verdict == "exhausted" and limit == "elements" and size == 10_000
                assert "words<=8 all_distinct=True" in cert
        assert elapsed < 300
        finite = r.counts[f"{side}_finite"]
        c.detail = f"24 classes, {finite} finite, {24 - finite} exhausted 10^4 with distinct certificates, {elapsed:.1f}s"


def test_dual_sweep_order3():
    _sweep_side("dual", "dual machine sweep, order 3", 1)


def test_cayley_sweep_order3():
    _sweep_side("cayley", "Cayley machine sweep, order 3", 2)


def test_groups_generate_free_semigroups():
    with criterion(3, "Cayley machines of groups are free") as c:
        groups = {
            "cyclic:2": named("cyclic:2"),
            "cyclic:3": named("cyclic:3"),
            "klein": direct_product(named("cyclic:2"), named("cyclic:2")),
        }
        done = []
        for name, g in groups.items():
            assert classify(g)["is_group"]
            n = g.order
            length = max(i for i in range(1, 40) if n ** i <= 100_000)
            r = free_check(closure_generators(g, False), length)
            assert r.distinct_counts == tuple(n ** i for i in range(1, length + 1)), (name, r.distinct_counts)
            done.append(f"{name} L={length}")
        c.detail = ", ".join(done)


def test_right_zero_dual_is_free_shift():
    with criterion(4, "dual right zero machines are free shifts") as c:
        for n in (2, 3):
            s = named(f"rightzero:{n}")
            length = max(i for i in range(1, 40) if n ** i <= 100_000)
            r = free_check(closure_generators(s, True), length)
            assert r.distinct_counts == tuple(n ** i for i in range(1, length + 1))
            d = dual_cayley(s)
            for i in range(n):
                g = generator(d, i)
                for w in all_words(n, 7):
                    w = list(w)
                    assert apply_prefix(g, w) == ([i] + w)[: len(w)]
        c.detail = "rightzero:2 L=16, rightzero:3 L=10, shift checked on all words up to length 7"


def test_generator_equality_is_right_translation_equality():
    with criterion(5, "equal dual generators iff equal right translations") as c:
        checked = 0
        for s in catalog_upto(3):
            d = dual_cayley(s)
            rho = [tuple(s.table[x][a] for x in s.elements()) for a in s.elements()]
            for a, b in product(s.elements(), repeat=2):
                assert equal(generator(d, a), generator(d, b)) == (rho[a] == rho[b])
                checked += 1
        c.detail = f"{checked} pairs over {len(catalog_upto(3))} semigroups"


def test_left_zero_factor_does_not_change_dual_closure():
    with criterion(6, "adjoining a left zero factor keeps the dual closure") as c:
        count = 0
        for s in catalog_upto(3):
            if not criteria(s).dual_finite:
                continue
            a = closure(closure_generators(s, True))
            b = closure(closure_generators(direct_product(s, named("leftzero:2")), True))
            assert a.finite and b.finite and a.size == b.size
            assert closure_isomorphic(a, b)
            count += 1
        c.detail = f"{count} dual-finite semigroups"


def test_transition_identity():
    with criterion(7, "state and output of dual generator words") as c:
        pool = catalog_upto(4)
        rng = random.Random(2024)
        picks = rng.sample(range(len(pool)), 20)
        for k, i in enumerate(picks):
            result = verify_eq1(pool[i], 1000, seed=k)
            assert result, (pool[i].table, result.failure)
        c.detail = f"20 semigroups x 1000 trials (catalog indices {sorted(picks)[:3]}...)"


def test_miller_clifford_and_schutzenberger_order():
    with criterion(8, "Miller-Clifford and Schutzenberger group orders") as c:
        pool = [s for s in catalog_upto(4) if s.order == 4]
        assert len(pool) == 188
        h_classes = 0
        for s in catalog_upto(4):
            g = green(s)
            assert miller_clifford_holds(s, g)
            for cls in g.classes("h"):
                for side in ("right", "left"):
                    sg = schutzenberger(s, cls[0], g, side=side)
                    assert len(sg.maps) == len(cls)
                    assert is_group_of_maps(sg.maps, sg.h_class)
                h_classes += 1
        c.detail = f"{h_classes} H-classes over {len(catalog_upto(4))} semigroups of order <= 4"


def test_catalog_integrity():
    with criterion(9, "catalog counts") as c:
        for n, labeled, iso in ((1, 1, 1), (2, 8, 5), (3, 113, 24)):
            naive = sorted(e.semigroup.table for e in naive_enumerate(n))
            ours = sorted(e.semigroup.table for e in enumerate_semigroups(n))
            assert ours == naive and len(ours) == labeled
            assert len({e.canonical_table for e in naive_enumerate(n)}) == iso
            assert len(list(enumerate_semigroups(n, "up_to_iso"))) == iso
        rows = sorted(e.semigroup.table for e in enumerate_semigroups(4, fill="rows"))
        cols = sorted(e.semigroup.table for e in enumerate_semigroups(4, fill="columns"))
        assert rows == cols and len(rows) == 3492
        assert len(iso_catalog(4)) == 188
        c.detail = "1/8/113/3492 labeled, 1/5/24/188 up to iso, fill orders agree"


def test_dual_finite_without_ideal_is_left_zero():
    with criterion(10, "dual-finite with empty ideal I is left zero") as c:
        hits = 0
        for s in catalog_upto(4):
            g = green(s)
            if criteria(s, g).dual_finite and not g.ideal_i:
                assert classify(s)["is_left_zero"], s.table
                hits += 1
        c.detail = f"{hits} semigroups of order <= 4 qualify, all left zero"
