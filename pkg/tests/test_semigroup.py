from itertools import product

import pytest

from cayley_machina import (
    NonAssociative,
    OutOfRange,
    SemigroupError,
    UnknownFamily,
    classify,
    direct_product,
    from_table,
    named,
)
from cayley_machina.semigroup import check_associative


def first_failure_brute(table):
    n = len(table)
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            return (a, b, c)
    return None


def test_from_table_group_and_left_zero():
    assert from_table(2, [[0, 1], [1, 0]]).order == 2
    assert from_table(2, [[0, 0], [1, 1]]).table == ((0, 0), (1, 1))


def test_from_table_reports_first_failing_triple():
    table = [[0, 1], [0, 0]]
    # (1,1,1) fails too, but (1,0,1) comes first: (1*0)*1 = 1, 1*(0*1) = 0.
    assert first_failure_brute(table) == (1, 0, 1)
    with pytest.raises(NonAssociative) as info:
        from_table(2, table)
    assert info.value.triple == (1, 0, 1)


def test_associativity_check_matches_brute_force():
    for flat in product(range(2), repeat=4):
        table = [list(flat[:2]), list(flat[2:])]
        assert check_associative(table) == first_failure_brute(table)


@pytest.mark.parametrize("table, where", [([[0, 2], [1, 0]], (0, 1)), ([[0, -1], [1, 0]], (0, 1))])
def test_out_of_range(table, where):
    with pytest.raises(OutOfRange) as info:
        from_table(2, table)
    assert (info.value.row, info.value.col) == where


def test_bad_shapes():
    with pytest.raises(SemigroupError):
        from_table(0, [])
    with pytest.raises(SemigroupError):
        from_table(2, [[0, 0]])
    with pytest.raises(SemigroupError):
        from_table(2, [[0], [0]])


def test_named_families():
    assert named("rightzero:2").table == ((0, 1), (0, 1))
    assert named("leftzero:2").table == ((0, 0), (1, 1))
    assert named("chain:2").table == ((0, 0), (0, 1))
    assert named("cyclic:3").table == ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    assert named("null:3").table == ((0,) * 3,) * 3
    assert named("trivial").table == ((0,),)


@pytest.mark.parametrize("spec", ["free:2", "cyclic", "cyclic:x", "bogus"])
def test_named_unknown(spec):
    with pytest.raises(UnknownFamily):
        named(spec)


def test_named_rejects_zero_size():
    with pytest.raises(SemigroupError):
        named("chain:0")


def test_direct_product_componentwise():
    a, b = named("chain:2"), named("leftzero:2")
    p = direct_product(a, b)
    assert p.order == 4
    for i, j in product(range(4), repeat=2):
        assert p.table[i][j] == a.table[i // 2][j // 2] * 2 + b.table[i % 2][j % 2]


def test_direct_product_with_trivial_factor():
    assert direct_product(named("trivial"), named("rightzero:3")).table == named("rightzero:3").table


def test_klein_four():
    v = direct_product(named("cyclic:2"), named("cyclic:2"))
    assert [[v.table[i][j] for j in range(4)] for i in range(4)] == [
        [0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    assert classify(v)["is_group"]


def test_direct_product_order_cap():
    with pytest.raises(SemigroupError):
        direct_product(named("chain:20"), named("chain:20"))


def test_classify():
    lz = classify(named("leftzero:2"))
    assert lz["is_left_zero"] and lz["idempotent_set"] == {0, 1}
    c2 = classify(named("cyclic:2"))
    assert c2["is_group"] and c2["is_commutative"]
    assert classify(named("null:2"))["idempotent_set"] == {0}
    assert classify(named("rightzero:3"))["is_right_zero"]
    assert not classify(named("chain:2"))["is_group"]


def test_product_of_word():
    s = named("cyclic:3")
    assert s.product([1, 1, 2]) == 1
