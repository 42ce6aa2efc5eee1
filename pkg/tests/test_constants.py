import pytest

from sylvester.constants import (
    ClosureViolation,
    StructureTable,
    build_table,
    support_report,
    table_matches_matrices,
    verify_jacobi_table,
)
from sylvester.genesis import AlgebraMode


def test_sl2_table():
    t = build_table(AlgebraMode.plain(2))
    got = {(t.labels[i], t.labels[j], t.labels[k]): c for i, j, k, c in t.entries}
    assert got == {("D", "S", "T(1,1)"): 1, ("D", "T(1,1)", "S"): 4, ("S", "T(1,1)", "D"): -4}


@pytest.mark.parametrize(
    "mode,triples",
    [(AlgebraMode.plain(2), 1), (AlgebraMode.plain(4), 455), (AlgebraMode.super_(2), 15**3)],
)
def test_jacobi_from_table(mode, triples):
    check = verify_jacobi_table(build_table(mode))
    assert check.ok and check.failing is None
    assert check.triples == triples


def test_corrupted_table_is_caught():
    t = build_table(AlgebraMode.plain(3))
    i, j, k, c = t.entries[0]
    t.entries[0] = (i, j, k, c + 1)
    t._index = None
    check = verify_jacobi_table(t)
    assert not check and check.failing is not None
    assert not table_matches_matrices(t)


@pytest.mark.parametrize(
    "mode", [AlgebraMode.plain(n) for n in (2, 3, 4)] + [AlgebraMode.super_(1), AlgebraMode.super_(2)]
)
def test_table_round_trip_and_equivalence(mode):
    t = build_table(mode)
    text = t.dumps()
    assert StructureTable.loads(text).dumps() == text
    assert table_matches_matrices(StructureTable.loads(text))


def test_super_drops_zero_element():
    t = build_table(AlgebraMode.super_(2))
    assert t.dropped == ["T(4,2)"]
    assert len(t.labels) == 15


@pytest.mark.parametrize("n", [3, 4, 5])
def test_single_term_support(n):
    examined, exceptions = support_report(build_table(AlgebraMode.plain(n)))
    assert examined > 0
    assert exceptions == []


def test_plain_table_is_upper_triangular():
    t = build_table(AlgebraMode.plain(3))
    assert all(i < j for i, j, _, _ in t.entries)
    assert t.bracket(2, 2) == {}
    assert t.bracket(3, 2) == {k: -c for k, c in t.bracket(2, 3).items()}


def test_closure_violation_is_runtime_error():
    assert issubclass(ClosureViolation, RuntimeError)
