import pytest
from hypothesis import given, strategies as st

from k3lattice.supersingular import (
    SupersingularEntry,
    artin_bound,
    entries_for,
    glue_length_drop,
    indivisible_a2_check,
    load_table,
    verify_lambda_entry,
)


@pytest.mark.parametrize("l3,rank,expected", [(4, 12, 7), (7, 18, 5), (4, 13, 6)])
def test_artin_bound_golden(l3, rank, expected):
    assert artin_bound(l3, rank) == expected


def test_artin_bound_errors():
    with pytest.raises(ValueError):
        artin_bound(-1, 12)
    with pytest.raises(ValueError):
        artin_bound(4, 23)


@given(st.integers(0, 30), st.integers(0, 22), st.integers(0, 5))
def test_artin_bound_monotone(l3, rank, extra):
    assert artin_bound(l3 + extra, rank) >= artin_bound(l3, rank)
    if rank >= extra:
        assert artin_bound(l3, rank - extra) >= artin_bound(l3, rank)


def test_table_has_fourteen_entries():
    table = load_table()
    assert len(table) == 14
    assert len({e.key for e in table}) == 14


@pytest.mark.parametrize("entry", load_table(), ids=lambda e: e.key)
def test_every_entry_passes(entry):
    rep = verify_lambda_entry(entry)
    assert rep.passed, [(c.name, c.expected, c.computed) for c in rep.checks if not c.passed]
    assert len(rep.checks) == 5


def test_failing_entry():
    rep = verify_lambda_entry(SupersingularEntry(7, "U + E8 + E8 + A2"))
    assert not rep.passed
    failed = {c.name for c in rep.checks if not c.passed}
    assert "rank" in failed


def test_entry_validation():
    with pytest.raises(ValueError):
        SupersingularEntry(0, "U")
    with pytest.raises(ValueError):
        SupersingularEntry(11, "U")


def test_entries_for_sigma():
    assert {e.expression for e in entries_for(7)} == {"U(3) + L + E8(3)"}
    assert len(entries_for(6)) == 3


@pytest.mark.parametrize("name", ["L6", "L9", "L'"])
def test_glued_length_drops_by_two(name):
    before, after = glue_length_drop(name)
    assert before - after == 2


def test_indivisible_nine_blocks():
    assert indivisible_a2_check() == (False, None)
    assert indivisible_a2_check(tuple(range(1, 10)))[0] is False
    with pytest.raises(ValueError):
        indivisible_a2_check((0, 0))
