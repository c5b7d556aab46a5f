"""Tests for tuple and presentation enumeration."""

import pytest

from pgx.enumeration import count_classes, enumerate_presentations, enumerate_tuples
from pgx.group import GroupSpec
from pgx.invariants import InvariantTuple, validate


def test_enumerate_tuples_fixtures():
    assert enumerate_tuples(2, 3) == [
        InvariantTuple(2, 1, 1, 1, 1, 1, 0, 0, 1, 0, 1, 1),
        InvariantTuple(2, 1, 1, 1, 1, 1, 0, 0, 1, 1, 1, 1),
    ]
    assert enumerate_tuples(3, 3) == [
        InvariantTuple(3, 1, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1),
        InvariantTuple(3, 1, 1, 1, 1, 1, 0, 0, 1, 1, 1, 1),
    ]
    assert enumerate_tuples(2, 2) == []


def test_enumerate_tuples_errors():
    with pytest.raises(ValueError):
        enumerate_tuples(4, 3)
    with pytest.raises(ValueError):
        enumerate_tuples(2, 63)
    with pytest.raises(ValueError):
        enumerate_tuples(2, 0)


def test_enumerate_tuples_sorted_and_unique():
    for p, bound in ((2, 6), (3, 5), (5, 4)):
        tuples = enumerate_tuples(p, bound)
        assert len(set(tuples)) == len(tuples)
        assert tuples == sorted(tuples)
        for t in tuples:
            assert validate(t).valid
            assert t.total_exp() <= bound


def _naive_scan(p, bound):
    """Full-rectangle scan with validate, no range pruning at all."""
    out = []
    for m in range(1, bound - 1):
        for n1 in range(1, bound - m):
            for n2 in range(1, min(n1, bound - m - n1) + 1):
                for s1 in (-1, 1):
                    for s2 in (-1, 1):
                        for o1 in range(m):
                            for o2 in range(m):
                                for op1 in range(m + 1):
                                    for op2 in range(m + 1):
                                        for u1 in range(1, p**m + 1):
                                            for u2 in range(1, p**m + 1):
                                                t = InvariantTuple(
                                                    p, m, n1, n2, s1, s2,
                                                    o1, o2, op1, op2, u1, u2,
                                                )
                                                if validate(t).valid:
                                                    out.append(t)
    return sorted(out)


def test_enumerate_tuples_against_naive_scan():
    assert enumerate_tuples(2, 5) == _naive_scan(2, 5)
    assert enumerate_tuples(3, 4) == _naive_scan(3, 4)


def test_count_classes_fixtures():
    assert count_classes(2, 3) == {3: 2}
    assert count_classes(3, 3) == {3: 2}
    assert count_classes(2, 2) == {}
    # order 16: three presentations with kernel C2, three with kernel C4
    assert count_classes(2, 4) == {3: 2, 4: 6}


def test_enumerate_presentations_fixtures():
    specs = enumerate_presentations(2, 3)
    assert GroupSpec(2, 2, 2, 2, 1, 1, 1, 2) in specs
    assert GroupSpec(2, 2, 2, 2, 1, 1, 1, 1) in specs
    assert len(specs) == 4
    assert enumerate_presentations(3, 2) == []


def test_enumerate_presentations_is_deterministic():
    a = enumerate_presentations(2, 5)
    b = enumerate_presentations(2, 5)
    assert a == b
    assert len(set(a)) == len(a)
    for spec in a:
        assert spec.n1 >= spec.n2
        assert spec.order() <= 2**5
