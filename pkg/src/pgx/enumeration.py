"""Exhaustive, deterministic generation of tuples and presentations in bounds.

enumerate_tuples produces every valid InvariantTuple up to an order bound by
sweeping the rectangle forced by the cheap interval conditions and filtering
with validate.  enumerate_presentations produces every raw presentation that
satisfies the consistency relations; it makes no use of the classification and
therefore serves as the independent universe for the isomorphism oracle.
"""

from __future__ import annotations

from .group import GroupSpec
from .invariants import InvariantTuple, consistency_check, validate
from .modarith import ese, is_prime

MAX_BOUND_ORDER = 2**62


def _check_args(p: int, max_total_exp: int) -> None:
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if max_total_exp < 1:
        raise ValueError("max_total_exp must be positive")
    if p**max_total_exp > MAX_BOUND_ORDER:
        raise ValueError("p^max_total_exp exceeds 2^62")


def _shapes(max_total_exp: int):
    for m in range(1, max_total_exp - 1):
        for n1 in range(1, max_total_exp - m):
            for n2 in range(1, min(n1, max_total_exp - m - n1) + 1):
                yield m, n1, n2


def enumerate_tuples(p: int, max_total_exp: int) -> list[InvariantTuple]:
    """All valid tuples with m + n1 + n2 <= max_total_exp, in positional
    lexicographic order."""
    _check_args(p, max_total_exp)
    sign_pairs = [(-1, -1), (-1, 1), (1, 1)] if p == 2 else [(1, 1)]
    found = []
    for m, n1, n2 in _shapes(max_total_exp):
        o_cap = m - 1 if (p == 2 and m >= 2) else m
        for s1, s2 in sign_pairs:
            for o1 in range(min(o_cap, n1)):
                for o2 in range(min(o_cap, n2)):
                    for op1 in range(min(m - o1, m - o2) + 1):
                        for op2 in range(m - o2 + 1):
                            for u1 in range(1, p**op1 + 1):
                                if u1 % p == 0:
                                    continue
                                for u2 in range(1, p**op2 + 1):
                                    if u2 % p == 0:
                                        continue
                                    t = InvariantTuple(
                                        p, m, n1, n2, s1, s2, o1, o2, op1, op2, u1, u2
                                    )
                                    if validate(t).valid:
                                        found.append(t)
    found.sort()
    return found


def enumerate_presentations(p: int, max_total_exp: int) -> list[GroupSpec]:
    """All consistent presentations with M*N1*N2 <= p^max_total_exp and
    n1 >= n2, ordered by (m, n1, n2, r1, r2, t1, t2)."""
    _check_args(p, max_total_exp)
    found = []
    for m, n1, n2 in _shapes(max_total_exp):
        M, N1, N2 = p**m, p**n1, p**n2
        units = [r for r in range(1, M) if r % p != 0]
        for r1 in units:
            if pow(r1, N1, M) != 1 % M:
                continue
            lhs1 = ese(r1, N1, M)
            for r2 in units:
                if pow(r2, N2, M) != 1 % M:
                    continue
                lhs2 = ese(r2, N2, M)
                t1s = [
                    t1
                    for t1 in range(1, M + 1)
                    if t1 * r1 % M == t1 % M and t1 * (1 - r2) % M == lhs1
                ]
                if not t1s:
                    continue
                t2s = [
                    t2
                    for t2 in range(1, M + 1)
                    if t2 * r2 % M == t2 % M and t2 * (r1 - 1) % M == lhs2
                ]
                for t1 in t1s:
                    for t2 in t2s:
                        assert consistency_check(p, M, N1, N2, r1, r2, t1, t2)
                        found.append(GroupSpec(p, M, N1, N2, r1, r2, t1, t2))
    return found


def count_classes(p: int, max_total_exp: int) -> dict[int, int]:
    """Number of isomorphism classes (valid tuples) per total exponent."""
    counts: dict[int, int] = {}
    for t in enumerate_tuples(p, max_total_exp):
        counts[t.total_exp()] = counts.get(t.total_exp(), 0) + 1
    return dict(sorted(counts.items()))
