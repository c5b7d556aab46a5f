"""Invariant tuples, their validity conditions, and presentation parameters.

An InvariantTuple is the 12-entry list (p, m, n1, n2, sigma1, sigma2, o1, o2,
op1, op2, u1, u2) that identifies the isomorphism class of a 2-generated
non-abelian cyclic-by-abelian group of order p^(m+n1+n2): the derived subgroup
is cyclic of order p^m, the central quotient by it is C_{p^n1} x C_{p^n2}, and
the remaining entries describe the conjugation action and the excess orders of
an extremal generating pair.

validate() decides whether a tuple is realizable by checking the arithmetic
conditions (labelled "1" through "7c") that characterize the image of the
classification.  derive_r / derive_t turn a valid tuple into the presentation
parameters consumed by the group module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

from .modarith import ese, exact_log, is_prime

CONDITION_LABELS = (
    "1",
    "2",
    "3",
    "4",
    "5",
    "6a",
    "6b",
    "6c",
    "6d",
    "6e",
    "6f",
    "6g",
    "7a",
    "7b",
    "7bi",
    "7bii",
    "7c",
)

_FIELDS = ("p", "m", "n1", "n2", "sigma1", "sigma2", "o1", "o2", "op1", "op2", "u1", "u2")


@dataclass(frozen=True, order=True)
class InvariantTuple:
    """The 12 invariants; field order doubles as the positional encoding order."""

    p: int
    m: int
    n1: int
    n2: int
    sigma1: int
    sigma2: int
    o1: int
    o2: int
    op1: int
    op2: int
    u1: int
    u2: int

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(getattr(self, f) for f in _FIELDS)

    def total_exp(self) -> int:
        """log_p of the group order."""
        return self.m + self.n1 + self.n2

    def to_positional(self) -> str:
        return ",".join(str(v) for v in self.as_tuple())

    @classmethod
    def from_positional(cls, text: str) -> "InvariantTuple":
        parts = [part.strip() for part in text.split(",")]
        if len(parts) != 12:
            raise ValueError(f"expected 12 comma-separated integers, got {len(parts)}")
        try:
            values = [int(part) for part in parts]
        except ValueError:
            raise ValueError(f"malformed tuple entry in {text!r}") from None
        return cls(*values)

    def to_json(self) -> str:
        return json.dumps(dict(zip(_FIELDS, self.as_tuple())), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "InvariantTuple":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("expected a JSON object")
        missing = [f for f in _FIELDS if f not in data]
        if missing:
            raise ValueError(f"missing fields: {', '.join(missing)}")
        extra = [k for k in data if k not in _FIELDS]
        if extra:
            raise ValueError(f"unknown fields: {', '.join(extra)}")
        values = []
        for f in _FIELDS:
            v = data[f]
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValueError(f"field {f} must be an integer")
            values.append(v)
        return cls(*values)


@dataclass(frozen=True)
class ConditionReport:
    valid: bool
    violations: tuple[str, ...]

    def to_json(self) -> str:
        return json.dumps(
            {"valid": self.valid, "violations": list(self.violations)},
            separators=(",", ":"),
        )


def _le_ppow(x: int, p: int, e: int) -> bool:
    """x <= p^e, meaningful also for negative e (then p^e < 1)."""
    if e < 0:
        return False if x >= 1 else True
    return x <= p**e


def validate(t: InvariantTuple) -> ConditionReport:
    """Check every realizability condition; report all violated labels.

    Labels "1"-"5" are structural; "6a"-"6g" apply when sigma1 = 1 and
    "7a"-"7c" when sigma1 = -1 (the other family is vacuous).  No label's
    evaluation short-circuits another: the report is order-independent.
    """
    if not is_prime(t.p):
        raise ValueError(f"p must be prime, got {t.p}")
    p, m, n1, n2 = t.p, t.m, t.n1, t.n2
    s1, s2, o1, o2 = t.sigma1, t.sigma2, t.o1, t.o2
    op1, op2, u1, u2 = t.op1, t.op2, t.u1, t.u2
    bad: list[str] = []

    def check(label: str, ok: bool) -> None:
        if not ok:
            bad.append(label)

    check("1", m >= 1 and n1 >= n2 >= 1)
    check(
        "2",
        s1 in (-1, 1)
        and s2 in (-1, 1)
        and 0 <= o1 < min(m, n1)
        and 0 <= o2 < min(m, n2)
        and u1 >= 1
        and u2 >= 1
        and u1 % p != 0
        and u2 % p != 0,
    )
    check("3", not (p == 2 and m >= 2) or (o1 < m - 1 and o2 < m - 1))
    check("4", 0 <= op1 <= m - o1 and 0 <= op2 <= m - o2 and op1 <= m - o2)
    check(
        "5",
        o1 == 0
        or (0 < o1 == o2 and s2 == -1)
        or (o2 == 0 < o1 and n2 < n1)
        or (0 < o2 < o1 < o2 + n1 - n2),
    )

    if s1 == 1:
        a1 = min(op1, o2 + min(n1 - n2 + op1 - op2, 0))
        if o1 == 0:
            a2 = 0
        elif o2 == 0:
            a2 = min(o1, op2, op2 - op1 + max(0, o1 + n2 - n1))
        else:
            a2 = min(o1 - o2, op2 - op1)

        check("6a", s2 == 1 and o2 + op1 <= m <= n1)
        cond_6b = (o1 + op2 <= m <= n2) or (
            2 * m - o1 - op2 == n2 < m and u2 % p ** (m - n2) == 1 % p ** (m - n2)
        )
        check("6b", cond_6b)
        if o1 == 0:
            c6c_i = op1 <= op2 <= op1 + o2 + n1 - n2 and max(p - 2, op2, n1 - m) > 0
            c6c_ii = p == 2 and m == n1 and op2 == 0 and op1 == 1
            check("6c", c6c_i or c6c_ii)
        if o2 == 0 < o1:
            check(
                "6d",
                op1 + min(0, n1 - n2 - o1) <= op2 <= op1 + n1 - n2
                and max(p - 2, op1, n1 - m) > 0,
            )
        if 0 < o2 < o1:
            check("6e", op1 <= op2 <= op1 + n1 - n2)
        check("6f", 1 <= u1 and _le_ppow(u1, p, a1))
        c6g_i = 1 <= u2 and _le_ppow(u2, p, a2)
        c6g_ii = (
            o1 * o2 != 0
            and n1 - n2 + op1 - op2 == 0 < a1
            and a2 >= 0
            and 1 + p**a2 <= u2 <= 2 * p**a2
            and u1 % p == 1
        )
        check("6g", c6g_i or c6g_ii)
    else:
        check("7a", p == 2 and m >= 2 and op1 <= 1 and u1 == 1)
        if s2 == 1:
            check("7b", n2 < n1)
            if m <= n2:
                check(
                    "7bi",
                    op2 <= 1 and u2 == 1 and (op1 <= op2 or (o2 == 0 < n1 - n2 < o1)),
                )
            else:
                ok_bii = m + 1 == n2 + op2 and 1 <= u2 <= 2 ** (m - n2 + 1)
                ok_bii = ok_bii and (op1 == 1 or o1 + 1 != n1)
                if m - o1 - 1 >= 0:
                    ok_bii = ok_bii and (
                        u2 * (-1 + 2 ** (m - o1 - 1)) % 2 ** (m - n2) == 1 % 2 ** (m - n2)
                    )
                else:
                    ok_bii = False
                ok_bii = ok_bii and (
                    (op1 == 0 and (o1 == 0 or o2 + 1 != n2))
                    or (op1 == 1 and o2 == 0 and n1 - n2 < o1)
                    or u2 <= 2 ** (m - n2)
                )
                check("7bii", ok_bii)
        else:
            ok_7c = op2 <= 1 and u2 == 1
            if o1 <= o2 and n1 > n2:
                ok_7c = ok_7c and op1 <= op2
            if o1 == o2 and n1 == n2:
                ok_7c = ok_7c and op1 >= op2
            if o2 == 0 < o1 == n1 - 1 and n2 == 1:
                ok_7c = ok_7c and (op1 == 1 or op2 == 1)
            if o2 == 0 < o1 and (n1 != o1 + 1 or n2 != 1):
                ok_7c = ok_7c and op1 + min(0, n1 - n2 - o1) <= op2
            if o1 * o2 != 0 and o1 != o2:
                ok_7c = ok_7c and op1 <= op2
            check("7c", ok_7c)

    ordered = tuple(label for label in CONDITION_LABELS if label in bad)
    return ConditionReport(valid=not ordered, violations=ordered)


def _lift_unit(residue: int, big_m: int) -> int:
    """Unique representative of the class in the interval (1, 1 + p^m]."""
    residue %= big_m
    return residue if residue > 1 else residue + big_m


def derive_r_values(
    p: int, m: int, sigma1: int, sigma2: int, o1: int, o2: int
) -> tuple[int, int]:
    """Action residues (r1, r2) reduced mod p^m, from the sign/order data.

    r_i represents sigma_i + p^(m-o_i); when o1*o2 != 0 the second one is
    taken as sigma2 * (sigma1*r1)^(p^(o1-o2)) so that the two actions embed
    in a common cyclic subgroup of the units, which the consistency relations
    require.
    """
    big_m = p**m
    r1 = (sigma1 + p ** (m - o1)) % big_m
    if o1 * o2 == 0:
        r2 = (sigma2 + p ** (m - o2)) % big_m
    else:
        cap_r1 = sigma1 * r1 % big_m
        r2 = sigma2 * pow(cap_r1, p ** (o1 - o2), big_m) % big_m
    return (r1, r2)


def derive_r(t: InvariantTuple) -> tuple[int, int]:
    """Presentation exponents (r1, r2), lifted into the interval (1, 1+p^m]."""
    report = validate(t)
    if not report.valid:
        raise ValueError(f"invalid tuple (violations: {', '.join(report.violations)})")
    big_m = t.p**t.m
    r1, r2 = derive_r_values(t.p, t.m, t.sigma1, t.sigma2, t.o1, t.o2)
    return (_lift_unit(r1, big_m), _lift_unit(r2, big_m))


def derive_t(t: InvariantTuple) -> tuple[int, int]:
    """Presentation exponents (t1, t2) = (u1 * p^(m-op1), u2 * p^(m-op2))."""
    report = validate(t)
    if not report.valid:
        raise ValueError(f"invalid tuple (violations: {', '.join(report.violations)})")
    return (t.u1 * t.p ** (t.m - t.op1), t.u2 * t.p ** (t.m - t.op2))


def a_bound_values(
    n1: int, n2: int, o1: int, o2: int, op1: int, op2: int
) -> tuple[int, int]:
    """The exponents (a1, a2) bounding u1 and u2, from the order data alone."""
    a1 = min(op1, o2 + min(n1 - n2 + op1 - op2, 0))
    if o1 == 0:
        a2 = 0
    elif o2 == 0:
        a2 = min(o1, op2, op2 - op1 + max(0, o1 + n2 - n1))
    else:
        a2 = min(o1 - o2, op2 - op1)
    return (a1, a2)


def a_bounds(t: InvariantTuple) -> tuple[int, int]:
    """The exponents (a1, a2) bounding u1 and u2 when sigma1 = 1."""
    if t.sigma1 != 1:
        raise ValueError("a_bounds is only defined for sigma1 = 1")
    return a_bound_values(t.n1, t.n2, t.o1, t.o2, t.op1, t.op2)


def consistency_check(
    p: int, M: int, N1: int, N2: int, r1: int, r2: int, t1: int, t2: int
) -> bool:
    """True iff the presentation parameters satisfy the four relation congruences.

    The congruences (all mod M) are r_i^(N_i) = 1, t_i*r_i = t_i,
    ese(r1, N1) = t1*(1 - r2) and ese(r2, N2) = t2*(r1 - 1).  A total
    predicate: structurally bad input (non-powers of p, t out of [1, M],
    non-unit r) yields False rather than an error.
    """
    try:
        exact_log(p, M)
        exact_log(p, N1)
        exact_log(p, N2)
    except ValueError:
        return False
    if not (1 <= t1 <= M and 1 <= t2 <= M):
        return False
    if gcd(r1, p) != 1 or gcd(r2, p) != 1:
        return False
    r1 %= M
    r2 %= M
    if pow(r1, N1, M) != 1 % M or pow(r2, N2, M) != 1 % M:
        return False
    if t1 * r1 % M != t1 % M or t2 * r2 % M != t2 % M:
        return False
    if ese(r1, N1, M) != t1 * (1 - r2) % M:
        return False
    if ese(r2, N2, M) != t2 * (r1 - 1) % M:
        return False
    return True
