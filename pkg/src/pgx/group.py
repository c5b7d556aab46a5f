"""Normal-form arithmetic for two-generator presentations with cyclic kernel.

A GroupSpec (p, M, N1, N2, r1, r2, t1, t2) presents the group

    < b1, b2, a | a^M = 1, a^{b_i} = a^{r_i}, b_i^{N_i} = a^{t_i}, [b2,b1] = a >

whose elements are written uniquely as b1^x b2^y a^z.  Multiplication is a
fixed closed formula on the exponent triples; its carry terms form a 2-cocycle
(see rho), which is what makes the formula associative whenever the
presentation parameters pass consistency_check.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple

import numpy as np

from .invariants import InvariantTuple, consistency_check, derive_r, derive_t
from .modarith import ese, exact_log, is_prime

MAX_GROUP_ORDER = 2**62
_TABLE_LIMIT = 2**26

_SPEC_FIELDS = ("p", "M", "N1", "N2", "r1", "r2", "t1", "t2")


class Element(NamedTuple):
    """Exponent triple of the normal form b1^x b2^y a^z."""

    x: int
    y: int
    z: int


@dataclass(frozen=True)
class GroupSpec:
    """Presentation parameters; r1, r2 are stored reduced mod M."""

    p: int
    M: int
    N1: int
    N2: int
    r1: int
    r2: int
    t1: int
    t2: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if exact_log(self.p, self.M) < 1:
            raise ValueError("M must be a positive power of p")
        if exact_log(self.p, self.N1) < 1 or exact_log(self.p, self.N2) < 1:
            raise ValueError("N1, N2 must be positive powers of p")
        if self.M * self.N1 * self.N2 > MAX_GROUP_ORDER:
            raise ValueError("group order exceeds 2^62")
        object.__setattr__(self, "r1", self.r1 % self.M)
        object.__setattr__(self, "r2", self.r2 % self.M)
        if self.r1 % self.p == 0 or self.r2 % self.p == 0:
            raise ValueError("r1, r2 must be units mod M")
        if not (1 <= self.t1 <= self.M and 1 <= self.t2 <= self.M):
            raise ValueError("t1, t2 must lie in [1, M]")
        if not consistency_check(
            self.p, self.M, self.N1, self.N2, self.r1, self.r2, self.t1, self.t2
        ):
            raise ValueError("presentation parameters fail the consistency relations")

    @cached_property
    def m(self) -> int:
        return exact_log(self.p, self.M)

    @cached_property
    def n1(self) -> int:
        return exact_log(self.p, self.N1)

    @cached_property
    def n2(self) -> int:
        return exact_log(self.p, self.N2)

    def order(self) -> int:
        return self.M * self.N1 * self.N2

    @cached_property
    def _tables(self):
        """(r1 powers, r2 powers, S_{r1} prefix, S_{r2} prefix, t1 mod M,
        t2 mod M), or None when the group is too large to precompute."""
        if self.order() > _TABLE_LIMIT:
            return None
        M = self.M
        r1pow = [1] * self.N1
        for k in range(1, self.N1):
            r1pow[k] = r1pow[k - 1] * self.r1 % M
        r2pow = [1] * self.N2
        for k in range(1, self.N2):
            r2pow[k] = r2pow[k - 1] * self.r2 % M
        s1 = [0] * self.N1
        for k in range(1, self.N1):
            s1[k] = (s1[k - 1] + r1pow[k - 1]) % M
        s2 = [0] * self.N2
        for k in range(1, self.N2):
            s2[k] = (s2[k - 1] + r2pow[k - 1]) % M
        return (r1pow, r2pow, s1, s2, self.t1 % M, self.t2 % M)

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(getattr(self, f) for f in _SPEC_FIELDS)

    def to_positional(self) -> str:
        return ",".join(str(v) for v in self.as_tuple())

    @classmethod
    def from_positional(cls, text: str) -> "GroupSpec":
        parts = [part.strip() for part in text.split(",")]
        if len(parts) != 8:
            raise ValueError(f"expected 8 comma-separated integers, got {len(parts)}")
        try:
            values = [int(part) for part in parts]
        except ValueError:
            raise ValueError(f"malformed spec entry in {text!r}") from None
        return cls(*values)

    def to_json(self) -> str:
        return json.dumps(dict(zip(_SPEC_FIELDS, self.as_tuple())), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "GroupSpec":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("expected a JSON object")
        missing = [f for f in _SPEC_FIELDS if f not in data]
        if missing:
            raise ValueError(f"missing fields: {', '.join(missing)}")
        extra = [k for k in data if k not in _SPEC_FIELDS]
        if extra:
            raise ValueError(f"unknown fields: {', '.join(extra)}")
        values = []
        for f in _SPEC_FIELDS:
            v = data[f]
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValueError(f"field {f} must be an integer")
            values.append(v)
        return cls(*values)


def identity(G: GroupSpec) -> Element:
    return Element(0, 0, 0)


def _check_range(G: GroupSpec, g) -> None:
    x, y, z = g
    if not (0 <= x < G.N1 and 0 <= y < G.N2 and 0 <= z < G.M):
        raise ValueError(f"element {g!r} is not in normal form for this group")


def multiply(G: GroupSpec, g, h) -> Element:
    """Product of two normal forms.

    The carries cx, cy record overflow of the b1 and b2 exponents past N1, N2;
    each overflow injects a^{t_i} conjugated to the right of the word.
    """
    x1, y1, z1 = g
    x2, y2, z2 = h
    _check_range(G, g)
    _check_range(G, h)
    M = G.M
    xs = x1 + x2
    ys = y1 + y2
    cx = xs >= G.N1
    cy = ys >= G.N2
    if cx:
        xs -= G.N1
    if cy:
        ys -= G.N2
    tab = G._tables
    if tab is not None:
        r1pow, r2pow, s1, s2, t1m, t2m = tab
        z = (s1[x2] * s2[y1] + z1 * r1pow[x2]) % M * r2pow[y2] + z2
        if cx:
            z += t1m * r2pow[ys]
        if cy:
            z += t2m
    else:
        z = (ese(G.r1, x2, M) * ese(G.r2, y1, M) + z1 * pow(G.r1, x2, M)) % M
        z = z * pow(G.r2, y2, M) + z2
        if cx:
            z += G.t1 * pow(G.r2, ys, M)
        if cy:
            z += G.t2
    return Element(xs, ys, z % M)


def inverse(G: GroupSpec, g) -> Element:
    """Closed-form inverse: solve multiply(g, h) = identity for h."""
    x, y, z = g
    _check_range(G, g)
    M = G.M
    xi = (G.N1 - x) % G.N1
    yi = (G.N2 - y) % G.N2
    tab = G._tables
    if tab is not None:
        r1pow, r2pow, s1, s2, t1m, t2m = tab
        zi = (s1[xi] * s2[y] + z * r1pow[xi]) % M * r2pow[yi]
        if x:
            zi += t1m
        if y:
            zi += t2m
    else:
        zi = (ese(G.r1, xi, M) * ese(G.r2, y, M) + z * pow(G.r1, xi, M)) % M
        zi = zi * pow(G.r2, yi, M)
        if x:
            zi += G.t1
        if y:
            zi += G.t2
    h = Element(xi, yi, -zi % M)
    assert multiply(G, g, h) == (0, 0, 0)
    return h


def power(G: GroupSpec, g, n: int) -> Element:
    """g^n by square-and-multiply; negative n goes through the inverse."""
    if n < 0:
        g = inverse(G, g)
        n = -n
    result = Element(0, 0, 0)
    base = Element(*g)
    while n:
        if n & 1:
            result = multiply(G, result, base)
        n >>= 1
        if n:
            base = multiply(G, base, base)
    return result


def element_order(G: GroupSpec, g) -> int:
    """Smallest p^k with g^(p^k) = 1, by repeated p-th powers."""
    h = Element(*g)
    k = 0
    while h != (0, 0, 0):
        h = power(G, h, G.p)
        k += 1
    return G.p**k


def commutator(G: GroupSpec, g, h) -> Element:
    """[g, h] = g^-1 h^-1 g h."""
    left = multiply(G, inverse(G, g), inverse(G, h))
    right = multiply(G, g, h)
    return multiply(G, left, right)


def conjugate(G: GroupSpec, g, h) -> Element:
    """g^h = h^-1 g h."""
    return multiply(G, multiply(G, inverse(G, h), g), h)


def rho(G: GroupSpec, xy1: tuple[int, int], xy2: tuple[int, int]) -> int:
    """The 2-cocycle exponent for the pair (b1^x1 b2^y1, b1^x2 b2^y2).

    Written independently of multiply (direct pow/ese calls, floor-division
    carries) so the two can be compared formula against formula.
    """
    x1, y1 = xy1
    x2, y2 = xy2
    M = G.M
    val = pow(G.r2, y2, M) * ese(G.r1, x2, M) * ese(G.r2, y1, M)
    val += G.t1 * pow(G.r2, y1 + y2, M) * ((x1 + x2) // G.N1)
    val += G.t2 * ((y1 + y2) // G.N2)
    return val % M


def construct(t: InvariantTuple) -> GroupSpec:
    """The canonical group of a valid invariant tuple."""
    r1, r2 = derive_r(t)
    t1, t2 = derive_t(t)
    return GroupSpec(t.p, t.p**t.m, t.p**t.n1, t.p**t.n2, r1, r2, t1, t2)


def verify_relations(G: GroupSpec) -> bool:
    """Check the defining relations and spot-check the group axioms."""
    a = Element(0, 0, 1)
    b1 = Element(1, 0, 0)
    b2 = Element(0, 1, 0)
    if element_order(G, a) != G.M:
        return False
    if conjugate(G, a, b1) != (0, 0, G.r1):
        return False
    if conjugate(G, a, b2) != (0, 0, G.r2):
        return False
    if power(G, b1, G.N1) != (0, 0, G.t1 % G.M):
        return False
    if power(G, b2, G.N2) != (0, 0, G.t2 % G.M):
        return False
    if commutator(G, b2, b1) != a:
        return False
    n = G.order()
    if n <= 32:
        elems = list(iter_elements(G))
        triples = [(g, h, k) for g in elems for h in elems for k in elems]
    else:
        rng = random.Random("verify:" + G.to_positional())
        elems = [element_at(G, rng.randrange(n)) for _ in range(60)]
        triples = [tuple(rng.choice(elems) for _ in range(3)) for _ in range(200)]
    for g in elems:
        if multiply(G, g, identity(G)) != g or multiply(G, identity(G), g) != g:
            return False
        if multiply(G, g, inverse(G, g)) != (0, 0, 0):
            return False
    for g, h, k in triples:
        if multiply(G, multiply(G, g, h), k) != multiply(G, g, multiply(G, h, k)):
            return False
    return True


def index_of(G: GroupSpec, g) -> int:
    x, y, z = g
    return (x * G.N2 + y) * G.M + z


def element_at(G: GroupSpec, i: int) -> Element:
    z = i % G.M
    i //= G.M
    return Element(i // G.N2, i % G.N2, z)


def iter_elements(G: GroupSpec) -> Iterator[Element]:
    for x in range(G.N1):
        for y in range(G.N2):
            for z in range(G.M):
                yield Element(x, y, z)


def times_table(G: GroupSpec, limit: int = 4096) -> np.ndarray:
    """Full multiplication table as index array T[i, j] = index of g_i * g_j."""
    n = G.order()
    if n > limit:
        raise ValueError(f"group order {n} exceeds the table limit {limit}")
    M, N1, N2 = G.M, G.N1, G.N2
    idx = np.arange(n, dtype=np.int64)
    x = idx // (N2 * M)
    y = idx % (N2 * M) // M
    z = idx % M
    r1pow = np.array([pow(G.r1, k, M) for k in range(N1)], dtype=np.int64)
    r2pow = np.array([pow(G.r2, k, M) for k in range(N2)], dtype=np.int64)
    s1 = np.array([ese(G.r1, k, M) for k in range(N1)], dtype=np.int64)
    s2 = np.array([ese(G.r2, k, M) for k in range(N2)], dtype=np.int64)
    x1, y1, z1 = x[:, None], y[:, None], z[:, None]
    x2, y2, z2 = x[None, :], y[None, :], z[None, :]
    xs = x1 + x2
    ys = y1 + y2
    cx = xs >= N1
    cy = ys >= N2
    xs = xs - N1 * cx
    ys = ys - N2 * cy
    zz = (s1[x2] * s2[y1] + z1 * r1pow[x2]) % M * r2pow[y2] + z2
    zz = zz + (G.t1 % M) * r2pow[ys] * cx + (G.t2 % M) * cy
    return (xs * N2 + ys) * M + zz % M


def iter_table_rows(G: GroupSpec) -> Iterator[tuple[int, int, int]]:
    """Rows (i, j, index of g_i * g_j) for the CSV table dump."""
    elems = list(iter_elements(G))
    for i, g in enumerate(elems):
        for j, h in enumerate(elems):
            yield (i, j, index_of(G, multiply(G, g, h)))
