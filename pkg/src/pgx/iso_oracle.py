"""Brute-force isomorphism testing between constructed groups.

Independent of the classification pipeline: verdicts come from searching H
for a pair of elements satisfying G's defining relations and generating all
of H, with an element-order histogram as a cheap negative filter.  Used to
certify at desk scale that equal invariant tuples mean isomorphic groups and
conversely.
"""

from __future__ import annotations

import os
from functools import lru_cache
from math import gcd

from .group import (
    Element,
    GroupSpec,
    commutator,
    conjugate,
    element_order,
    index_of,
    iter_elements,
    multiply,
    power,
)

DEFAULT_MAX_ELEMS = 1 << 24


def _max_elems() -> int:
    raw = os.environ.get("PGX_MAX_ELEMS")
    if raw is None:
        return DEFAULT_MAX_ELEMS
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"PGX_MAX_ELEMS must be an integer, got {raw!r}") from None


@lru_cache(maxsize=128)
def _histogram_items(G: GroupSpec) -> tuple[tuple[int, int], ...]:
    hist: dict[int, int] = {}
    for g in iter_elements(G):
        k = element_order(G, g)
        hist[k] = hist.get(k, 0) + 1
    return tuple(sorted(hist.items()))


def order_histogram(G: GroupSpec) -> dict[int, int]:
    """Exact multiset of element orders, as a dict order -> count.

    Sweeps every element, so the group order must not exceed the element
    bound (PGX_MAX_ELEMS, default 2^24).
    """
    if G.order() > _max_elems():
        raise ValueError(
            f"group order {G.order()} exceeds the element sweep bound {_max_elems()}"
        )
    return dict(_histogram_items(G))


def are_isomorphic(
    G: GroupSpec, H: GroupSpec
) -> tuple[bool, tuple[Element, Element] | None]:
    """Decide G = H up to isomorphism by brute-force generator search.

    Searches H for a pair (g1, g2) whose commutator c satisfies G's defining
    relations (conjugate(c, g_i) = c^r_i, g_i^N_i = c^t_i, |c| >= M) and
    which generates all of H; returns the first such pair in deterministic
    order as a witness, trying H's canonical generators first.  A size
    mismatch returns (False, None) immediately; equal orders beyond the
    element bound raise ValueError.

    Candidates are pruned by exact element order and by conjugation
    compatibility: c lies in H's kernel, so |c| divides M(H) and the
    relation conjugate(c, g_i) = c^r_i forces the action of g_i on the
    kernel to equal r_i modulo |c|, hence modulo M(G).  Both filters are
    necessary conditions, so no witness is ever skipped.
    """
    if G.order() != H.order():
        return (False, None)
    if G.order() > _max_elems():
        raise ValueError(
            f"group order {G.order()} exceeds the element sweep bound {_max_elems()}"
        )
    if _histogram_items(G) != _histogram_items(H):
        return (False, None)
    M, N1, N2 = G.M, G.N1, G.N2
    r1, r2, t1, t2 = G.r1, G.r2, G.t1, G.t2
    if H.M < M:
        # every commutator of H has order dividing M(H) < M(G), so the
        # |c| >= M(G) relation is unsatisfiable
        return (False, None)
    ord1 = N1 * (M // gcd(t1, M))
    ord2 = N2 * (M // gcd(t2, M))
    act1 = [pow(H.r1, x, H.M) for x in range(H.N1)]
    act2 = [pow(H.r2, y, H.M) for y in range(H.N2)]
    cands1: list[Element] = []
    cands2: list[Element] = []
    for g in iter_elements(H):
        k = element_order(H, g)
        if k != ord1 and k != ord2:
            continue
        act = act1[g.x] * act2[g.y] % H.M
        if k == ord1 and (act - r1) % M == 0:
            cands1.append(g)
        if k == ord2 and (act - r2) % M == 0:
            cands2.append(g)

    def relations_hold(g1: Element, g2: Element) -> bool:
        c = commutator(H, g2, g1)
        if element_order(H, c) < M:
            return False
        if conjugate(H, c, g1) != power(H, c, r1):
            return False
        if conjugate(H, c, g2) != power(H, c, r2):
            return False
        if power(H, g1, N1) != power(H, c, t1):
            return False
        return power(H, g2, N2) == power(H, c, t2)

    def generates(g1: Element, g2: Element) -> bool:
        size = H.order()
        seen = bytearray(size)
        start = Element(0, 0, 0)
        seen[index_of(H, start)] = 1
        count = 1
        frontier = [start]
        while frontier:
            nxt = []
            for g in frontier:
                for gen in (g1, g2):
                    h = multiply(H, g, gen)
                    i = index_of(H, h)
                    if not seen[i]:
                        seen[i] = 1
                        count += 1
                        if count == size:
                            return True
                        nxt.append(h)
            frontier = nxt
        return count == size

    def candidate_pairs():
        b1, b2 = Element(1, 0, 0), Element(0, 1, 0)
        if element_order(H, b1) == ord1 and element_order(H, b2) == ord2:
            yield (b1, b2)
        for g1 in cands1:
            for g2 in cands2:
                yield (g1, g2)

    for g1, g2 in candidate_pairs():
        if relations_hold(g1, g2) and generates(g1, g2):
            return (True, (g1, g2))
    return (False, None)
