"""Tests for the invariant-recovery pipeline and the stage fastpaths."""

import random

import pytest

from pgx.classify import (
    Basis,
    BaseData,
    _compute_inv_definitional,
    _context,
    _sigma_o_definitional,
    base_candidates,
    base_data,
    compute_inv,
    compute_sigma_o_min,
    fastpath_in_Bprime,
    fastpath_in_Br,
    fastpath_in_Brprime,
    fastpath_in_Brt,
    r_of,
    sigma_o,
)
from pgx.enumeration import enumerate_presentations, enumerate_tuples
from pgx.group import (
    Element,
    GroupSpec,
    commutator,
    construct,
    element_order,
    iter_elements,
    multiply,
    power,
)
from pgx.invariants import InvariantTuple, derive_r_values

D8S = GroupSpec(2, 2, 2, 2, 1, 1, 1, 2)
Q8S = GroupSpec(2, 2, 2, 2, 1, 1, 1, 1)
HEIS27 = construct(InvariantTuple(3, 1, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1))
U1_TUPLE = InvariantTuple(3, 3, 3, 2, 1, 1, 2, 0, 1, 2, 1, 1)
U4_TUPLE = InvariantTuple(3, 3, 3, 2, 1, 1, 2, 0, 1, 2, 1, 4)
U1S = construct(U1_TUPLE)
U4S = construct(U4_TUPLE)
NEG16 = construct(InvariantTuple(2, 2, 1, 1, -1, -1, 0, 0, 0, 0, 1, 1))

B1, B2, A = Element(1, 0, 0), Element(0, 1, 0), Element(0, 0, 1)
CANONICAL = Basis(B1, B2)


def small_universe():
    groups = [construct(t) for t in enumerate_tuples(2, 5)]
    groups += [construct(t) for t in enumerate_tuples(3, 3)]
    return groups


def test_r_of():
    assert r_of(D8S, Element(0, 0, 0)) == 1
    assert r_of(U1S, A) == 1
    assert r_of(U1S, B1) == 4
    assert r_of(U1S, B2) == 1
    assert r_of(U4S, Element(2, 1, 5)) == pow(4, 2, 27)
    rng = random.Random("r_of")
    for G in (D8S, U4S, NEG16):
        elems = list(iter_elements(G))
        for _ in range(30):
            g, h = rng.choice(elems), rng.choice(elems)
            assert r_of(G, multiply(G, g, h)) == r_of(G, g) * r_of(G, h) % G.M


def test_sigma_o():
    assert sigma_o(D8S, Element(0, 0, 0)) == (1, 0)
    assert sigma_o(D8S, B1) == (1, 0)
    assert sigma_o(U1S, B1) == (1, 2)
    assert sigma_o(U1S, B2) == (1, 0)
    assert sigma_o(NEG16, B1) == (-1, 0)
    for G in (D8S, Q8S, HEIS27, NEG16):
        for g in iter_elements(G):
            assert sigma_o(G, g) == _sigma_o_definitional(G, g)


def test_base_candidates():
    cands = list(base_candidates(D8S))
    assert len(cands) == 6
    assert (1, 0, 0, 1) in cands
    assert len(set(cands)) == 6
    assert all(c[:2] != (0, 0) for c in cands)
    with_z = list(base_candidates(D8S, with_z=True))
    assert len(with_z) == 6 * D8S.M * D8S.M
    assert with_z[: len(with_z) // len(cands)][0][:4] == cands[0]
    for x1, y1, x2, y2 in base_candidates(U1S):
        assert x2 % 3 == 0
        assert (x1 * y2 - x2 * y1) % 3 != 0


def test_compute_sigma_o_min():
    assert compute_sigma_o_min(D8S) == (1, 1, 0, 0)
    assert compute_sigma_o_min(Q8S) == (1, 1, 0, 0)
    assert compute_sigma_o_min(HEIS27) == (1, 1, 0, 0)
    assert compute_sigma_o_min(U1S) == (1, 1, 2, 0)
    assert compute_sigma_o_min(NEG16) == (-1, -1, 0, 0)


def test_compute_inv_fixtures():
    inv, wit = compute_inv(D8S)
    assert inv == InvariantTuple(2, 1, 1, 1, 1, 1, 0, 0, 1, 0, 1, 1)
    assert wit == CANONICAL
    inv, wit = compute_inv(Q8S)
    assert inv == InvariantTuple(2, 1, 1, 1, 1, 1, 0, 0, 1, 1, 1, 1)
    assert wit == Basis(B2, B1)
    inv, wit = compute_inv(HEIS27)
    assert inv == InvariantTuple(3, 1, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1)
    assert wit == Basis(B2, B1)
    inv, wit = compute_inv(U1S)
    assert inv == U1_TUPLE
    assert wit == CANONICAL
    inv, wit = compute_inv(U4S)
    assert inv == U4_TUPLE
    assert wit == CANONICAL


def test_compute_inv_matches_definitional():
    universe = [construct(t) for t in enumerate_tuples(2, 6)]
    universe += [construct(t) for t in enumerate_tuples(3, 4)]
    universe += enumerate_presentations(2, 5)
    universe += enumerate_presentations(3, 3)
    seen = set()
    for G in universe:
        if G in seen:
            continue
        seen.add(G)
        assert compute_inv(G) == _compute_inv_definitional(G), G


def test_round_trip_small():
    for t in enumerate_tuples(2, 7) + enumerate_tuples(3, 4):
        assert compute_inv(construct(t))[0] == t


def test_sigma_o_ignores_kernel_component():
    for G in small_universe():
        for x1, y1, x2, y2 in base_candidates(G):
            base = sigma_o(G, Element(x1, y1, 0))
            for z in range(1, G.M):
                assert sigma_o(G, Element(x1, y1, z)) == base


def test_basis_independence():
    rng = random.Random("relabel")
    for G in small_universe():
        expected = compute_inv(G)[0]
        cands = list(base_candidates(G))
        for _ in range(4):
            x1, y1, x2, y2 = rng.choice(cands)
            b = Basis(
                Element(x1, y1, rng.randrange(G.M)),
                Element(x2, y2, rng.randrange(G.M)),
            )
            data = base_data(G, b)
            relabeled = GroupSpec(
                G.p, G.M, G.N1, G.N2,
                r_of(G, b.b1), r_of(G, b.b2), data.t[0], data.t[1],
            )
            assert compute_inv(relabeled)[0] == expected


def commutator_z(G, x2, y2, z2, x1, y1, z1):
    c = commutator(G, Element(x2, y2, z2), Element(x1, y1, z1))
    assert c.x == 0 and c.y == 0
    return c.z


def test_commutator_exponent_affine_in_kernel_shifts():
    rng = random.Random("affine")
    for G in (D8S, Q8S, NEG16, U1S, U4S):
        M = G.M
        cands = list(base_candidates(G))
        for _ in range(12):
            x1, y1, x2, y2 = rng.choice(cands)
            e00 = commutator_z(G, x2, y2, 0, x1, y1, 0)
            rc1 = r_of(G, Element(x1, y1, 0))
            rc2 = r_of(G, Element(x2, y2, 0))
            z1, z2 = rng.randrange(M), rng.randrange(M)
            expected = (e00 + z1 * (1 - rc2) + z2 * (rc1 - 1)) % M
            assert commutator_z(G, x2, y2, z2, x1, y1, z1) == expected


def test_fastpath_agreement():
    for G in small_universe():
        ctx = _context(G)
        so_min = ctx.sigma_o_min
        R1, R2 = ctx.r_targets
        # Sign/order stage: membership means attaining the swept minimum.
        for x1, y1, x2, y2 in base_candidates(G):
            b = Basis(Element(x1, y1, 0), Element(x2, y2, 0))
            s1, o1 = sigma_o(G, b.b1)
            s2, o2 = sigma_o(G, b.b2)
            definitional = (s1, s2, o1, o2) == so_min
            assert fastpath_in_Bprime(G, b) == definitional, (G, b)
        # Residue stage: parameters are relative to the reference basis.
        rx1, ry1, rx2, ry2 = ctx.reference
        ref1 = Element(rx1, ry1, 0)
        ref2 = Element(rx2, ry2, 0)
        for params in base_candidates(G):
            g1 = multiply(G, power(G, ref1, params[0]), power(G, ref2, params[1]))
            g2 = multiply(G, power(G, ref1, params[2]), power(G, ref2, params[3]))
            definitional = r_of(G, g1) == R1 and r_of(G, g2) == R2
            assert fastpath_in_Br(G, params) == definitional, (G, params)
        # Excess-order and unit stages over the realizing bases.
        members = []
        for pat in ctx.patterns:
            for z1 in range(G.M):
                for z2 in range(G.M):
                    b = Basis(Element(pat[0], pat[1], z1), Element(pat[2], pat[3], z2))
                    members.append((b, base_data(G, b)))
        max_oprime = max(data.oprime for _, data in members)
        assert max_oprime == ctx.oprime
        upairs = [
            (data.u[1], data.u[0]) for _, data in members if data.oprime == max_oprime
        ]
        min_u = min(upairs)
        assert min_u == (ctx.u[1], ctx.u[0])
        for b, data in members:
            in_bp = data.oprime == max_oprime
            assert fastpath_in_Brprime(G, b) == in_bp, (G, b)
            if in_bp:
                in_bt = (data.u[1], data.u[0]) == min_u
                assert fastpath_in_Brt(G, b) == in_bt, (G, b)
            else:
                with pytest.raises(ValueError):
                    fastpath_in_Brt(G, b)


def test_fastpath_preconditions():
    with pytest.raises(ValueError):
        fastpath_in_Bprime(D8S, Basis(Element(0, 0, 1), Element(0, 1, 0)))
    with pytest.raises(ValueError):
        fastpath_in_Br(D8S, (0, 0, 1, 1))
    with pytest.raises(ValueError):
        fastpath_in_Br(D8S, (5, 0, 0, 1))
    # U1S has a nontrivial action, so some bases miss the residue targets.
    bad = Basis(Element(2, 0, 0), Element(0, 1, 0))
    assert r_of(U1S, bad.b1) != _context(U1S).r_targets[0]
    with pytest.raises(ValueError):
        fastpath_in_Brprime(U1S, bad)
    with pytest.raises(ValueError):
        fastpath_in_Brt(U1S, bad)


def test_fastpath_known_values():
    for t in enumerate_tuples(2, 4) + enumerate_tuples(3, 3):
        assert fastpath_in_Br(construct(t), (1, 0, 0, 1))
    assert fastpath_in_Brprime(D8S, CANONICAL)
    assert not fastpath_in_Brprime(D8S, Basis(Element(1, 1, 0), B2))
    assert fastpath_in_Brt(U1S, CANONICAL)
    assert fastpath_in_Brt(U4S, CANONICAL)


def test_base_data():
    data = base_data(D8S, CANONICAL)
    assert data == BaseData(
        sigma=(1, 1), o=(0, 0), t=(1, 2), oprime=(1, 0), u=(1, 1)
    )
    data = base_data(Q8S, CANONICAL)
    assert data.t == (1, 1) and data.oprime == (1, 1) and data.u == (1, 1)
    data = base_data(U4S, CANONICAL)
    assert data.sigma == (1, 1) and data.o == (2, 0)
    assert data.t == (9, 12) and data.oprime == (1, 2) and data.u == (1, 4)
    for G in (D8S, Q8S, U4S):
        d = base_data(G, CANONICAL)
        assert element_order(G, B1) == G.p ** (G.n1 + d.oprime[0])
        assert element_order(G, B2) == G.p ** (G.n2 + d.oprime[1])
    with pytest.raises(ValueError):
        base_data(D8S, Basis(Element(1, 0, 0), Element(2, 0, 0)))


def test_threads_agree():
    for G in (D8S, Q8S, U1S, U4S, NEG16):
        assert compute_inv(G, threads=4) == compute_inv(G, threads=1)


def test_rejects_swapped_generator_orders():
    swapped = GroupSpec(2, 2, 2, 4, 1, 1, 1, 2)
    with pytest.raises(ValueError):
        compute_inv(swapped)
    with pytest.raises(ValueError):
        list(base_candidates(swapped))
