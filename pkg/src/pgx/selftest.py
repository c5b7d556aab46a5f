"""Executable acceptance checks for the classification toolkit.

Each check_* function exercises one desk-scale claim end to end and returns
a short detail string, raising CheckFailure at the first concrete
counterexample.  run_criteria drives all seven, either at the default
bounds or restricted to a single prime for the command-line selftest.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

import numpy as np

from .classify import (
    Basis,
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
from .enumeration import count_classes, enumerate_presentations, enumerate_tuples
from .group import (
    Element,
    GroupSpec,
    commutator,
    construct,
    element_at,
    element_order,
    index_of,
    multiply,
    power,
    rho,
    times_table,
    verify_relations,
)
from .invariants import InvariantTuple, derive_r_values, validate
from .iso_oracle import are_isomorphic
from .modarith import INFINITY, ese, ese2, ord_mod, vp

_SEED = 20260819

_FULL_ROUND_TRIP_BOUNDS = ((2, 8), (3, 6), (5, 4))
_FULL_PARTITION_BOUNDS = ((2, 7), (3, 5))
_FULL_EXHAUSTIVE_BOUNDS = ((2, 9), (3, 5), (5, 3))
_FULL_FASTPATH_BOUNDS = ((2, 7), (3, 5))

# three groups of order 3^8 separated only by the final unit entry
U_FIXTURES = tuple(
    InvariantTuple(3, 3, 3, 2, 1, 1, 2, 0, 1, 2, 1, u) for u in (1, 4, 7)
)


class CheckFailure(Exception):
    """A check found a concrete counterexample."""


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise CheckFailure(msg)


def check_round_trip(bounds=_FULL_ROUND_TRIP_BOUNDS, threads: int = 1) -> str:
    """Every valid tuple constructs a group that maps back to the tuple."""
    total = 0
    for p, exp in bounds:
        for tup in enumerate_tuples(p, exp):
            G = construct(tup)
            _require(
                verify_relations(G),
                f"defining relations fail for {tup.to_positional()}",
            )
            got, _witness = compute_inv(G, threads=threads)
            _require(
                got == tup,
                f"round trip failed: {tup.to_positional()} gave {got.to_positional()}",
            )
            total += 1
    return f"{total} tuples constructed and round-tripped"


def check_partition(
    bounds=_FULL_PARTITION_BOUNDS,
    threads: int = 1,
    samples: int = 200,
    seed: int = _SEED,
) -> str:
    """Brute-force isomorphism classes coincide with computed-tuple classes.

    Presentations are partitioned with are_isomorphic against one
    representative per class.  Within a class all tuples must agree, across
    classes they must differ, and the class count per order must equal the
    tuple count per order.  A random sample of pairs double-checks the
    biconditional and the symmetry of the verdict directly.
    """
    rng = random.Random(seed)
    total_specs = 0
    total_classes = 0
    for p, exp in bounds:
        specs = enumerate_presentations(p, exp)
        tuples: dict[GroupSpec, InvariantTuple] = {}
        for spec in specs:
            tup, _witness = compute_inv(spec, threads=threads)
            report = validate(tup)
            _require(
                report.valid,
                f"computed tuple {tup.to_positional()} of {spec.to_positional()}"
                f" violates conditions {','.join(report.violations)}",
            )
            tuples[spec] = tup
        reps: dict[int, list[GroupSpec]] = {}
        for spec in specs:
            bucket = reps.setdefault(spec.order(), [])
            home = None
            for rep in bucket:
                verdict, _witness = are_isomorphic(spec, rep)
                if verdict:
                    home = rep
                    break
                _require(
                    tuples[spec] != tuples[rep],
                    "non-isomorphic presentations share a tuple: "
                    f"{spec.to_positional()} vs {rep.to_positional()}",
                )
            if home is None:
                # tuple already shown distinct from every earlier class
                bucket.append(spec)
            else:
                _require(
                    tuples[spec] == tuples[home],
                    "isomorphic presentations got different tuples: "
                    f"{spec.to_positional()} vs {home.to_positional()}",
                )
        class_counts = {order: len(bucket) for order, bucket in reps.items()}
        want_counts = {p**e: c for e, c in count_classes(p, exp).items()}
        _require(
            class_counts == want_counts,
            f"class counts per order differ for p={p}: "
            f"oracle {class_counts} vs tuples {want_counts}",
        )
        for _ in range(samples):
            s1, s2 = rng.choice(specs), rng.choice(specs)
            ab, _w1 = are_isomorphic(s1, s2)
            ba, _w2 = are_isomorphic(s2, s1)
            _require(
                ab == ba,
                f"verdict not symmetric: {s1.to_positional()} vs {s2.to_positional()}",
            )
            _require(
                ab == (tuples[s1] == tuples[s2]),
                "verdict disagrees with tuple equality: "
                f"{s1.to_positional()} vs {s2.to_positional()}",
            )
        total_specs += len(specs)
        total_classes += sum(class_counts.values())
    return (
        f"{total_specs} presentations fell into {total_classes} classes;"
        " verdicts match tuple equality"
    )


def check_u_family() -> str:
    """The three order-3^8 fixtures are distinct groups with round trips."""
    specs = []
    for tup in U_FIXTURES:
        report = validate(tup)
        _require(
            report.valid,
            f"fixture {tup.to_positional()} violates {','.join(report.violations)}",
        )
        G = construct(tup)
        got, _witness = compute_inv(G)
        _require(
            got == tup,
            f"fixture round trip failed for u={tup.u2}: got {got.to_positional()}",
        )
        specs.append(G)
    for i in range(len(specs)):
        for j in range(i + 1, len(specs)):
            verdict, _witness = are_isomorphic(specs[i], specs[j])
            _require(
                not verdict,
                f"u={U_FIXTURES[i].u2} and u={U_FIXTURES[j].u2} fixtures"
                " came out isomorphic",
            )
    return "3 fixtures at order 3^8: validated, round-tripped, pairwise distinct"


def _geometric_sum(x: int, n: int) -> int:
    total, xp = 0, 1
    for _ in range(n):
        total += xp
        xp *= x
    return total


def _geometric_sum_mod(s: int, n: int, modulus: int) -> int:
    total, sp = 0, 1 % modulus
    s %= modulus
    for _ in range(n):
        total = (total + sp) % modulus
        sp = sp * s % modulus
    return total


def _double_sum(x: int, y: int, n: int) -> int:
    xp = [1] * n
    for i in range(1, n):
        xp[i] = xp[i - 1] * x
    yp = 1
    total = 0
    prefix = 0
    for j in range(n):
        total += prefix * yp
        prefix += xp[j]
        yp *= y
    return total


def _double_sum_mod(s: int, t: int, n: int, modulus: int) -> int:
    total = prefix = 0
    sp = tp = 1 % modulus
    s %= modulus
    t %= modulus
    for _ in range(n):
        total = (total + tp * prefix) % modulus
        prefix = (prefix + sp) % modulus
        sp = sp * s % modulus
        tp = tp * t % modulus
    return total


def _double_sum_cells_mod(s: int, t: int, n: int, modulus: int) -> int:
    # term by term over the full index triangle, as slow as it is honest
    total = 0
    for j in range(n):
        for i in range(j):
            total = (total + pow(s, i, modulus) * pow(t, j, modulus)) % modulus
    return total


def _excess(m: int, v) -> int:
    """max(0, m - v) with valuation v possibly INFINITY."""
    if v is INFINITY:
        return 0
    return max(0, m - v)


def _lemma_sum_identities(rng: random.Random, cases: int) -> None:
    for _ in range(cases):
        x = rng.randint(-9, 9)
        a = rng.randint(1, 40)
        b = rng.randint(1, 12)
        s_a = _geometric_sum(x, a)
        if x == 1:
            _require(s_a == a, f"geometric sum at x=1 is not a: a={a}")
        else:
            _require(
                s_a == (x**a - 1) // (x - 1),
                f"closed form differs from the sum: x={x} a={a}",
            )
        _require(
            _geometric_sum(x, 1 + a) == 1 + x * s_a,
            f"shift identity fails: x={x} a={a}",
        )
        _require(
            _geometric_sum(x, a * b) == s_a * _geometric_sum(x**a, b),
            f"block identity fails: x={x} a={a} b={b}",
        )
        _require(
            (x - 1) * _double_sum(x, 1, a) == s_a - a,
            f"telescoping identity fails: x={x} a={a}",
        )
        modulus = rng.randint(2, 10**6)
        _require(
            ese(x, a, modulus) == s_a % modulus,
            f"ese differs from the literal sum: x={x} a={a} modulus={modulus}",
        )
        _require(
            ese2(x, 1, a, modulus) == _double_sum(x, 1, a) % modulus,
            f"ese2 differs from the literal double sum: x={x} a={a}",
        )


def _lemma_plus_valuations(rng: random.Random, cases: int) -> None:
    primes = (2, 3, 5, 7, 11, 13)
    for _ in range(cases):
        p = rng.choice(primes)
        vmin = 2 if p == 2 else 1
        s = 1 + rng.randint(-30, 30) * p ** rng.randint(vmin, 6)
        n = rng.randint(1, 200)
        vs = vp(p, s - 1)
        if s == 1:
            _require(vp(p, s**n - 1) is INFINITY, f"s=1 valuation: p={p} n={n}")
        else:
            _require(
                vp(p, s**n - 1) == vs + vp(p, n),
                f"power valuation fails: p={p} s={s} n={n}",
            )
        _require(
            vp(p, _geometric_sum(s, n)) == vp(p, n),
            f"sum valuation fails: p={p} s={s} n={n}",
        )
        n_ord = rng.randint(1, 40)
        q = p**n_ord
        want = 1 if vs is INFINITY else p ** max(0, n_ord - vs)
        _require(
            ord_mod(q, s % q) == want,
            f"multiplicative order fails: p={p} s={s} n={n_ord}",
        )


def _lemma_minus_valuations(rng: random.Random, cases: int) -> None:
    for _ in range(cases):
        s = 4 * rng.randint(-40, 40) + 3
        n = rng.randint(1, 200)
        if n % 2 == 1:
            _require(vp(2, s**n - 1) == 1, f"odd-power valuation fails: s={s} n={n}")
            _require(
                vp(2, _geometric_sum(s, n)) == 0,
                f"odd-sum valuation fails: s={s} n={n}",
            )
        elif s == -1:
            _require(
                s**n - 1 == 0 and _geometric_sum(s, n) == 0,
                f"s=-1 even case: n={n}",
            )
        else:
            v1 = vp(2, s + 1)
            _require(
                vp(2, s**n - 1) == v1 + vp(2, n),
                f"even-power valuation fails: s={s} n={n}",
            )
            _require(
                vp(2, _geometric_sum(s, n)) == vp(2, n) + v1 - 1,
                f"even-sum valuation fails: s={s} n={n}",
            )
        n_ord = rng.randint(2, 40)
        q = 2**n_ord
        v1 = vp(2, s + 1)
        want = 2 if v1 is INFINITY else 2 ** max(1, n_ord - v1)
        _require(
            ord_mod(q, s % q) == want,
            f"multiplicative order fails: s={s} n={n_ord}",
        )


def _lemma_congruence_table(rng: random.Random, cases: int) -> None:
    primes = (2, 2, 3, 5, 7)
    for _ in range(cases):
        p = rng.choice(primes)
        m = rng.randint(1, 9 if p == 2 else 5)
        a = rng.randint(1, m + 2)
        k = rng.randint(1, 60)
        if k % p == 0:
            k += 1
        s = 1 + rng.choice((1, -1)) * k * p**a
        n = p ** max(0, m - a) * rng.randint(0, 12) + rng.choice((0, 1))
        if n == 0:
            n = p ** max(0, m - a)
        pm = p**m
        got = _geometric_sum_mod(s, n, pm)
        if p == 2 and a == 1 and m > 1:
            want = (0 if n % 2 ** (m - 1) == 0 else 1) % pm
        elif p == 2 and 2 <= a < m and n % 2 ** (m - a + 1) not in (0, 1):
            want = (n + 2 ** (m - 1)) % pm
        else:
            want = n % pm
        _require(
            got == want,
            f"congruence table fails: p={p} m={m} a={a} s={s} n={n}",
        )
        _require(ese(s, n, pm) == got, f"ese differs: p={p} m={m} s={s} n={n}")


def _lemma_double_sum_valuation(rng: random.Random, cases: int) -> None:
    sizes = {2: 7, 3: 4, 5: 3, 7: 2}
    for index in range(cases):
        p = rng.choice((2, 2, 3, 3, 5, 7))
        e = rng.randint(1, sizes[p])
        length = p**e
        s = 1 + p * rng.randint(-60, 60)
        t = 1 + p * rng.randint(-60, 60)
        q = p**e
        got = _double_sum_mod(s, t, length, q)
        want = 2 ** (e - 1) % q if p == 2 else 0
        _require(
            got == want,
            f"double-sum congruence fails: p={p} e={e} s={s} t={t}",
        )
        _require(
            ese2(s, t, length, q) == got,
            f"ese2 differs: p={p} e={e} s={s} t={t}",
        )
        if index < 60 and length <= 64:
            _require(
                _double_sum_cells_mod(s, t, length, q) == got,
                f"summation oracles disagree: p={p} e={e} s={s} t={t}",
            )


def _lemma_mixed_double_sum(rng: random.Random, cases: int) -> None:
    for index in range(cases):
        m = rng.randint(1, 6)
        s1 = -1 + rng.randint(-40, 40) * 2 ** rng.randint(2, m + 2)
        s2 = 1 + 2 * rng.randint(-80, 80)
        o1 = _excess(m, vp(2, s1 + 1))
        o2 = _excess(m, vp(2, s2 - 1))
        n = rng.randint(max(o1, o2) + 1, max(o1, o2) + 3)
        q = 2**m
        got = _double_sum_mod(s1, s2, 2**n, q)
        _require(
            got == 2 ** (n - 1) % q,
            f"mixed double-sum congruence fails: m={m} s1={s1} s2={s2} n={n}",
        )
        _require(
            ese2(s1, s2, 2**n, q) == got,
            f"ese2 differs: m={m} s1={s1} s2={s2} n={n}",
        )
        if index < 60 and n <= 6:
            _require(
                _double_sum_cells_mod(s1, s2, 2**n, q) == got,
                f"summation oracles disagree: m={m} s1={s1} s2={s2} n={n}",
            )


def _floor_carry_identity(max_n: int) -> int:
    checked = 0
    for n in range(1, max_n + 1):
        for z1 in range(n):
            for z2 in range(n):
                s12 = z1 + z2
                for z3 in range(n):
                    s23 = z2 + z3
                    lhs = (s12 % n + z3) // n + s12 // n
                    rhs = (z1 + s23 % n) // n + s23 // n
                    if lhs != rhs:
                        raise CheckFailure(
                            f"floor-carry identity fails: n={n} z=({z1},{z2},{z3})"
                        )
                    checked += 1
    return checked


def check_exponent_sum_lemmas(
    cases: int = 1000, floor_max_n: int = 16, seed: int = _SEED
) -> str:
    """Randomized exponent-sum lemmas against literal summation oracles."""
    rng = random.Random(seed)
    _lemma_sum_identities(rng, cases)
    _lemma_plus_valuations(rng, cases)
    _lemma_minus_valuations(rng, cases)
    _lemma_congruence_table(rng, cases)
    _lemma_double_sum_valuation(rng, cases)
    _lemma_mixed_double_sum(rng, cases)
    carried = _floor_carry_identity(floor_max_n)
    return (
        f"6 lemma families x {cases} cases;"
        f" floor-carry identity exhaustive on {carried} triples"
    )


def _carry_check(G: GroupSpec) -> None:
    for x1 in range(G.N1):
        for y1 in range(G.N2):
            g = Element(x1, y1, 0)
            for x2 in range(G.N1):
                for y2 in range(G.N2):
                    prod = multiply(G, g, Element(x2, y2, 0))
                    want = Element(
                        (x1 + x2) % G.N1,
                        (y1 + y2) % G.N2,
                        rho(G, (x1, y1), (x2, y2)),
                    )
                    if prod != want:
                        raise CheckFailure(
                            "carry term differs from the cocycle in "
                            f"{G.to_positional()} at {(x1, y1, x2, y2)}"
                        )


def check_cocycle(
    bounds=_FULL_EXHAUSTIVE_BOUNDS,
    fixtures=None,
    triples: int = 100_000,
    seed: int = _SEED,
) -> str:
    """Associativity, exhaustively at small orders and sampled on fixtures.

    Small groups get the full order^3 check through the vectorized table
    (spot-checked against multiply); every group additionally has all its
    kernel-free products compared against the cocycle formula.
    """
    rng = random.Random(seed)
    if fixtures is None:
        fixtures = default_fixtures()
    checked = 0
    for p, exp in bounds:
        for tup in enumerate_tuples(p, exp):
            G = construct(tup)
            n = G.order()
            table = times_table(G)
            for _ in range(200):
                i, j = rng.randrange(n), rng.randrange(n)
                left = multiply(G, element_at(G, i), element_at(G, j))
                if index_of(G, left) != int(table[i, j]):
                    raise CheckFailure(
                        f"table row disagrees with multiply in {G.to_positional()}"
                        f" at ({i},{j})"
                    )
            for i in range(n):
                row = table[i]
                left = table[row]
                right = table[i][table]
                if not np.array_equal(left, right):
                    j, k = (int(v) for v in np.argwhere(left != right)[0])
                    raise CheckFailure(
                        f"associativity fails in {G.to_positional()}"
                        f" at indices ({i},{j},{k})"
                    )
            _carry_check(G)
            checked += 1
    for F in fixtures:
        _carry_check(F)
        for _ in range(triples):
            g = Element(
                rng.randrange(F.N1), rng.randrange(F.N2), rng.randrange(F.M)
            )
            h = Element(
                rng.randrange(F.N1), rng.randrange(F.N2), rng.randrange(F.M)
            )
            k = Element(
                rng.randrange(F.N1), rng.randrange(F.N2), rng.randrange(F.M)
            )
            if multiply(F, multiply(F, g, h), k) != multiply(F, g, multiply(F, h, k)):
                raise CheckFailure(
                    f"associativity fails in {F.to_positional()} at {(g, h, k)}"
                )
    return (
        f"{checked} groups exhaustively associative;"
        f" {len(fixtures)} fixtures x {triples} random triples"
    )


def check_fastpaths(bounds=_FULL_FASTPATH_BOUNDS) -> str:
    """All four base predicates agree with definitional search everywhere."""
    groups = 0
    cand_total = 0
    for p, exp in bounds:
        for tup in enumerate_tuples(p, exp):
            G = construct(tup)
            cands = list(base_candidates(G))
            sign_orders = {}
            for pat in cands:
                s1, o1 = sigma_o(G, Element(pat[0], pat[1], 0))
                s2, o2 = sigma_o(G, Element(pat[2], pat[3], 0))
                sign_orders[pat] = (s1, s2, o1, o2)
            so_min = min(sign_orders.values())
            _require(
                so_min == compute_sigma_o_min(G),
                f"sign/order minimum differs in {G.to_positional()}",
            )
            for pat, so in sign_orders.items():
                b = Basis(Element(pat[0], pat[1], 0), Element(pat[2], pat[3], 0))
                if fastpath_in_Bprime(G, b) != (so == so_min):
                    raise CheckFailure(
                        f"sign/order predicate disagrees in {G.to_positional()}"
                        f" at {pat}"
                    )
            R1, R2 = derive_r_values(p, G.m, *so_min)
            patterns = [
                pat
                for pat in cands
                if r_of(G, Element(pat[0], pat[1], 0)) == R1
                and r_of(G, Element(pat[2], pat[3], 0)) == R2
            ]
            _require(
                bool(patterns), f"no basis realizes the residues in {G.to_positional()}"
            )
            reference = (1, 0, 0, 1) if (1, 0, 0, 1) in patterns else patterns[0]
            ref1 = Element(reference[0], reference[1], 0)
            ref2 = Element(reference[2], reference[3], 0)
            for pat in cands:
                g1 = multiply(G, power(G, ref1, pat[0]), power(G, ref2, pat[1]))
                g2 = multiply(G, power(G, ref1, pat[2]), power(G, ref2, pat[3]))
                want = r_of(G, g1) == R1 and r_of(G, g2) == R2
                if fastpath_in_Br(G, pat) != want:
                    raise CheckFailure(
                        f"residue predicate disagrees in {G.to_positional()} at {pat}"
                    )
            members = []
            for pat in patterns:
                for z1 in range(G.M):
                    for z2 in range(G.M):
                        b = Basis(
                            Element(pat[0], pat[1], z1), Element(pat[2], pat[3], z2)
                        )
                        members.append((b, base_data(G, b)))
            best_op = max(data.oprime for _b, data in members)
            best_u = min(
                (data.u[1], data.u[0])
                for _b, data in members
                if data.oprime == best_op
            )
            got, _witness = compute_inv(G)
            _require(
                best_op == (got.op1, got.op2) and best_u == (got.u2, got.u1),
                f"sweep extrema disagree with the tuple in {G.to_positional()}",
            )
            for b, data in members:
                at_top = data.oprime == best_op
                if fastpath_in_Brprime(G, b) != at_top:
                    raise CheckFailure(
                        f"excess-order predicate disagrees in {G.to_positional()}"
                        f" at {b}"
                    )
                if at_top:
                    want = (data.u[1], data.u[0]) == best_u
                    if fastpath_in_Brt(G, b) != want:
                        raise CheckFailure(
                            f"unit predicate disagrees in {G.to_positional()} at {b}"
                        )
            groups += 1
            cand_total += len(cands)
    return f"{groups} groups, {cand_total} candidate bases, four predicates each"


def _tuple_bound_violation(t: InvariantTuple) -> str | None:
    """First violated conclusion of the order/unit bound corollary, if any."""
    m, n1, n2 = t.m, t.n1, t.n2
    sides = (
        (1, t.sigma1, t.o1, t.op1, t.u1, n1),
        (2, t.sigma2, t.o2, t.op2, t.u2, n2),
    )
    for i, sigma, o, op, u, n in sides:
        if op > m - o:
            return f"op{i} exceeds m - o{i}"
        if sigma == -1 and (op > 1 or u != 1):
            return f"inverting side {i} needs op <= 1 and u = 1"
        if o > min(m, n) - 1:
            return f"o{i} exceeds min(m, n{i}) - 1"
        if t.p == 2 and m >= 2 and o > m - 2:
            return f"o{i} exceeds m - 2"
    if t.op1 > m - t.o2:
        return "op1 exceeds m - o2"
    if m > n1 and t.sigma1 != -1:
        return "m > n1 requires sigma1 = -1"
    if t.sigma1 == 1 and m == n1 and t.o1 * t.o2 != 0:
        return "sigma1 = 1 with m = n1 requires o1*o2 = 0"
    if t.sigma1 != t.sigma2:
        if m <= n2:
            if t.op2 > 1:
                return "mixed signs with m <= n2 require op2 <= 1"
        else:
            if t.op2 != m + 1 - n2:
                return "mixed signs with m > n2 force op2 = m + 1 - n2"
            q = 2 ** (m - n2)
            if t.u2 * (-1 + 2 ** (m - t.o1 - 1)) % q != 1 % q:
                return "mixed-sign unit congruence fails"
            if not 1 <= t.u2 <= 2 ** (m - n2 + 1):
                return "mixed-sign unit out of range"
    return None


def check_structure(
    bounds=_FULL_ROUND_TRIP_BOUNDS, z_samples: int = 150, seed: int = _SEED
) -> str:
    """Derived-subgroup shape, generator orders, and tuple bounds."""
    rng = random.Random(seed)
    b1, b2 = Element(1, 0, 0), Element(0, 1, 0)
    a = Element(0, 0, 1)
    groups = 0
    for p, exp in bounds:
        for tup in enumerate_tuples(p, exp):
            G = construct(tup)
            _require(
                commutator(G, b2, b1) == a,
                f"[b2,b1] is not the kernel generator in {G.to_positional()}",
            )
            _require(
                element_order(G, a) == G.M,
                f"kernel generator order is not M in {G.to_positional()}",
            )
            for x1 in range(G.N1):
                for y1 in range(G.N2):
                    g = Element(x1, y1, 0)
                    for x2 in range(G.N1):
                        for y2 in range(G.N2):
                            c = commutator(G, g, Element(x2, y2, 0))
                            if c.x or c.y:
                                raise CheckFailure(
                                    "commutator escapes the kernel in "
                                    f"{G.to_positional()} at {(x1, y1, x2, y2)}"
                                )
            for _ in range(z_samples):
                g = Element(
                    rng.randrange(G.N1), rng.randrange(G.N2), rng.randrange(G.M)
                )
                h = Element(
                    rng.randrange(G.N1), rng.randrange(G.N2), rng.randrange(G.M)
                )
                c = commutator(G, g, h)
                if c.x or c.y:
                    raise CheckFailure(
                        "commutator escapes the kernel in "
                        f"{G.to_positional()} at {(g, h)}"
                    )
            got, _witness = compute_inv(G)
            _require(
                element_order(G, b1) == p ** (got.n1 + got.op1),
                f"first generator order is off in {G.to_positional()}",
            )
            _require(
                element_order(G, b2) == p ** (got.n2 + got.op2),
                f"second generator order is off in {G.to_positional()}",
            )
            reason = _tuple_bound_violation(got)
            if reason is not None:
                raise CheckFailure(f"{reason} for {got.to_positional()}")
            groups += 1
    return f"{groups} groups: kernel shape, generator orders, tuple bounds"


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float


def default_fixtures() -> list[GroupSpec]:
    """The order-3^8 trio plus every order-625 group."""
    fixtures = [construct(t) for t in U_FIXTURES]
    fixtures += [
        construct(t) for t in enumerate_tuples(5, 4) if t.total_exp() == 4
    ]
    return fixtures


def _exp_cap(p: int, order_limit: int) -> int:
    e = 0
    while p ** (e + 1) <= order_limit:
        e += 1
    return e


def run_criteria(
    p: int | None = None, max_order_exp: int | None = None, threads: int = 1
) -> list[CriterionResult]:
    """Run all seven acceptance checks; never raises for a failed check.

    With p and max_order_exp given, sweeps scale to that universe: the
    partition and predicate checks cap at order 243, exhaustive
    associativity at 512, and the order-3^8 fixture trio runs only when it
    fits the requested bounds (it is skipped, not failed, otherwise).
    """
    if (p is None) != (max_order_exp is None):
        raise ValueError("p and max_order_exp must be given together")
    if p is None:
        round_bounds = _FULL_ROUND_TRIP_BOUNDS
        part_bounds = _FULL_PARTITION_BOUNDS
        assoc_bounds = _FULL_EXHAUSTIVE_BOUNDS
        fast_bounds = _FULL_FASTPATH_BOUNDS
        fixtures = default_fixtures()
        with_u_family = True
    else:
        if max_order_exp < 0:
            raise ValueError("max_order_exp must be non-negative")
        round_bounds = ((p, max_order_exp),)
        part_bounds = ((p, min(max_order_exp, _exp_cap(p, 243))),)
        assoc_bounds = ((p, min(max_order_exp, _exp_cap(p, 512))),)
        fast_bounds = part_bounds
        with_u_family = p == 3 and max_order_exp >= 8
        if with_u_family:
            fixtures = [construct(t) for t in U_FIXTURES]
        else:
            fixtures = [
                construct(t)
                for t in enumerate_tuples(p, max_order_exp)
                if p ** t.total_exp() > 512
            ][-3:]
    skipped = "skipped: the order-3^8 fixtures exceed the requested bounds"
    runners = (
        (1, "round-trip", lambda: check_round_trip(round_bounds, threads=threads)),
        (2, "partition-vs-oracle", lambda: check_partition(part_bounds, threads=threads)),
        (3, "u-family-fixture", check_u_family if with_u_family else (lambda: skipped)),
        (4, "exponent-sum-lemmas", check_exponent_sum_lemmas),
        (5, "cocycle-associativity", lambda: check_cocycle(assoc_bounds, fixtures=fixtures)),
        (6, "fastpath-equivalence", lambda: check_fastpaths(fast_bounds)),
        (7, "structural-invariants", lambda: check_structure(round_bounds)),
    )
    results = []
    for number, name, fn in runners:
        start = time.perf_counter()
        try:
            detail = fn()
            passed = True
        except CheckFailure as exc:
            detail = str(exc)
            passed = False
        except Exception as exc:  # a crashed check is a failed check
            detail = f"crashed: {exc!r}"
            passed = False
        results.append(
            CriterionResult(number, name, passed, detail, time.perf_counter() - start)
        )
    return results
