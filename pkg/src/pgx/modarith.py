"""Exact modular / number-theoretic primitives.

Everything here is pure integer arithmetic: p-adic valuations, multiplicative
orders, modular inverses, and the two exponent-sum operators

    ese(s, n)     = 1 + s + s^2 + ... + s^(n-1)
    ese2(s, t, n) = sum of s^i * t^j over 0 <= i < j < n

evaluated modulo a given modulus.  Both operators use O(log n) recursions so
that n up to 2^62 stays cheap; division by (s - 1) is never used because it is
usually a zero divisor modulo a prime power.
"""

from __future__ import annotations

import math

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class _Infinity:
    """The valuation of zero.  Compares above every integer; no arithmetic."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("pgx.INFINITY")

    def __lt__(self, other):
        if isinstance(other, (int, _Infinity)):
            return False
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, (int, _Infinity)):
            return other is self
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, (int, _Infinity)):
            return other is not self
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (int, _Infinity)):
            return True
        return NotImplemented

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 3.3 * 10^24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def vp(p: int, n: int):
    """p-adic valuation of n; vp(p, 0) is the INFINITY singleton.

    >>> vp(2, 12)
    2
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if n == 0:
        return INFINITY
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _factorize(n: int) -> dict[int, int]:
    # trial division; fine at desk scale (moduli are small prime powers)
    out: dict[int, int] = {}
    for q in (2, 3):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    q = 5
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 2 if q % 3 == 2 else 4  # skip multiples of 2 and 3
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def ord_mod(m: int, n: int) -> int:
    """Multiplicative order of n modulo m (smallest k >= 1 with n^k = 1).

    >>> ord_mod(27, 4)
    9
    """
    if m <= 0:
        raise ValueError(f"modulus must be positive, got {m}")
    if math.gcd(n, m) != 1:
        raise ValueError(f"{n} is not a unit mod {m}")
    if m == 1:
        return 1
    n %= m
    phi = 1
    for q, e in _factorize(m).items():
        phi *= (q - 1) * q ** (e - 1)
    order = phi
    for q in _factorize(phi):
        while order % q == 0 and pow(n, order // q, m) == 1:
            order //= q
    return order


def inv_mod(a: int, m: int) -> int:
    """Inverse of a modulo m, as a residue in [0, m)."""
    if m <= 0:
        raise ValueError(f"modulus must be positive, got {m}")
    try:
        return pow(a, -1, m)
    except ValueError:
        raise ValueError(f"{a} is not invertible mod {m}") from None


def ese(s: int, n: int, modulus: int) -> int:
    """Geometric sum 1 + s + ... + s^(n-1) mod modulus; ese(s, 0, .) = 0.

    Evaluated by the doubling rules S(2k) = S(k)*(1 + s^k) and
    S(k+1) = S(k) + s^k, so n may be as large as 2^62.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if modulus <= 0:
        raise ValueError(f"modulus must be positive, got {modulus}")
    s %= modulus
    acc = 0  # S_s(k) for the bit prefix k of n
    pw = 1  # s^k
    for bit in bin(n)[2:]:
        acc = acc * (1 + pw) % modulus
        pw = pw * pw % modulus
        if bit == "1":
            acc = (acc + pw) % modulus
            pw = pw * s % modulus
    return acc


def ese2(s: int, t: int, n: int, modulus: int) -> int:
    """Double sum of s^i * t^j over 0 <= i < j < n, mod modulus.

    Splitting the index square at h = n // 2 gives

        S2(n) = S2(h) + S(s,h) * t^h * S(t,n-h) + (s*t)^h * S2(n-h)

    and the two sub-sizes h, n-h differ by at most one, so only O(log n)
    distinct sizes occur.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if modulus <= 0:
        raise ValueError(f"modulus must be positive, got {modulus}")
    s %= modulus
    t %= modulus
    st = s * t % modulus
    memo: dict[int, int] = {0: 0, 1: 0}

    def rec(k: int) -> int:
        if k in memo:
            return memo[k]
        h = k // 2
        cross = ese(s, h, modulus) * pow(t, h, modulus) % modulus
        cross = cross * ese(t, k - h, modulus) % modulus
        val = (rec(h) + cross + pow(st, h, modulus) * rec(k - h)) % modulus
        memo[k] = val
        return val

    return rec(n)


def exact_log(p: int, q: int) -> int:
    """The k with p^k == q; raises if q is not a power of p."""
    if q < 1:
        raise ValueError(f"expected a positive power of {p}, got {q}")
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    if q != 1:
        raise ValueError(f"not a power of {p}")
    return k


def sigma_o_of_r(r: int, p: int, m: int) -> tuple[int, int]:
    """Sign and logarithmic order of the conjugation unit r mod p^m.

    The sign is -1 exactly when p = 2, m >= 2 and r = -1 mod 4.  The second
    component is 0 when r = -1 mod p^m, and otherwise log_p of the
    multiplicative order of r mod p^m (which must be a power of p).
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    if m > 0 and r % p == 0:
        raise ValueError(f"{r} is not a unit mod {p}^{m}")
    big_m = p**m
    r %= big_m
    sign = -1 if (p == 2 and m >= 2 and r % 4 == 3) else 1
    if r == (big_m - 1) % big_m:
        return (sign, 0)
    return (sign, exact_log(p, ord_mod(big_m, r)))
