"""Exact integer arithmetic used throughout the package.

Everything here works on Python ints of arbitrary size and is pure.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import reduce

__all__ = [
    "InfiniteValuation",
    "LteContext",
    "LteHypothesisError",
    "alpha_p_delta",
    "crt_solve",
    "euler_phi",
    "factorize",
    "from_digits",
    "is_prime",
    "lte_context",
    "lte_valuation",
    "mult_order",
    "nu",
    "primes_upto",
    "smallest_prime_power_part",
    "to_digits",
]


class InfiniteValuation(ArithmeticError):
    """Raised by :func:`nu` for ``n == 0``, whose valuation is +infinity."""


class LteHypothesisError(ValueError):
    """The lifting-the-exponent identity does not apply to this context."""


def _check_base(q: int) -> None:
    if q < 2:
        raise ValueError(f"base must be >= 2, got {q}")


def to_digits(n: int, q: int) -> list[int]:
    """Digits of ``n`` in base ``q``, least significant first. ``0 -> [0]``."""
    _check_base(q)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return [0]
    if q == 2:
        return [int(c) for c in reversed(bin(n)[2:])]
    digits = []
    while n:
        n, d = divmod(n, q)
        digits.append(d)
    return digits


def from_digits(digits: list[int], q: int) -> int:
    _check_base(q)
    n = 0
    for d in reversed(digits):
        if not 0 <= d < q:
            raise ValueError(f"digit {d} out of range for base {q}")
        n = n * q + d
    return n


def nu(p: int, n: int) -> int:
    """Exponent of ``p`` in ``n``."""
    if n == 0:
        raise InfiniteValuation(f"nu({p}, 0) is infinite")
    if p < 2:
        raise ValueError("p must be >= 2")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def primes_upto(n: int) -> list[int]:
    """All primes ``<= n`` by the sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, n + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


_SMALL_PRIMES = primes_upto(200)
# Deterministic Miller-Rabin witnesses; correct for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981
MR_RANDOM_ROUNDS = 40


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test.

    Exact below 3.3e24 (in particular for all n < 2**64). Above that,
    40 Miller-Rabin rounds with bases drawn from a generator seeded by ``n``
    itself, so answers are reproducible; error probability <= 4**-40.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_DETERMINISTIC_LIMIT:
        return all(_mr_round(n, d, s, a) for a in _MR_BASES)
    rng = random.Random(n)
    return all(_mr_round(n, d, s, rng.randrange(2, n - 1)) for _ in range(MR_RANDOM_ROUNDS))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (desk-scale inputs only)."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError("euler_phi needs m >= 1")
    result = m
    for p in factorize(m):
        result -= result // p
    return result


def mult_order(b: int, m: int) -> int:
    """Least k >= 1 with b**k == 1 (mod m)."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if math.gcd(b, m) != 1:
        raise ValueError(f"gcd({b}, {m}) != 1, no multiplicative order")
    k = euler_phi(m)
    for p in factorize(k):
        while k % p == 0 and pow(b, k // p, m) == 1:
            k //= p
    return k


@dataclass(frozen=True)
class LteContext:
    """Data for lifting the exponent of ``p`` along powers of ``b``.

    ``ord`` is the order of ``b`` mod ``p`` and ``p**gamma`` exactly divides
    ``b**ord - 1``.
    """

    p: int
    b: int
    ord: int
    gamma: int


def lte_context(p: int, b: int) -> LteContext:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if b % p == 0:
        raise ValueError(f"gcd({b}, {p}) != 1")
    order = 1 if p == 2 else mult_order(b, p)
    return LteContext(p, b, order, nu(p, pow(b, order) - 1))


def lte_valuation(ctx: LteContext, n: int) -> int:
    """``nu(p, b**(ord*n) - 1)`` computed as ``gamma + nu(p, n)``.

    For ``p == 2`` the identity needs ``b == 1 (mod 4)``, i.e. ``gamma >= 2``;
    otherwise :class:`LteHypothesisError` is raised.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if ctx.p == 2 and ctx.gamma < 2:
        raise LteHypothesisError(
            f"LTE at p=2 requires b = 1 mod 4 (gamma >= 2); b={ctx.b} has gamma={ctx.gamma}"
        )
    return ctx.gamma + nu(ctx.p, n)


def smallest_prime_power_part(q: int) -> tuple[int, int]:
    """``(q1, e1)`` with q1 the smallest prime factor of q and q1**e1 || q."""
    _check_base(q)
    fac = factorize(q)
    q1 = min(fac)
    return q1, fac[q1]


def alpha_p_delta(p: int, delta: int, q: int, prime: int | None = None) -> int:
    """Exact exponent of the base prime in ``p**(delta*phi(q1**e1)) - 1``.

    ``q1`` is ``prime`` if given (must divide ``q``), else the smallest prime
    factor of ``q``; ``e1`` is its full exponent in ``q``. For prime ``q`` this
    is the largest alpha with ``q**alpha | p**(delta*phi(q)) - 1``.
    """
    _check_base(q)
    if delta < 1:
        raise ValueError("delta must be >= 1")
    if math.gcd(p, q) != 1:
        raise ValueError(f"gcd({p}, {q}) != 1")
    if prime is None:
        q1, e1 = smallest_prime_power_part(q)
    else:
        if q % prime or not is_prime(prime):
            raise ValueError(f"{prime} is not a prime divisor of {q}")
        q1, e1 = prime, nu(prime, q)
    return nu(q1, pow(p, delta * euler_phi(q1**e1)) - 1)


def crt_solve(congruences: list[tuple[int, int]]) -> int:
    """Unique ``x`` in ``[0, prod(moduli))`` with ``x = r (mod m)`` for each pair."""
    moduli = [m for _, m in congruences]
    if any(m < 1 for m in moduli):
        raise ValueError("moduli must be >= 1")
    for i, a in enumerate(moduli):
        for b in moduli[i + 1 :]:
            if math.gcd(a, b) != 1:
                raise ValueError(f"moduli {a} and {b} are not coprime")
    big = reduce(lambda x, y: x * y, moduli, 1)
    x = 0
    for r, m in congruences:
        if m == 1:
            continue
        rest = big // m
        x += r * rest * pow(rest, -1, m)
    return x % big
