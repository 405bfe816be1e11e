"""Multiplicativity checks, prime-power tables and the prime-set taxonomy.

For a sequence ``f`` and prime ``p`` the profile records ``f(p**e)`` for
``e <= E`` and membership in

* P0: ``f(p) == 0``;
* P>1 / P<1: some ``|f(p**e)|`` above 1 / strictly between 0 and 1;
* P1hat: some ``f(p**e) == 1`` after the binary reduction (``f(p**e) != 0``).

``alpha_p`` is the least ``alpha_p_delta(p, delta, q)`` over the exponents
``delta <= E`` with ``f(p**delta) != 0`` and ``delta_p`` the least exponent
attaining it. Everything is a bounded search; ``E`` is reported.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

from .dfao import Dfao, evaluate, map_outputs, values_upto
from .numtheory import alpha_p_delta, primes_upto
from .values import ONE, ZERO, Value

__all__ = [
    "MultReport",
    "PrimeProfile",
    "binary_reduction",
    "check_multiplicative",
    "prime_profiles",
]

MULTIPLICATIVE = "Multiplicative"
COMPLETELY_MULTIPLICATIVE = "CompletelyMultiplicative"
COUNTEREXAMPLE = "Counterexample"


@dataclass(frozen=True)
class MultReport:
    bound: int
    status: str
    witness: Optional[tuple[int, int]]
    pairs_checked: int
    complete: bool = False

    @property
    def ok(self) -> bool:
        return self.status != COUNTEREXAMPLE

    def as_dict(self) -> dict:
        m, n = self.witness if self.witness else (None, None)
        return {"bound": self.bound, "complete": self.complete, "status": self.status,
                "witness_m": m, "witness_n": n, "pairs_checked": self.pairs_checked}


def check_multiplicative(a: Dfao, N: int, complete: bool = False) -> MultReport:
    """Exhaustive check of ``f(mn) == f(m) f(n)`` over ``2 <= m <= n``, ``mn <= N``.

    Coprime pairs decide the verdict unless ``complete``; the remaining pairs
    are still checked so a passing function can be labelled completely
    multiplicative. The reported witness is the first failing pair in
    ``(m + n, m)`` order. A function passing every pair but with ``f(1) != 1``
    gets the conventional witness ``(1, 1)``.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    vals = values_upto(a, N)
    alphabet = sorted(set(vals), key=Value.sort_key)
    code = {v: i for i, v in enumerate(alphabet)}
    f = [code[v] for v in vals]
    prod = [[code.get(x * y, -1) for y in alphabet] for x in alphabet]

    worst_coprime = worst_other = None
    pairs = 0
    m = 2
    while m * m <= N:
        fm = prod[f[m]]
        for n in range(m, N // m + 1):
            pairs += 1
            if f[m * n] != fm[f[n]]:
                key = (m + n, m, n)
                if math.gcd(m, n) == 1:
                    if worst_coprime is None or key < worst_coprime:
                        worst_coprime = key
                elif worst_other is None or key < worst_other:
                    worst_other = key
        m += 1

    if complete:
        fails = [k for k in (worst_coprime, worst_other) if k is not None]
        bad = min(fails) if fails else None
    else:
        bad = worst_coprime
    if bad is not None:
        return MultReport(N, COUNTEREXAMPLE, (bad[1], bad[2]), pairs, complete)
    if vals[1] != ONE:
        return MultReport(N, COUNTEREXAMPLE, (1, 1), pairs, complete)
    status = MULTIPLICATIVE if worst_other is not None else COMPLETELY_MULTIPLICATIVE
    return MultReport(N, status, None, pairs, complete)


def _nonzero_to_one(v: Value) -> Value:
    return ZERO if v.is_zero else ONE


def binary_reduction(a: Dfao) -> Dfao:
    """Relabel outputs: 0 stays 0, everything else becomes 1.

    For multiplicative ``f`` this is the sequence obtained by taking ``|f|``
    and then setting every prime-power value outside {0, 1} to 1.
    """
    return map_outputs(a, _nonzero_to_one)


@dataclass(frozen=True)
class PrimeProfile:
    p: int
    values: tuple[Value, ...]
    coprime_to_q: bool
    in_P0: bool
    in_P1hat: bool
    in_Pgt1: bool
    in_Plt1: bool
    alpha_p: Optional[int]
    delta_p: Optional[int]
    search_bound: int

    def as_dict(self) -> dict:
        d = asdict(self)
        d["values"] = [str(v) for v in self.values]
        return d


def prime_profiles(a: Dfao, P: int, E: int = 6, prime: Optional[int] = None) -> list[PrimeProfile]:
    """One profile per prime ``p <= P``; primes dividing q are flagged, no alpha.

    ``prime`` selects the prime divisor of q used for alpha (see
    :func:`autoseq.numtheory.alpha_p_delta`).
    """
    if P < 1 or E < 1:
        raise ValueError("P and E must be >= 1")
    q = a.base
    small = values_upto(a, P)
    profiles = []
    for p in primes_upto(P):
        vals = [small[p]]
        pe = p
        for _ in range(E - 1):
            pe *= p
            vals.append(evaluate(a, pe))
        coprime = math.gcd(p, q) == 1
        alpha = delta = None
        if coprime:
            for e, v in enumerate(vals, start=1):
                if not v.is_zero:
                    al = alpha_p_delta(p, e, q, prime)
                    if alpha is None or al < alpha:
                        alpha, delta = al, e
        profiles.append(PrimeProfile(
            p=p,
            values=tuple(vals),
            coprime_to_q=coprime,
            in_P0=vals[0].is_zero,
            in_P1hat=any(not v.is_zero for v in vals),
            in_Pgt1=any(v.mag > 1 for v in vals),
            in_Plt1=any(0 < v.mag < 1 for v in vals),
            alpha_p=alpha,
            delta_p=delta,
            search_bound=E,
        ))
    return profiles
