"""Constructive steps of the vanishing-branch argument, run on concrete machines.

Each search returns a witness whose certificate can be re-checked from
scratch with :func:`verify_shift_witness`, :func:`verify_geometric_witness`
or plain valuations; nothing here trusts cached state.

The functions take the sequence as given. The argument they mechanize is
about 0/1-valued sequences, so apply
:func:`autoseq.multiplicative.binary_reduction` first when that matters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .dfao import (Dfao, DfaoError, EventuallyPeriodic, KernelInfo, ap_subsequence, equal,
                   evaluate, geometric_probe, kernel, smallest_accepted)
from .multiplicative import PrimeProfile
from .numtheory import crt_solve, is_prime, lte_context, nu
from .values import ONE

__all__ = [
    "GeometricWitness",
    "LteWitness",
    "PatchCoverage",
    "ShiftWitness",
    "alpha_statistics",
    "build_r_A",
    "find_equal_shifts",
    "find_geometric_one",
    "lte_divisibility_witness",
    "unit_patch_products",
    "verify_geometric_witness",
    "verify_shift_witness",
]


def _smallest_m_with_one(a: Dfao, states: Sequence[int], positive: bool = True) -> Optional[int]:
    """Least ``m`` such that reading m from every state in ``states`` outputs 1."""
    delta, out = a.delta, a.out
    m, _ = smallest_accepted(
        tuple(states),
        lambda t, d: tuple(delta[s][d] for s in t),
        lambda t: all(out[s] == ONE for s in t),
        a.base,
        positive=positive,
    )
    return m


@dataclass(frozen=True)
class ShiftWitness:
    """``f(q**i m + r) == f(q**j m + r)`` for all m, with ``A < i < j``."""

    r: int
    A: int
    i: int
    j: int
    m0: Optional[int]
    certificate: dict

    def as_dict(self) -> dict:
        return {"r": self.r, "A": self.A, "i": self.i, "j": self.j, "m0": self.m0,
                "certificate": self.certificate}


def find_equal_shifts(a: Dfao, r: int, A: int, info: Optional[KernelInfo] = None) -> Optional[ShiftWitness]:
    """Two exponents ``A < i < j <= A + s0 + 1`` with equal subsequences at residue r.

    Pairs are tried in ``(j - i, i)`` order. The range holds ``s0 + 1``
    exponents, so pigeonhole over the ``s0`` kernel classes guarantees a hit.
    ``m0`` is the least ``m`` in ``[1, k0]`` with ``f(q**i m + r) == 1``, if any.
    """
    q = a.base
    if q**A <= r:
        raise DfaoError(f"need q**A > r, got q={q}, A={A}, r={r}")
    info = info or kernel(a)
    levels = range(A + 1, A + info.s0 + 2)
    machines = {i: ap_subsequence(a, i, r) for i in levels}
    for gap in range(1, len(levels)):
        for i in levels:
            j = i + gap
            if j not in machines:
                break
            res = equal(machines[i], machines[j])
            if res:
                sub = machines[i]
                m0 = _smallest_m_with_one(sub, [sub.initial])
                if m0 is not None and m0 > info.k0:
                    m0 = None
                return ShiftWitness(r, A, i, j, m0, res.certificate())
    return None


def verify_shift_witness(a: Dfao, w: ShiftWitness) -> bool:
    if not (w.A < w.i < w.j):
        return False
    if not equal(ap_subsequence(a, w.i, w.r), ap_subsequence(a, w.j, w.r)):
        return False
    if w.m0 is not None and evaluate(a, a.base**w.i * w.m0 + w.r) != ONE:
        return False
    return True


@dataclass(frozen=True)
class GeometricWitness:
    """``f(q**(A + C n) m0 + r) == 1`` for every ``n >= 0``."""

    r: int
    A: int
    C: int
    m0: int
    probe: EventuallyPeriodic

    def as_dict(self) -> dict:
        return {"r": self.r, "A": self.A, "C": self.C, "m0": self.m0,
                "preperiod": [str(v) for v in self.probe.preperiod],
                "period": [str(v) for v in self.probe.period]}


def find_geometric_one(a: Dfao, r: int, info: Optional[KernelInfo] = None,
                       extra_levels: Optional[int] = None) -> Optional[GeometricWitness]:
    """Least ``(A, C, m0)`` with ``q**A > r``, ``C <= s0``, ``1 <= m0 <= k0`` and h == 1.

    ``A`` ranges over the smallest admissible value plus ``extra_levels``
    (default ``s0``) more; absence within those bounds returns None.
    """
    if evaluate(a, r) != ONE:
        raise DfaoError(f"need f(r) == 1, got f({r}) = {evaluate(a, r)}")
    q = a.base
    info = info or kernel(a)
    a_min = 0
    while q**a_min <= r:
        a_min += 1
    extra = info.s0 if extra_levels is None else extra_levels
    for A in range(a_min, a_min + extra + 1):
        base_state = a.initial
        digits = []
        x = r
        for _ in range(A):
            x, d = divmod(x, q)
            digits.append(d)
        for d in digits:
            base_state = a.delta[base_state][d]
        for C in range(1, info.s0 + 1):
            orbit, x = [], base_state
            while x not in orbit:
                orbit.append(x)
                for _ in range(C):
                    x = a.delta[x][0]
            m0 = _smallest_m_with_one(a, orbit)
            if m0 is None or m0 > info.k0:
                continue
            probe = geometric_probe(a, A, C, m0, r)
            if probe.all_equal_to(ONE):
                return GeometricWitness(r, A, C, m0, probe)
    return None


def verify_geometric_witness(a: Dfao, w: GeometricWitness) -> bool:
    return geometric_probe(a, w.A, w.C, w.m0, w.r).all_equal_to(ONE)


@dataclass(frozen=True)
class LteWitness:
    n_k: int
    k: int
    gamma: int
    order: int
    method: str  # "scan" or "lift"

    def as_dict(self) -> dict:
        return {"n_k": self.n_k, "k": self.k, "gamma": self.gamma, "ord": self.order,
                "method": self.method}


def lte_divisibility_witness(p: int, q: int, A: int, C: int, m0: int, r: int, k: int) -> LteWitness:
    """Some ``n`` with ``p**k || q**(A + C n) m0 + r``.

    With ``b = q**C``, ``o = ord_p(b)`` and ``p**gamma || b**o - 1``, scan
    ``n`` upward until the valuation exceeds gamma (one period of
    ``b**n mod p**(gamma+1)`` suffices, so the scan is exhaustive). If ``k``
    appears on the way, that ``n`` is returned. Otherwise, from a point with
    valuation ``c > gamma``:

    * shifting ``n`` by ``t p**(c-gamma) o`` with the unique ``t`` in
      ``[1, p)`` solving ``r t B = x / p**c (mod p)``, where
      ``b**(p**(c-gamma) o) = 1 + p**c B``, raises the valuation past c;
    * shifting by ``p**(k-gamma) o`` when the valuation exceeds ``k`` makes it
      exactly ``k``, since ``nu(r (b**(p**(k-gamma) o) - 1)) = k``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if math.gcd(p, q * m0) != 1:
        raise ValueError(f"need gcd(p, q*m0) == 1 (p={p}, q={q}, m0={m0})")
    if A < 0 or C < 1 or r < 0:
        raise ValueError("need A >= 0, C >= 1, r >= 0")
    b = q**C
    ctx = lte_context(p, b)
    o, gamma = ctx.ord, ctx.gamma
    if p == 2 and gamma < 2:
        raise ValueError("LTE at p=2 needs q**C = 1 (mod 4)")
    if k < gamma:
        raise ValueError(f"need k >= gamma = {gamma}")

    # Valuations are capped at k + 1, which is all the construction needs;
    # working mod p**(k+1) keeps huge exponents cheap.
    mod = p ** (k + 1)

    def x(n: int) -> int:
        return (pow(q, A + C * n, mod) * m0 + r) % mod

    def val(n: int) -> int:
        v = x(n)
        return k + 1 if v == 0 else nu(p, v)

    start = None
    for n in range(o * p):
        v = val(n)
        if v == k:
            return LteWitness(n, k, gamma, o, "scan")
        if v > gamma:
            start = n
            break
    if start is None:
        raise ValueError(f"no n with nu_p(q^(A+Cn) m0 + r) > gamma={gamma}; precondition fails")

    n_cur, c = start, val(start)
    while c < k:
        step = p ** (c - gamma) * o
        big_b = (pow(b, step, p ** (c + 1)) - 1) // p**c
        target = (x(n_cur) // p**c) % p
        t = target * pow(r * big_b, -1, p) % p
        n_cur += t * step
        c = val(n_cur)
    if c > k:
        n_cur += p ** (k - gamma) * o
        c = val(n_cur)
    if c != k:  # unreachable when the preconditions hold
        raise ArithmeticError(f"construction ended at valuation {c}, expected {k}")
    return LteWitness(n_cur, k, gamma, o, "lift")


@dataclass(frozen=True)
class RAConstruction:
    r_A: int
    Q: int
    valuations: tuple[int, ...]  # nu(p_s, r_A + s q**A) for s = 1..len

    def as_dict(self) -> dict:
        return {"r_A": self.r_A, "Q": self.Q, "valuations": list(self.valuations)}


def build_r_A(zero_primes: Sequence[int], q: int, A: int) -> RAConstruction:
    """``r_A = -s q**A + p_s (mod p_s**2)`` for each ``s``, solved by CRT.

    Then ``p_s`` exactly divides ``r_A + s q**A`` and ``0 < r_A < Q**2``.
    """
    primes = list(zero_primes)
    if not primes:
        raise ValueError("need at least one prime")
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be distinct")
    for p in primes:
        if not is_prime(p) or p <= q:
            raise ValueError(f"{p} must be a prime greater than q={q}")
    big_q = math.prod(primes)
    if q**A <= 100 * big_q**2:
        raise ValueError(f"need q**A > 100*Q**2 = {100 * big_q ** 2}")
    r_a = crt_solve([((-s * q**A + p) % p**2, p**2) for s, p in enumerate(primes, start=1)])
    if r_a == 0:
        raise ArithmeticError("CRT produced r_A = 0")
    vals = tuple(nu(p, r_a + s * q**A) for s, p in enumerate(primes, start=1))
    assert all(v == 1 for v in vals)
    return RAConstruction(r_a, big_q, vals)


@dataclass(frozen=True)
class PatchCoverage:
    q: int
    alpha: int
    alpha1: int
    covered: bool
    attained: tuple[int, ...]   # targets reached, ascending
    missing: tuple[int, ...]    # targets not reached, ascending

    def as_dict(self) -> dict:
        return {"q": self.q, "alpha": self.alpha, "alpha1": self.alpha1, "covered": self.covered,
                "attained": list(self.attained), "coverage_missing": list(self.missing)}


def unit_patch_products(Y: Sequence[tuple[int, int]], q: int, alpha: int, alpha1: int) -> PatchCoverage:
    """Which ``u = 1 (mod q**alpha)`` modulo ``q**alpha1`` are products of a subset of
    ``{p**delta_p : (p, delta_p) in Y}``."""
    if not 1 <= alpha < alpha1:
        raise ValueError("need 1 <= alpha < alpha1")
    mod = q**alpha1
    for p, d in Y:
        if math.gcd(p, q) != 1:
            raise ValueError(f"{p} is not coprime to q={q}")
        if d < 1:
            raise ValueError("exponents must be >= 1")
    reach = {1 % mod}
    for p, d in Y:
        g = pow(p, d, mod)
        reach |= {x * g % mod for x in reach}
    targets = range(1 % mod, mod, q**alpha)
    attained = tuple(t for t in targets if t in reach)
    missing = tuple(t for t in targets if t not in reach)
    return PatchCoverage(q, alpha, alpha1, not missing, attained, missing)


def alpha_statistics(profiles: Sequence[PrimeProfile]) -> dict[int, int]:
    """Histogram ``{alpha: number of primes with alpha_p == alpha}``."""
    hist: dict[int, int] = {}
    for pr in profiles:
        if pr.alpha_p is not None:
            hist[pr.alpha_p] = hist.get(pr.alpha_p, 0) + 1
    return dict(sorted(hist.items()))
