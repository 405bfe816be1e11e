"""Character-or-vanishing classification of multiplicative automatic sequences.

A multiplicative automatic ``f`` either agrees with a Dirichlet character on
all ``n`` coprime to some modulus, or ``f(p) = 0`` for every large prime.
:func:`classify` decides which, in that order:

1. multiplicativity up to ``N`` (a failing pair ends the analysis);
2. character search: the smallest ``Q <= Qmax`` whose sampled table is a
   homomorphism on the units and which passes an *exact* automaton equality
   check ``f * [gcd(n, Q) = 1] == chi``;
3. prime scan to ``P``: vanishing is reported when no prime in
   ``(P/4, P]`` has ``f(p) != 0``;
4. otherwise inconclusive.

Only the character branch is a proof; the vanishing branch is finite evidence.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .dfao import Dfao, EqualityResult, equal, evaluate, from_periodic, kernel, multiply, product, values_upto
from .multiplicative import check_multiplicative
from .numtheory import euler_phi, primes_upto
from .values import ONE, ZERO, Value

__all__ = [
    "CharacterTable",
    "Classification",
    "VanishingReport",
    "classify",
    "coprime_indicator",
    "default_qmax",
    "enumerate_characters",
    "match_character",
    "vanishing_check",
    "verify_character",
]

SCHEMA_VERSION = 1
QMAX_CAP = 10**4
LIST_LIMIT = 50


@dataclass(frozen=True)
class CharacterTable:
    Q: int
    values: tuple[tuple[int, Value], ...]  # (unit, value), units ascending

    @classmethod
    def from_dict(cls, Q: int, table: dict[int, Value]) -> "CharacterTable":
        return cls(Q, tuple(sorted(table.items())))

    def as_map(self) -> dict[int, Value]:
        return dict(self.values)

    def __call__(self, n: int) -> Value:
        return self.as_map().get(n % self.Q, ZERO) if math.gcd(n, self.Q) == 1 else ZERO

    def extended(self) -> list[Value]:
        """Values on ``0..Q-1`` with zeros off the units."""
        table = self.as_map()
        return [table.get(n % self.Q, ZERO) if math.gcd(n, self.Q) == 1 else ZERO
                for n in range(self.Q)]

    def is_homomorphism(self) -> bool:
        table = self.as_map()
        if table.get(1 % self.Q) != ONE or any(not v.is_unit for v in table.values()):
            return False
        units = [u for u in range(self.Q) if math.gcd(u, self.Q) == 1]
        if sorted(table) != units:
            return False
        return all(table[(u * w) % self.Q] == table[u] * table[w] for u in units for w in units)

    def phases(self) -> dict[str, str]:
        return {str(u): str(v.phase) for u, v in self.values}


def coprime_indicator(Q: int, q: int) -> Dfao:
    return from_periodic([ONE if math.gcd(n, Q) == 1 else ZERO for n in range(Q)], q)


def verify_character(a: Dfao, table: CharacterTable) -> EqualityResult:
    """Exact check that ``f(n) == chi(n)`` for every ``n`` coprime to ``Q``."""
    masked = product(a, coprime_indicator(table.Q, a.base), multiply)
    return equal(masked, from_periodic(table.extended(), a.base))


def _sampled_table(vals: list[Value], Q: int) -> Optional[dict[int, Value]]:
    table: dict[int, Value] = {}
    for n in range(1, 3 * Q + 1):
        if math.gcd(n, Q) != 1:
            continue
        v = vals[n]
        if not v.is_unit:
            return None
        u = n % Q
        if table.setdefault(u, v) != v:
            return None
    return table


def match_character(a: Dfao, Qmax: int) -> Optional[tuple[CharacterTable, EqualityResult]]:
    """Smallest ``Q <= Qmax`` with an exactly verified character, or None."""
    vals = values_upto(a, 3 * Qmax)
    for Q in range(1, Qmax + 1):
        table = _sampled_table(vals, Q)
        if table is None:
            continue
        ct = CharacterTable.from_dict(Q, table)
        if not ct.is_homomorphism():
            continue
        result = verify_character(a, ct)
        if result:
            return ct, result
    return None


@dataclass(frozen=True)
class VanishingReport:
    exceptional: tuple[int, ...]  # primes p <= checked_to with f(p) != 0
    checked_to: int
    p1hat: tuple[int, ...]  # primes with f(p**e) != 0 for some e <= E
    E: int

    @property
    def stable(self) -> bool:
        """No exceptional prime in ``(checked_to/4, checked_to]``."""
        return all(4 * p <= self.checked_to for p in self.exceptional)


def vanishing_check(a: Dfao, P: int, E: int = 6) -> VanishingReport:
    vals = values_upto(a, P)
    exceptional, p1hat = [], []
    for p in primes_upto(P):
        if not vals[p].is_zero:
            exceptional.append(p)
            p1hat.append(p)
            continue
        pe = p
        for _ in range(E - 1):
            pe *= p
            if not evaluate(a, pe).is_zero:
                p1hat.append(p)
                break
    return VanishingReport(tuple(exceptional), P, tuple(p1hat), E)


def default_qmax(a: Dfao) -> int:
    """``2 * q**s0 * k0`` capped at 10**4 (a heuristic, not a proven bound)."""
    info = kernel(a)
    return min(2 * a.base**info.s0 * info.k0, QMAX_CAP)


@dataclass(frozen=True)
class Classification:
    kind: str
    params: dict
    character: Optional[CharacterTable] = None
    certificate: Optional[dict] = None
    witness: Optional[tuple[int, int]] = None
    vanishing: Optional[VanishingReport] = None
    reason: Optional[str] = None
    evidence: dict = field(default_factory=dict)

    @property
    def Q(self) -> Optional[int]:
        return self.character.Q if self.character else None

    @property
    def exceptional(self) -> Optional[tuple[int, ...]]:
        return self.vanishing.exceptional if self.vanishing else None

    @property
    def conclusive(self) -> bool:
        return self.kind in ("Character", "VanishingOnLargePrimes")

    def as_dict(self) -> dict:
        doc: dict = {"schema_version": SCHEMA_VERSION, "kind": self.kind, "params": self.params}
        if self.character is not None:
            doc["Q"] = self.character.Q
            doc["table"] = self.character.phases()
            doc["certificate"] = self.certificate
        if self.witness is not None:
            doc["witness"] = list(self.witness)
        if self.vanishing is not None:
            v = self.vanishing
            doc["checked_to"] = v.checked_to
            doc["exceptional"] = list(v.exceptional[:LIST_LIMIT])
            doc["exceptional_count"] = len(v.exceptional)
            doc["stable"] = v.stable
            doc["p1hat"] = list(v.p1hat[:LIST_LIMIT])
            doc["p1hat_count"] = len(v.p1hat)
            doc["p1hat_exponent_bound"] = v.E
        if self.reason is not None:
            doc["reason"] = self.reason
        if self.evidence:
            doc["evidence"] = self.evidence
        return doc


def classify(a: Dfao, N: int = 10**4, P: int = 10**5, Qmax: Optional[int] = None,
             E: int = 6) -> Classification:
    heuristic = Qmax is None
    if Qmax is None:
        Qmax = default_qmax(a)
    params = {"N": N, "P": P, "Qmax": Qmax, "E": E, "qmax_heuristic": heuristic, "base": a.base}

    mult = check_multiplicative(a, N)
    evidence = {"multiplicativity": mult.as_dict()}
    if not mult.ok:
        return Classification("NotMultiplicative", params, witness=mult.witness, evidence=evidence)

    hit = match_character(a, Qmax)
    if hit is not None:
        table, result = hit
        return Classification("Character", params, character=table,
                              certificate=result.certificate(), evidence=evidence)

    van = vanishing_check(a, P, E)
    if van.stable:
        return Classification("VanishingOnLargePrimes", params, vanishing=van, evidence=evidence)
    evidence["character_search"] = f"no character with modulus <= {Qmax}"
    last = van.exceptional[-1] if van.exceptional else None
    return Classification(
        "Inconclusive", params, vanishing=van,
        reason=f"no verified character up to Q={Qmax} and exceptional prime {last} lies in ({P // 4}, {P}]",
        evidence=evidence,
    )


def enumerate_characters(Q: int) -> list[CharacterTable]:
    """All Dirichlet characters mod ``Q``, by brute-force homomorphism search."""
    units = [u for u in range(Q) if math.gcd(u, Q) == 1] if Q > 1 else [0]
    gens: list[int] = []
    span = {1 % Q}
    for u in units:
        if u in span:
            continue
        gens.append(u)
        frontier = list(span)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = (x * g) % Q
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
    exponent = 1
    for u in units:
        order, x = 1, u
        while x != 1 % Q:
            x = (x * u) % Q
            order += 1
        exponent = exponent * order // math.gcd(exponent, order)
    found = []
    for ks in itertools.product(range(exponent), repeat=len(gens)):
        table = {1 % Q: ONE}
        ok = True
        frontier = [1 % Q]
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, k in zip(gens, ks):
                    y = (x * g) % Q
                    v = table[x] * Value(Fraction(1), Fraction(k, exponent))
                    if y in table:
                        if table[y] != v:
                            ok = False
                            break
                    else:
                        table[y] = v
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok:
            found.append(CharacterTable.from_dict(Q, table))
    assert len(found) == euler_phi(Q)
    return found
