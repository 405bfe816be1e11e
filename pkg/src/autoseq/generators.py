"""Built-in sequence generators and the ``kind:args`` generator syntax.

Syntax accepted by :func:`parse_generator` (base supplied separately)::

    constant:<value>              constant:1, constant:-i
    periodic:<v0>,<v1>,...        periodic:0,1
    dirichlet:<Q>[:<g>=<v>,...]   dirichlet:5:2=i   (no pairs -> principal)
    thue_morse[:signed]           0/1 by default, +-1 when signed
    rudin_shapiro[:binary]        +-1 by default, 0/1 when binary
    power_indicator:<b>           indicator of {1, b, b**2, ...}
    ap_indicator:<a>,<m>          indicator of n = a (mod m)
    one_indicator                 indicator of n = 1
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .dfao import Dfao, DfaoError, build, constant, from_periodic, minimize
from .values import MINUS_ONE, ONE, ZERO, Value, parse_value

__all__ = [
    "GeneratorSpec",
    "ap_indicator",
    "build_generator",
    "character_values",
    "dirichlet",
    "one_indicator",
    "parse_generator",
    "periodic",
    "power_indicator",
    "rudin_shapiro",
    "thue_morse",
]


def periodic(values: Sequence[Value], q: int = 2) -> Dfao:
    return from_periodic(list(values), q)


def thue_morse(signed: bool = False, q: int = 2) -> Dfao:
    if q != 2:
        raise DfaoError("Thue-Morse is generated in base 2 only")
    even, odd = (ONE, MINUS_ONE) if signed else (ZERO, ONE)
    return build(2, [[0, 1], [1, 0]], [even, odd], names=["even", "odd"])


def rudin_shapiro(signed: bool = True, q: int = 2) -> Dfao:
    """(-1) ** (number of ``11`` blocks in binary), or its 0/1 version."""
    if q != 2:
        raise DfaoError("Rudin-Shapiro is generated in base 2 only")
    plus, minus = (ONE, MINUS_ONE) if signed else (ZERO, ONE)
    # state = (parity of 11-blocks, last bit read)
    states = [(0, 0), (0, 1), (1, 0), (1, 1)]
    idx = {s: i for i, s in enumerate(states)}
    delta = []
    for par, last in states:
        delta.append([idx[(par, 0)], idx[(par ^ last, 1)]])
    out = [plus if par == 0 else minus for par, _ in states]
    return build(2, delta, out, names=[f"p{p}b{b}" for p, b in states])


def _common_root(b: int, q: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``b == g**s`` and ``q == g**t``, g minimal."""
    for g in range(2, min(b, q) + 1):
        s, x = 0, 1
        while x < b:
            x *= g
            s += 1
        if x != b:
            continue
        t, y = 0, 1
        while y < q:
            y *= g
            t += 1
        if y == q:
            return g, s, t
    raise DfaoError(f"powers of {b} are not {q}-automatic ({b} and {q} are multiplicatively independent)")


def power_indicator(b: int, q: int = 2) -> Dfao:
    """Indicator of the powers ``b**k``, k >= 0, in base q."""
    if b < 2:
        raise DfaoError("power_indicator needs b >= 2")
    g, s, t = _common_root(b, q)
    # b**k = d * q**j with a single digit d = g**c, c < t, and s | t*j + c.
    # Before the nonzero digit we count zeros mod s.
    zero_states = list(range(s))
    one, dead = s, s + 1
    delta = []
    for j in zero_states:
        row = [(j + 1) % s]
        for d in range(1, q):
            ok = False
            c, x = 0, 1
            while c < t:
                if x == d and (t * j + c) % s == 0:
                    ok = True
                x *= g
                c += 1
            row.append(one if ok else dead)
        delta.append(row)
    delta.append([one] + [dead] * (q - 1))
    delta.append([dead] * q)
    out = [ZERO] * s + [ONE, ZERO]
    return minimize(build(q, delta, out))


def ap_indicator(a: int, m: int, q: int = 2) -> Dfao:
    if m < 1:
        raise DfaoError("modulus must be >= 1")
    return from_periodic([ONE if n % m == a % m else ZERO for n in range(m)], q)


def one_indicator(q: int = 2) -> Dfao:
    """Indicator of ``n == 1``."""
    # 0: nothing nonzero yet, before any digit; 1: read zeros only;
    # 2: read a single 1 as lowest digit then zeros; 3: dead.
    delta = [[1, 2] + [3] * (q - 2), [1] + [3] * (q - 1), [2] + [3] * (q - 1), [3] * q]
    return minimize(build(q, delta, [ZERO, ZERO, ONE, ZERO]))


def character_values(modulus: int, gens: Sequence[tuple[int, Value]]) -> dict[int, Value]:
    """Close generator assignments to a full character table on the units.

    No assignments means the principal character. Raises :class:`DfaoError`
    if the assignments do not extend to a homomorphism or do not generate
    the whole unit group.
    """
    units = [u for u in range(modulus) if math.gcd(u, modulus) == 1] if modulus > 1 else [0]
    if not gens:
        return {u: ONE for u in units}
    table = {1 % modulus: ONE}
    for g, v in gens:
        if not v.is_unit:
            raise DfaoError(f"character value {v} at {g} is not a root of unity")
        g %= modulus
        if math.gcd(g, modulus) != 1:
            raise DfaoError(f"{g} is not a unit mod {modulus}")
    frontier = [1 % modulus]
    while frontier:
        nxt = []
        for u in frontier:
            for g, v in gens:
                w = (u * g) % modulus
                val = table[u] * v
                if w in table:
                    if table[w] != val:
                        raise DfaoError(f"inconsistent character: two values at {w} mod {modulus}")
                else:
                    table[w] = val
                    nxt.append(w)
        frontier = nxt
    missing = [u for u in units if u not in table]
    if missing:
        raise DfaoError(f"generators do not reach units {missing} mod {modulus}")
    # table[u*g] == table[u]*v_g on every edge, so table is a homomorphism.
    return table


def dirichlet(modulus: int, gens: Sequence[tuple[int, Value]] = (), q: int = 2) -> Dfao:
    """Character mod ``modulus`` given by values on generators, zero off the units."""
    if modulus < 1:
        raise DfaoError("modulus must be >= 1")
    table = character_values(modulus, gens)
    vals = [table.get(n, ZERO) if math.gcd(n, modulus) == 1 else ZERO for n in range(modulus)]
    if modulus == 1:
        vals = [ONE]
    return from_periodic(vals, q)


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    args: tuple = field(default_factory=tuple)
    base: int = 2

    def build(self) -> Dfao:
        return build_generator(self)


def build_generator(spec: GeneratorSpec) -> Dfao:
    k, a, q = spec.kind, spec.args, spec.base
    if k == "constant":
        return constant(a[0], q)
    if k == "periodic":
        return periodic(a, q)
    if k == "dirichlet":
        return dirichlet(a[0], a[1], q)
    if k == "thue_morse":
        return thue_morse(a[0] if a else False, q)
    if k == "rudin_shapiro":
        return rudin_shapiro(a[0] if a else True, q)
    if k == "power_indicator":
        return power_indicator(a[0], q)
    if k == "ap_indicator":
        return ap_indicator(a[0], a[1], q)
    if k == "one_indicator":
        return one_indicator(q)
    raise DfaoError(f"unknown generator kind {k!r}")


def parse_generator(text: str, base: int = 2) -> GeneratorSpec:
    kind, _, rest = text.partition(":")
    kind = kind.strip()
    try:
        if kind == "constant":
            return GeneratorSpec(kind, (parse_value(rest),), base)
        if kind == "periodic":
            return GeneratorSpec(kind, tuple(parse_value(v) for v in rest.split(",")), base)
        if kind == "dirichlet":
            mod, _, pairs = rest.partition(":")
            gens = []
            for item in filter(None, pairs.split(",")):
                g, _, v = item.partition("=")
                gens.append((int(g), parse_value(v)))
            return GeneratorSpec(kind, (int(mod), tuple(gens)), base)
        if kind == "thue_morse":
            if rest not in ("", "signed", "binary"):
                raise ValueError(rest)
            return GeneratorSpec(kind, (rest == "signed",), base)
        if kind == "rudin_shapiro":
            if rest not in ("", "signed", "binary"):
                raise ValueError(rest)
            return GeneratorSpec(kind, (rest != "binary",), base)
        if kind == "power_indicator":
            return GeneratorSpec(kind, (int(rest),), base)
        if kind == "ap_indicator":
            a, m = rest.split(",")
            return GeneratorSpec(kind, (int(a), int(m)), base)
        if kind == "one_indicator" and not rest:
            return GeneratorSpec(kind, (), base)
    except ValueError as exc:
        raise DfaoError(f"bad arguments for generator {kind!r}: {rest!r}") from exc
    raise DfaoError(f"unknown generator {text!r}")
