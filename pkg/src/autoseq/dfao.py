"""Base-q automata with output, read least-significant digit first.

A machine computes ``f(n)`` as the output of the state reached after feeding
the base-q digits of ``n`` (LSB first) from the initial state. Every machine
built here is *validated*: transitions are total, all states are reachable,
states are numbered in first-reachability order (BFS, digits ascending), and
``out[delta[s][0]] == out[s]`` for every state, so leading zeros of ``n``
never change the result.

With that last property, the state reached after reading the ``i`` low
digits of ``r`` computes exactly the kernel subsequence ``n -> f(q**i n + r)``,
which is what makes the kernel, equality and probe computations exact.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Optional, Sequence

from .numtheory import to_digits
from .values import ONE, ZERO, Value

__all__ = [
    "Dfao",
    "DfaoError",
    "EqualityResult",
    "EventuallyPeriodic",
    "KernelInfo",
    "ap_subsequence",
    "certify_kernel",
    "constant",
    "difference_flag",
    "digest",
    "equal",
    "equality_flag",
    "evaluate",
    "from_periodic",
    "geometric_probe",
    "kernel",
    "map_outputs",
    "minimize",
    "multiply",
    "product",
    "smallest_accepted",
    "validate",
    "values_upto",
    "zero_on_ap",
]


class DfaoError(ValueError):
    pass


@dataclass(frozen=True)
class Dfao:
    base: int
    delta: tuple[tuple[int, ...], ...]
    out: tuple[Value, ...]
    initial: int = 0
    names: Optional[tuple[str, ...]] = None

    @property
    def num_states(self) -> int:
        return len(self.out)

    def __call__(self, n: int) -> Value:
        return evaluate(self, n)


def validate(a: Dfao) -> Dfao:
    """Check a machine and return its canonical, reachable-only form."""
    q = a.base
    if not isinstance(q, int) or q < 2:
        raise DfaoError(f"base must be an integer >= 2, got {q!r}")
    n = len(a.delta)
    if n == 0 or len(a.out) != n:
        raise DfaoError("transition table and outputs must cover the same nonempty state set")
    if a.names is not None and len(a.names) != n:
        raise DfaoError("state names do not match the state count")
    if not 0 <= a.initial < n:
        raise DfaoError(f"initial state {a.initial} out of range")
    for s, row in enumerate(a.delta):
        if len(row) != q:
            raise DfaoError(f"state {_name(a, s)} has {len(row)} transitions, expected {q}")
        for d, t in enumerate(row):
            if not (isinstance(t, int) and 0 <= t < n):
                raise DfaoError(f"state {_name(a, s)} digit {d}: bad target {t!r}")
        if not isinstance(a.out[s], Value):
            raise DfaoError(f"state {_name(a, s)} has non-Value output {a.out[s]!r}")

    order = [a.initial]
    index = {a.initial: 0}
    for s in order:
        for t in a.delta[s]:
            if t not in index:
                index[t] = len(order)
                order.append(t)
    for s in order:
        if a.out[a.delta[s][0]] != a.out[s]:
            raise DfaoError(
                f"zero-padding inconsistency at state {_name(a, s)}: "
                f"output {a.out[s]} but reading 0 gives {a.out[a.delta[s][0]]}"
            )
    delta = tuple(tuple(index[t] for t in a.delta[s]) for s in order)
    out = tuple(a.out[s] for s in order)
    names = None if a.names is None else tuple(a.names[s] for s in order)
    return Dfao(q, delta, out, 0, names)


def _name(a: Dfao, s: int) -> str:
    return a.names[s] if a.names is not None else str(s)


def build(base: int, delta: Iterable[Iterable[int]], out: Iterable[Value],
          initial: int = 0, names: Optional[Iterable[str]] = None) -> Dfao:
    return validate(Dfao(base, tuple(tuple(r) for r in delta), tuple(out), initial,
                         None if names is None else tuple(names)))


def constant(value: Value, q: int) -> Dfao:
    return build(q, [[0] * q], [value])


def run(a: Dfao, state: int, digits: Iterable[int]) -> int:
    delta = a.delta
    for d in digits:
        state = delta[state][d]
    return state


def evaluate(a: Dfao, n: int) -> Value:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return a.out[run(a, a.initial, to_digits(n, a.base))]


def values_upto(a: Dfao, n_max: int) -> list[Value]:
    """``[f(0), ..., f(n_max)]`` without per-number digit conversion."""
    q = a.base
    states = [a.initial]  # states for [0, q**k) read with exactly k digits
    while len(states) <= n_max:
        states = [a.delta[s][d] for d in range(q) for s in states]
    return [a.out[s] for s in states[: n_max + 1]]


def minimize(a: Dfao) -> Dfao:
    """Moore partition refinement on output-labelled states."""
    n = a.num_states
    labels: dict[Value, int] = {}
    cls = [labels.setdefault(v, len(labels)) for v in a.out]
    count = len(labels)
    while True:
        sigs: dict[tuple[int, ...], int] = {}
        refined = [sigs.setdefault((cls[s], *(cls[t] for t in a.delta[s])), len(sigs))
                   for s in range(n)]
        if len(sigs) == count:
            break
        cls, count = refined, len(sigs)
    rep = {}
    for s in range(n):
        rep.setdefault(cls[s], s)
    delta = [tuple(cls[t] for t in a.delta[rep[c]]) for c in range(count)]
    out = [a.out[rep[c]] for c in range(count)]
    return build(a.base, delta, out, cls[a.initial])


def map_outputs(a: Dfao, fn: Callable[[Value], Value]) -> Dfao:
    return build(a.base, a.delta, [fn(v) for v in a.out], a.initial, a.names)


def multiply(x: Value, y: Value) -> Value:
    return x * y


def difference_flag(x: Value, y: Value) -> Value:
    """0 where the values agree, 1 where they differ."""
    return ZERO if x == y else ONE


def equality_flag(x: Value, y: Value) -> Value:
    return ONE if x == y else ZERO


def product(a: Dfao, b: Dfao, op: Callable[[Value, Value], Value]) -> Dfao:
    """Machine for ``n -> op(a(n), b(n))``."""
    if a.base != b.base:
        raise DfaoError(f"base mismatch: {a.base} vs {b.base}")
    q = a.base
    start = (a.initial, b.initial)
    index = {start: 0}
    order = [start]
    delta = []
    for s, t in order:
        row = []
        for d in range(q):
            nxt = (a.delta[s][d], b.delta[t][d])
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        delta.append(row)
    return build(q, delta, [op(a.out[s], b.out[t]) for s, t in order])


def smallest_accepted(start: Hashable, step: Callable[[Hashable, int], Hashable],
                      accept: Callable[[Hashable], bool], q: int,
                      positive: bool = False) -> tuple[Optional[int], int]:
    """Smallest ``n`` whose digit string leads ``start`` to an accepting node.

    ``step`` is a deterministic digit transition on arbitrary hashable nodes and
    ``accept`` must be insensitive to leading zeros (true for any predicate on
    outputs of validated machines). With ``positive`` only ``n >= 1`` counts.
    Returns ``(n or None, number of nodes explored)``.
    """
    if not positive and accept(start):
        return 0, 1
    # Nodes carry a flag recording whether a nonzero digit has been read.
    root = (start, False)
    dist = {root: 0}
    frontier = [root]
    target = None
    while frontier and target is None:
        nxt = []
        for node, nz in frontier:
            for d in range(q):
                child = (step(node, d), nz or d != 0)
                if child not in dist:
                    dist[child] = dist[(node, nz)] + 1
                    if child[1] and accept(child[0]):
                        target = dist[child]
                    nxt.append(child)
        frontier = nxt
    if target is None:
        return None, len(dist)

    layer = {root: 0}
    weight = 1
    for _ in range(target):
        nxt_layer: dict = {}
        for (node, nz), val in layer.items():
            for d in range(q):
                child = (step(node, d), nz or d != 0)
                v = val + d * weight
                if v < nxt_layer.get(child, v + 1):
                    nxt_layer[child] = v
        layer = nxt_layer
        weight *= q
    best = min(v for (node, nz), v in layer.items() if nz and accept(node))
    return best, len(dist)


@dataclass(frozen=True)
class EqualityResult:
    """Outcome of :func:`equal`. Truthy iff the sequences agree everywhere."""

    equal: bool
    witness: Optional[int]
    pairs_explored: int
    left: str
    right: str

    def __bool__(self) -> bool:
        return self.equal

    def certificate(self) -> dict:
        return {"kind": "dfao-product-equality", "left": self.left, "right": self.right,
                "pairs_explored": self.pairs_explored}


def equal(a: Dfao, b: Dfao) -> EqualityResult:
    """Decide ``a(n) == b(n)`` for all n; otherwise return the smallest witness."""
    if a.base != b.base:
        raise DfaoError(f"base mismatch: {a.base} vs {b.base}")
    da, db, oa, ob = a.delta, b.delta, a.out, b.out
    n, explored = smallest_accepted(
        (a.initial, b.initial),
        lambda st, d: (da[st[0]][d], db[st[1]][d]),
        lambda st: oa[st[0]] != ob[st[1]],
        a.base,
    )
    return EqualityResult(n is None, n, explored, digest(a), digest(b))


def _check_ap(a: Dfao, i: int, r: int) -> None:
    if i < 0 or not 0 <= r < a.base**i:
        raise DfaoError(f"need 0 <= r < q**i, got i={i}, r={r}")


def _state_after(a: Dfao, i: int, r: int) -> int:
    _check_ap(a, i, r)
    digits = to_digits(r, a.base) if r else []
    return run(a, a.initial, digits + [0] * (i - len(digits)))


def ap_subsequence(a: Dfao, i: int, r: int) -> Dfao:
    """Machine for ``n -> f(q**i * n + r)``."""
    s = _state_after(a, i, r)
    return validate(Dfao(a.base, a.delta, a.out, s, a.names))


def zero_on_ap(a: Dfao, i: int, r: int, start: int = 0) -> bool:
    """Exact test of ``f(q**i n + r) == 0`` for all ``n >= start`` (start 0 or 1)."""
    if start not in (0, 1):
        raise ValueError("start must be 0 or 1")
    s = _state_after(a, i, r)
    delta, out = a.delta, a.out
    found, _ = smallest_accepted(s, lambda t, d: delta[t][d], lambda t: not out[t].is_zero,
                                 a.base, positive=start == 1)
    return found is None


@dataclass(frozen=True)
class KernelInfo:
    """The q-kernel of a sequence.

    ``representatives`` lists one ``(i, r)`` per class of subsequences
    ``f(q**i n + r)`` with ``i >= 1``, each the first in (i, r) order; ``s0``
    counts them and ``k0 = q**s0``. ``s0_with_zero`` also counts the class of
    ``f`` itself (``i = 0``).
    """

    base: int
    s0: int
    representatives: tuple[tuple[int, int], ...]
    k0: int
    s0_with_zero: int


def kernel(a: Dfao) -> KernelInfo:
    m = minimize(a)
    q = m.base
    reach = set()
    stack = list(m.delta[m.initial])
    while stack:
        s = stack.pop()
        if s not in reach:
            reach.add(s)
            stack.extend(m.delta[s])
    first: dict[int, tuple[int, int]] = {}
    layer = {m.initial: 0}
    i, weight = 0, 1
    while len(first) < len(reach):
        nxt: dict[int, int] = {}
        for s, r in layer.items():
            for d in range(q):
                t = m.delta[s][d]
                v = r + d * weight
                if v < nxt.get(t, v + 1):
                    nxt[t] = v
        i += 1
        weight *= q
        layer = nxt
        for t, r in layer.items():
            first.setdefault(t, (i, r))
    reps = tuple(sorted(first.values()))
    s0 = len(reps)
    return KernelInfo(q, s0, reps, q**s0, len(reach | {m.initial}))


def certify_kernel(a: Dfao, info: KernelInfo) -> bool:
    """Re-check a kernel by equality decisions alone.

    Representatives must be pairwise distinct, and every one-digit extension
    of a representative must equal some representative.
    """
    q = a.base
    machines = [ap_subsequence(a, i, r) for i, r in info.representatives]
    for x in range(len(machines)):
        for y in range(x + 1, len(machines)):
            if equal(machines[x], machines[y]):
                return False
    for i, r in info.representatives:
        for d in range(q):
            ext = ap_subsequence(a, i + 1, r + d * q**i)
            if not any(equal(ext, m) for m in machines):
                return False
    return info.s0 == len(machines) and info.k0 == q**info.s0


@dataclass(frozen=True)
class EventuallyPeriodic:
    """``preperiod`` followed by ``period`` repeated forever, both minimal."""

    preperiod: tuple[Value, ...]
    period: tuple[Value, ...]

    def __getitem__(self, n: int) -> Value:
        if n < len(self.preperiod):
            return self.preperiod[n]
        return self.period[(n - len(self.preperiod)) % len(self.period)]

    def all_equal_to(self, v: Value) -> bool:
        return all(x == v for x in self.preperiod + self.period)


def compress_periodic(seq: Sequence[Value], mu: int, lam: int) -> EventuallyPeriodic:
    """Minimal description of ``seq`` known to satisfy seq[n+lam] == seq[n] for n >= mu.

    ``seq`` must hold at least ``mu + lam`` entries.
    """
    def h(n: int) -> Value:
        return seq[n] if n < mu + lam else seq[mu + (n - mu) % lam]

    per = next(p for p in range(1, lam + 1)
               if lam % p == 0 and all(h(n) == h(n + p) for n in range(mu, mu + lam)))
    start = mu
    while start > 0 and h(start - 1) == h(start - 1 + per):
        start -= 1
    return EventuallyPeriodic(tuple(h(n) for n in range(start)),
                              tuple(h(n) for n in range(start, start + per)))


def geometric_probe(a: Dfao, A: int, C: int, m0: int, r: int) -> EventuallyPeriodic:
    """Exact description of ``n -> f(q**(A + C*n) * m0 + r)``."""
    q = a.base
    if A < 0 or C < 1 or m0 < 0:
        raise DfaoError("need A >= 0, C >= 1, m0 >= 0")
    if not 0 <= r < q**A:
        raise DfaoError(f"need 0 <= r < q**A, got r={r}, A={A}")
    x = _state_after(a, A, r)
    m_digits = to_digits(m0, q)
    seen: dict[int, int] = {}
    orbit = []
    while x not in seen:
        seen[x] = len(orbit)
        orbit.append(x)
        for _ in range(C):
            x = a.delta[x][0]
    mu = seen[x]
    values = [a.out[run(a, s, m_digits)] for s in orbit]
    return compress_periodic(values, mu, len(orbit) - mu)


def from_periodic(values: Sequence[Value], q: int) -> Dfao:
    """Minimal machine for ``n -> values[n % len(values)]``.

    States track ``(n mod Q, q**i mod Q)`` for the digits read so far.
    """
    if not values:
        raise DfaoError("periodic pattern must be nonempty")
    if q < 2:
        raise DfaoError("base must be >= 2")
    big_q = len(values)
    start = (0, 1 % big_q)
    index = {start: 0}
    order = [start]
    delta = []
    for v, w in order:
        row = []
        for d in range(q):
            nxt = ((v + d * w) % big_q, (w * q) % big_q)
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        delta.append(row)
    return minimize(build(q, delta, [values[v] for v, _ in order]))


def to_canonical_dict(a: Dfao) -> dict:
    return {
        "base": a.base,
        "initial": a.initial,
        "delta": [list(r) for r in a.delta],
        "out": [v.to_json() for v in a.out],
    }


def digest(a: Dfao) -> str:
    """Short content hash identifying a machine in certificates."""
    blob = json.dumps(to_canonical_dict(a), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]
