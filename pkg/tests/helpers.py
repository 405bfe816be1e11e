"""Shared test helpers: random validated machines and brute-force oracles."""
from __future__ import annotations

import random

from autoseq.dfao import Dfao, build
from autoseq.values import MINUS_ONE, ONE, ZERO, Value

SIGNED = (ONE, MINUS_ONE, Value.root(1, 4), ZERO)
BINARY = (ZERO, ONE)


def random_dfao(rng: random.Random, max_states: int = 6, base: int = 2,
                alphabet=BINARY) -> Dfao:
    """Random machine satisfying zero-padding consistency.

    Outputs are constant on the components of the digit-0 graph, which is
    exactly what the consistency invariant requires.
    """
    n = rng.randint(1, max_states)
    delta = [[rng.randrange(n) for _ in range(base)] for _ in range(n)]
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in range(n):
        parent[find(s)] = find(delta[s][0])
    colour = {}
    out = []
    for s in range(n):
        root = find(s)
        if root not in colour:
            colour[root] = rng.choice(alphabet)
        out.append(colour[root])
    return build(base, delta, out, rng.randrange(n))


def brute_eval(a: Dfao, n: int) -> Value:
    """Evaluate by explicit digit extraction, independent of the library path."""
    s = a.initial
    while True:
        n, d = divmod(n, a.base)
        s = a.delta[s][d]
        if n == 0:
            return a.out[s]


# Built-in generators exercised by corpus-wide tests: (expression, base).
CORPUS = (
    ("constant:1", 2),
    ("constant:0", 2),
    ("periodic:0,1", 2),
    ("ap_indicator:1,2", 3),
    ("dirichlet:5:2=i", 2),
    ("dirichlet:5:2=i", 3),
    ("dirichlet:3:2=-1", 2),
    ("dirichlet:4:3=-1", 3),
    ("dirichlet:7:3=e(1/3)", 2),
    ("thue_morse:signed", 2),
    ("thue_morse", 2),
    ("rudin_shapiro", 2),
    ("rudin_shapiro:binary", 2),
    ("power_indicator:2", 2),
    ("power_indicator:3", 3),
    ("power_indicator:4", 2),
    ("one_indicator", 2),
    ("one_indicator", 3),
)
