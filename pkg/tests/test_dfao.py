import random

import pytest

from autoseq import dfao as D
from autoseq.dfao import Dfao, DfaoError
from autoseq.generators import dirichlet, power_indicator, thue_morse
from autoseq.numtheory import to_digits
from autoseq.values import MINUS_ONE, ONE, ZERO, Value

from helpers import SIGNED, brute_eval, random_dfao

I = Value.root(1, 4)


def const1(q=2):
    return D.constant(ONE, q)


def test_validate_examples():
    assert D.validate(Dfao(2, ((0, 0),), (ONE,))).num_states == 1
    with pytest.raises(DfaoError, match="zero-padding"):
        D.validate(Dfao(2, ((1, 1), (1, 1)), (ONE, ZERO)))
    tm = D.validate(Dfao(2, ((0, 1), (1, 0)), (ONE, MINUS_ONE)))
    assert tm.num_states == 2


def test_validate_prunes_and_reports_missing_transitions():
    a = D.validate(Dfao(2, ((0, 0), (1, 0)), (ONE, ZERO)))
    assert a.num_states == 1
    with pytest.raises(DfaoError, match="transitions"):
        D.validate(Dfao(2, ((0,),), (ONE,)))


def test_canonical_numbering():
    a = D.validate(Dfao(2, ((2, 0), (1, 1), (2, 1)), (ONE, ZERO, ONE), initial=2))
    assert a.initial == 0
    assert a.delta == ((0, 1), (1, 1))


def test_eval_examples():
    assert D.evaluate(const1(), 123) == ONE
    tm = thue_morse(signed=True)
    assert D.evaluate(tm, 6) == ONE
    p2 = power_indicator(2)
    assert D.evaluate(p2, 8) == ONE
    assert D.evaluate(p2, 6) == ZERO


def test_eval_ignores_appended_zero_digits():
    rng = random.Random(3)
    for _ in range(30):
        a = random_dfao(rng, 6, rng.choice([2, 3]), SIGNED)
        for n in range(0, 10**4, 37):
            digits = to_digits(n, a.base)
            expected = D.evaluate(a, n)
            for pad in range(1, 4):
                assert a.out[D.run(a, a.initial, digits + [0] * pad)] == expected


def test_values_upto_matches_eval():
    rng = random.Random(4)
    for _ in range(20):
        a = random_dfao(rng, 5, rng.choice([2, 3, 5]), SIGNED)
        assert D.values_upto(a, 300) == [brute_eval(a, n) for n in range(301)]


def test_minimize_examples():
    dup = D.build(2, [[1, 2], [2, 0], [0, 1]], [ONE, ONE, ONE])
    assert D.minimize(dup).num_states == 1
    split = D.build(2, [[0, 1], [1, 2], [2, 1]], [ONE, MINUS_ONE, MINUS_ONE])
    assert split.num_states == 3
    m = D.minimize(split)
    assert m.num_states == 2
    # 1 at n = 0 only
    assert D.equal(m, D.build(2, [[0, 1], [1, 1]], [ONE, MINUS_ONE]))


def test_minimize_semantics_and_idempotence():
    rng = random.Random(5)
    for _ in range(100):
        a = random_dfao(rng, 6, rng.choice([2, 3]), SIGNED)
        m = D.minimize(a)
        assert D.equal(a, m)
        assert D.minimize(m) == m
        assert m.num_states <= a.num_states


def test_product_examples():
    tm = thue_morse(signed=True)
    assert D.equal(D.product(tm, const1(), D.multiply), tm)
    assert D.equal(D.product(tm, tm, D.difference_flag), D.constant(ZERO, 2))
    assert D.equal(D.product(tm, tm, D.multiply), const1())
    with pytest.raises(DfaoError):
        D.product(tm, const1(3), D.multiply)


def test_product_pointwise():
    rng = random.Random(6)
    for _ in range(30):
        q = rng.choice([2, 3])
        a, b = random_dfao(rng, 4, q, SIGNED), random_dfao(rng, 4, q, SIGNED)
        p = D.product(a, b, D.multiply)
        for n in range(200):
            assert brute_eval(p, n) == brute_eval(a, n) * brute_eval(b, n)


def test_equal_examples():
    tm = thue_morse(signed=True)
    assert D.equal(tm, tm)
    res = D.equal(const1(), power_indicator(2))
    assert not res
    assert brute_eval(const1(), res.witness) != brute_eval(power_indicator(2), res.witness)
    assert res.witness == 0


def test_equal_witness_is_smallest():
    rng = random.Random(7)
    checked = 0
    for _ in range(300):
        q = rng.choice([2, 3])
        size = 3 if q == 2 else 2
        a, b = random_dfao(rng, size, q), random_dfao(rng, size, q)
        res = D.equal(a, b)
        bound = q ** (a.num_states * b.num_states + 1)
        va, vb = D.values_upto(a, bound), D.values_upto(b, bound)
        first = next((n for n in range(bound) if va[n] != vb[n]), None)
        assert res.witness == first
        assert res.equal == (first is None)
        checked += first is not None
    assert checked > 100


def test_ap_subsequence_examples():
    tm = thue_morse(signed=True)
    assert D.equal(D.ap_subsequence(tm, 1, 0), tm)
    neg = D.map_outputs(tm, lambda v: v * MINUS_ONE)
    assert D.equal(D.ap_subsequence(tm, 1, 1), neg)
    rng = random.Random(8)
    for _ in range(20):
        a = random_dfao(rng, 5)
        twice = D.ap_subsequence(D.ap_subsequence(a, 1, 0), 1, 0)
        assert D.equal(D.ap_subsequence(a, 2, 0), twice)
    with pytest.raises(DfaoError):
        D.ap_subsequence(tm, 2, 4)


def test_ap_subsequence_correctness():
    rng = random.Random(9)
    for _ in range(20):
        a = random_dfao(rng, 6, rng.choice([2, 3]), SIGNED)
        q = a.base
        for i in range(3):
            for r in range(q**i):
                sub = D.ap_subsequence(a, i, r)
                assert all(brute_eval(sub, n) == brute_eval(a, q**i * n + r) for n in range(0, 1000, 7))


def _brute_kernel_classes(a, max_i=6, length=256):
    q = a.base
    vals = [brute_eval(a, n) for n in range(q**max_i * length)]
    return {tuple(vals[q**i * n + r] for n in range(length))
            for i in range(1, max_i + 1) for r in range(q**i)}


def test_kernel_examples():
    info = D.kernel(const1())
    assert (info.s0, info.representatives, info.k0) == (1, ((1, 0),), 2)
    tm = thue_morse()
    info = D.kernel(tm)
    assert len(_brute_kernel_classes(tm)) == 2
    assert (info.s0, info.k0) == (2, 4)
    assert D.certify_kernel(tm, info)
    p2 = power_indicator(2)
    assert D.kernel(p2).s0 == D.minimize(p2).num_states == 3


def test_kernel_matches_brute_force_and_is_closed():
    rng = random.Random(10)
    for _ in range(40):
        a = random_dfao(rng, 5, 2, SIGNED)
        info = D.kernel(a)
        assert info.s0 == len(_brute_kernel_classes(a, max_i=7, length=200))
        assert D.certify_kernel(a, info)
        # representatives are the first (i, r) of their class
        vals = D.values_upto(a, 2**7 * 200)
        seen = {}
        for i in range(1, 8):
            for r in range(2**i):
                key = tuple(vals[2**i * n + r] for n in range(200))
                seen.setdefault(key, (i, r))
        assert sorted(seen.values()) == list(info.representatives)


def test_zero_on_ap_examples():
    zero = D.constant(ZERO, 2)
    assert D.zero_on_ap(zero, 3, 5)
    assert not D.zero_on_ap(thue_morse(), 1, 0) or D.evaluate(thue_morse(), 2) == ZERO
    assert not D.zero_on_ap(thue_morse(signed=True), 1, 0)


@pytest.mark.parametrize("start", [0, 1])
def test_k0_soundness(start):
    rng = random.Random(11 + start)
    for _ in range(150):
        a = random_dfao(rng, 6, rng.choice([2, 3]))
        info = D.kernel(a)
        q = a.base
        for i in range(4):
            for r in range(q**i):
                prefix = all(brute_eval(a, q**i * n + r).is_zero for n in range(start, info.k0 + 1))
                exact = D.zero_on_ap(a, i, r, start)
                assert prefix == exact


def test_geometric_probe_examples():
    ep = D.geometric_probe(const1(), 2, 1, 1, 0)
    assert (ep.preperiod, ep.period) == ((), (ONE,))
    ep = D.geometric_probe(power_indicator(2), 1, 1, 1, 0)
    assert ep.period == (ONE,) and ep.preperiod == ()
    assert all(D.evaluate(power_indicator(2), 2 ** (1 + n)) == ONE for n in range(11))
    tm = thue_morse(signed=True)
    ep = D.geometric_probe(tm, 1, 1, 1, 1)
    assert all(ep[n] == brute_eval(tm, 2 ** (1 + n) + 1) for n in range(21))
    with pytest.raises(DfaoError):
        D.geometric_probe(tm, 1, 1, 1, 2)


def test_geometric_probe_matches_direct_eval():
    rng = random.Random(12)
    for _ in range(60):
        a = random_dfao(rng, 6, rng.choice([2, 3]), SIGNED)
        q = a.base
        A, C, m0 = rng.randint(0, 3), rng.randint(1, 3), rng.randint(0, 20)
        r = rng.randrange(q**A)
        ep = D.geometric_probe(a, A, C, m0, r)
        assert len(ep.preperiod) + len(ep.period) <= a.num_states
        horizon = len(ep.preperiod) + 3 * len(ep.period) + 5
        direct = [brute_eval(a, q ** (A + C * n) * m0 + r) for n in range(horizon)]
        assert [ep[n] for n in range(horizon)] == direct
        # minimality of the description
        per = len(ep.period)
        assert all(per % d or any(ep.period[k] != ep.period[(k + d) % per] for k in range(per))
                   for d in range(1, per))
        if ep.preperiod:
            assert ep.preperiod[-1] != ep.period[-1]


def test_from_periodic_examples():
    assert D.from_periodic([ONE], 2).num_states == 1
    par = D.from_periodic([ZERO, ONE], 2)
    assert par.num_states == 3  # the first digit read settles parity
    assert (D.evaluate(par, 5), D.evaluate(par, 4)) == (ONE, ZERO)
    chi = [ZERO, ONE, I, MINUS_ONE * I, MINUS_ONE]
    m = D.from_periodic(chi, 2)
    assert D.evaluate(m, 7) == I
    assert all(D.evaluate(m, n) == chi[n % 5] for n in range(101))
    with pytest.raises(DfaoError):
        D.from_periodic([], 2)


@pytest.mark.parametrize("q", [2, 3, 6, 10])
def test_from_periodic_random(q):
    rng = random.Random(q)
    for _ in range(15):
        pattern = [rng.choice(SIGNED) for _ in range(rng.randint(1, 14))]
        m = D.from_periodic(pattern, q)
        assert all(brute_eval(m, n) == pattern[n % len(pattern)] for n in range(500))


def test_digest_stable_and_discriminating():
    assert D.digest(thue_morse()) == D.digest(D.minimize(thue_morse()))
    assert D.digest(thue_morse()) != D.digest(thue_morse(signed=True))


def test_dirichlet_machine_is_minimal_and_periodic():
    m = dirichlet(5, [(2, I)])
    assert m == D.minimize(m)
