import math

import pytest

from autoseq import dfao as D
from autoseq.classifier import (CharacterTable, classify, coprime_indicator, default_qmax,
                                enumerate_characters, match_character, vanishing_check,
                                verify_character)
from autoseq.generators import dirichlet, one_indicator, parse_generator, power_indicator, thue_morse
from autoseq.multiplicative import check_multiplicative
from autoseq.numtheory import euler_phi, primes_upto
from autoseq.values import MINUS_ONE, ONE, ZERO, Value

from helpers import CORPUS, brute_eval

I = Value.root(1, 4)


def corpus():
    return [(t, q, parse_generator(t, q).build()) for t, q in CORPUS]


def test_character_example():
    chi = D.from_periodic([ZERO, ONE, I, Value.root(3, 4), MINUS_ONE], 2)
    c = classify(chi)
    assert (c.kind, c.Q) == ("Character", 5)
    assert c.character.as_map() == {1: ONE, 2: I, 3: Value.root(3, 4), 4: MINUS_ONE}
    assert c.as_dict()["table"] == {"1": "0", "2": "1/4", "3": "3/4", "4": "1/2"}


def test_vanishing_examples():
    assert vanishing_check(power_indicator(2), 10**4).exceptional == (2,)
    const = vanishing_check(D.constant(ONE, 2), 100)
    assert const.exceptional == tuple(primes_upto(100)) and len(const.exceptional) == 25
    assert vanishing_check(one_indicator(), 10**4).exceptional == ()
    c = classify(power_indicator(2))
    assert (c.kind, c.exceptional) == ("VanishingOnLargePrimes", (2,))
    assert c.vanishing.stable and c.conclusive


def test_not_multiplicative_example():
    c = classify(thue_morse(signed=True))
    assert (c.kind, c.witness) == ("NotMultiplicative", (2, 3))
    assert not c.conclusive


def test_inconclusive_when_neither_branch_fits():
    # multiplicative, no character with small modulus, and nonzero at large primes
    chi = dirichlet(7, [(3, Value.root(1, 6))])
    c = classify(chi, Qmax=5, P=1000)
    assert c.kind == "Inconclusive" and not c.conclusive
    assert "Q=5" in c.reason


def test_thue_morse_has_no_character_up_to_64():
    tm = thue_morse(signed=True)
    assert match_character(tm, 64) is None
    # oracle: for each Q, two coprime n in the same class with different values
    for Q in range(1, 65):
        seen = {}
        clash = False
        for n in range(1, 5000):
            if math.gcd(n, Q) != 1:
                continue
            v = brute_eval(tm, n)
            if seen.setdefault(n % Q, v) != v:
                clash = True
                break
        assert clash, Q


@pytest.mark.parametrize("Q", [1, 2, 3, 4, 5, 7, 8, 9, 12, 15, 16])
def test_enumerate_characters(Q):
    chars = enumerate_characters(Q)
    assert len(chars) == euler_phi(Q)
    assert len({c.values for c in chars}) == len(chars)
    assert all(c.is_homomorphism() for c in chars)


def test_character_table_helpers():
    ct = CharacterTable.from_dict(5, {1: ONE, 2: I, 3: Value.root(3, 4), 4: MINUS_ONE})
    assert ct(7) == I and ct(10) == ZERO
    assert ct.extended()[0] == ZERO
    bad = CharacterTable.from_dict(5, {1: ONE, 2: I, 3: I, 4: MINUS_ONE})
    assert not bad.is_homomorphism()
    assert not verify_character(dirichlet(5, [(2, I)]), CharacterTable.from_dict(
        5, {1: ONE, 2: Value.root(3, 4), 3: I, 4: MINUS_ONE}))
    mask = coprime_indicator(6, 2)
    assert [D.evaluate(mask, n) for n in range(7)] == [ZERO, ONE, ZERO, ZERO, ZERO, ONE, ZERO]


def test_default_qmax_is_capped():
    assert default_qmax(thue_morse()) == 2 * 2**2 * 4
    assert default_qmax(dirichlet(7, [(3, Value.root(1, 6))])) == 10**4


def test_character_soundness_on_corpus():
    for text, q, a in corpus():
        c = classify(a, P=2000)
        if c.kind != "Character":
            continue
        ct = c.character
        assert verify_character(a, ct), text
        units = [u for u in range(ct.Q) if math.gcd(u, ct.Q) == 1] or [0]
        table = ct.as_map()
        assert all(table[u * w % ct.Q] == table[u] * table[w] for u in units for w in units)
        assert all(D.evaluate(a, n) == ct(n) for n in range(1, 500) if math.gcd(n, ct.Q) == 1)


def test_corpus_dichotomy():
    for text, q, a in corpus():
        c = classify(a)
        assert c.kind != "Inconclusive", text
        if check_multiplicative(a, 10**4).ok:
            assert c.conclusive, text
        # a verified character is nonzero at infinitely many primes, so it never
        # comes with an empty tail of exceptional primes
        if c.kind == "Character":
            assert not vanishing_check(a, 10**4).stable, text


def test_monotonicity():
    for text, q, a in corpus():
        if not check_multiplicative(a, 2000).ok:
            continue
        small, big = vanishing_check(a, 500), vanishing_check(a, 3000)
        assert set(small.exceptional) <= set(big.exceptional)
        hit = match_character(a, 20)
        if hit is not None:
            assert match_character(a, 60)[0].Q == hit[0].Q


def test_report_fields_stable():
    doc = classify(dirichlet(5, [(2, I)])).as_dict()
    assert set(doc) == {"schema_version", "kind", "params", "Q", "table", "certificate", "evidence"}
    assert doc["params"]["qmax_heuristic"] is True
    doc = classify(power_indicator(2)).as_dict()
    assert {"exceptional", "checked_to", "stable", "p1hat"} <= set(doc)
