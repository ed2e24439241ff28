from __future__ import annotations

import json
import threading

import pytest
from hypothesis import given, strategies as st

from conftest import POOL, P, ordinals, random_ordinal
from glpzero.ordinal import (
    NEG_ONE, OMEGA, ONE, ZERO, Kind, OrdinalError, add, classify, compare,
    end_log, from_json, left_sub, nat, omega_pow, parse_ordinal, succ,
    to_json, veblen,
)


# brute-force oracles on plain term lists ------------------------------------

def cnf_add_oracle(xs, ys):
    """Cantor addition on lists of terms compared with ``compare``."""
    if not ys:
        return list(xs)
    lead = ys[0]
    keep = [t for t in xs if not compare(t, lead) < 0]
    # terms are non-increasing so the kept ones form a prefix
    assert keep == xs[:len(keep)]
    return keep + list(ys)


def tower(n):
    x = ONE
    for _ in range(n):
        x = omega_pow(x)
    return x


# examples --------------------------------------------------------------------

def test_compare_examples():
    assert compare(OMEGA, OMEGA) == 0
    assert compare(P("w^(w)"), P("w*3")) == 1
    eps0 = P("phi(1,0)")
    assert compare(eps0, P("w^(w^(w))")) == 1
    for n in range(6):
        assert compare(tower(n), eps0) == -1


def test_add_examples():
    assert add(nat(3), OMEGA) is OMEGA
    assert str(add(OMEGA, ONE)) == "w+1"
    x, y = P("w^(w)+w"), P("w^(2)")
    assert add(x, y) is P("w^(w)+w^(2)")
    assert add(x, y).term_list() == cnf_add_oracle(x.term_list(), y.term_list())


def test_left_sub_examples():
    assert left_sub(OMEGA, P("w+5")) is nat(5)
    assert left_sub(nat(5), OMEGA) is OMEGA
    r = left_sub(P("w^(2)"), P("w^(2)*2+w"))
    assert r is P("w^(2)+w")
    assert add(P("w^(2)"), r) is P("w^(2)*2+w")
    with pytest.raises(OrdinalError):
        left_sub(OMEGA, nat(3))


def test_omega_pow_examples():
    assert omega_pow(ZERO) is ONE
    assert str(omega_pow(P("w+1"))) == "w^(w+1)"
    eps0 = veblen(ONE, ZERO)
    assert omega_pow(eps0) is eps0


def test_end_log_and_classify():
    assert end_log(P("w^(w+1)")) is P("w+1")
    assert end_log(ZERO) is ZERO
    assert end_log(P("w^(w)+w^(3)")) is nat(3)
    assert classify(ZERO) is Kind.ZERO
    assert classify(P("w+1")) is Kind.SUCCESSOR
    assert classify(P("phi(1,0)")) is Kind.LIMIT


def test_veblen_examples():
    assert veblen(ZERO, nat(2)) is P("w^(2)")
    assert str(veblen(ONE, ZERO)) == "phi(1,0)"
    assert veblen(ZERO, veblen(ONE, ZERO)) is veblen(ONE, ZERO)
    # phi(1, eps_1) is a genuine new term; phi(1, phi(2,0)) collapses
    assert veblen(ONE, P("phi(1,1)")) is not P("phi(1,1)")
    assert veblen(ONE, P("phi(2,0)")) is P("phi(2,0)")


def test_neg_one_sentinel():
    assert NEG_ONE < ZERO
    assert NEG_ONE < OMEGA
    assert not (ZERO < NEG_ONE)
    assert NEG_ONE + 1 is ZERO
    assert succ(NEG_ONE) is ZERO
    with pytest.raises(OrdinalError):
        NEG_ONE + 2


# printing and parsing --------------------------------------------------------

@pytest.mark.parametrize("text,expected", [
    ("0", "0"), ("0+0", "0"), ("3", "3"), ("w", "w"), ("w*2+3", "w*2+3"),
    ("w^w", "w^(w)"), ("w^(w+1)", "w^(w+1)"), ("phi(1,0)", "phi(1,0)"),
    ("e(2,1)", "w^(w)"), ("e(w,1)", "phi(1,0)"), ("3+w", "w"),
    (" w ^ ( 2 ) + 1 ", "w^(2)+1"), ("ω+1", "w+1"),
])
def test_parse_print(text, expected):
    assert str(parse_ordinal(text)) == expected


def test_pretty():
    assert P("phi(1,0)").pretty() == "ε₀"
    assert P("w*2+1").pretty() == "ω·2+1"


@pytest.mark.parametrize("bad", ["", "w^", "phi(1)", "(w", "2x", "w**2", "l(1,w)"])
def test_parse_errors(bad):
    with pytest.raises(OrdinalError):
        parse_ordinal(bad)


def test_log_literal_needs_flag():
    assert parse_ordinal("l(w,phi(1,0))", allow_log=True) is ONE


@given(ordinals)
def test_canonicity_roundtrip(x):
    assert parse_ordinal(str(x)) is x
    assert from_json(json.loads(json.dumps(to_json(x)))) is x


def test_json_shape():
    assert to_json(ZERO) == {"nat": 0}
    assert to_json(nat(3)) == {"nat": 3}
    assert to_json(P("w")) == {"phi": [{"nat": 0}, {"nat": 1}]}
    assert "sum" in to_json(P("w+1"))


# algebraic laws --------------------------------------------------------------

@given(ordinals, ordinals, ordinals)
def test_addition_laws(a, b, c):
    assert add(add(a, b), c) is add(a, add(b, c))
    assert a <= add(a, b)
    assert b <= add(a, b)
    assert left_sub(a, add(a, b)) is b
    assert add(a, b).term_list() == cnf_add_oracle(a.term_list(), b.term_list())


@given(ordinals, ordinals, ordinals)
def test_order_laws(a, b, c):
    assert not a < a
    assert (a < b) + (a is b) + (b < a) == 1
    if a < b and b < c:
        assert a < c
    assert compare(a, b) == -compare(b, a)


@given(ordinals, ordinals)
def test_add_power_below(alpha, xi):
    # alpha < xi and beta <= end_log(xi) give alpha + w^beta <= xi
    if alpha < xi:
        for beta in {ZERO, end_log(xi)}:
            assert add(alpha, omega_pow(beta)) <= xi


@given(ordinals)
def test_terms_normal(x):
    ts = x.term_list()
    for s, t in zip(ts, ts[1:]):
        assert t <= s
    for t in ts:
        a, b = t.phi_args
        assert b < t
        assert veblen(a, b) is t


def test_equality_is_identity_across_threads():
    out = []

    def work(seed):
        import random
        rng = random.Random(seed)
        out.append([str(random_ordinal(rng)) for _ in range(200)])

    ts = [threading.Thread(target=work, args=(7,)) for _ in range(4)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    assert all(o == out[0] for o in out)
    for s in out[0]:
        assert P(s) is P(s)


def test_pool_sorted_by_construction():
    for a, b in zip(POOL, POOL[1:]):
        assert a < b, (a, b)
