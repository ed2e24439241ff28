from __future__ import annotations

import random

import pytest
from hypothesis import assume, given, strategies as st

from conftest import POOL, P, below_eps0, random_ordinal
from glpzero.hyper import (
    INF, NormSetTooLarge, Parameters, approx, hyperexp, hyperlog,
    is_definable, last_nonzero, least_preimage, norm, norm_set,
)
from glpzero.ordinal import (
    NEG_ONE, OMEGA, ONE, ZERO, Kind, add, classify, left_sub, nat, omega_pow,
)

EPS0 = P("phi(1,0)")
PHI20 = P("phi(2,0)")
W2 = P("w^(2)")

# indices whose iterates stay small enough to be useful
SMALL_IDX = [P(s) for s in ("0", "1", "2", "3", "w", "w+1", "w+2", "w*2", "w*2+1", "w*3")]


# independent oracle for the limit clauses -------------------------------------

def e1(x):
    """-1 + w^x, from the ordinal layer only."""
    return ZERO if x is ZERO else omega_pow(x)


def e_finite(n, x):
    for _ in range(n):
        x = e1(x)
    return x


def fixed_below(rho, w):
    """Is ``w`` fixed by every ``e^eta`` with ``eta < w^rho``?  For rho = 1
    it is enough to check ``e``; for rho = 2 also ``e^w`` (every smaller
    index is a composite of these)."""
    if e1(w) is not w:
        return False
    if rho >= 2 and hyperexp(OMEGA, w) is not w:
        return False
    return True


def lower_iterates(rho, x):
    """Iterates ``e^eta x`` for a spread of ``eta < w^rho``."""
    out = [e_finite(n, x) for n in range(1, 6)]
    if rho >= 2:
        y = x
        for _ in range(4):
            y = hyperexp(OMEGA, y)
            out.extend(e_finite(n, y) for n in range(3))
    return out


def fs(x, k):
    """k-th member of the usual fundamental sequence of a limit ``x < eps0``."""
    ts = x.term_list()
    prefix = ZERO
    for t in ts[:-1]:
        prefix = add(prefix, t)
    a, c = ts[-1].phi_args
    assert a is ZERO
    if classify(c) is Kind.SUCCESSOR:
        d = c.term_list()
        d = sum_terms(d[:-1])
        piece = ZERO
        for _ in range(k):
            piece = add(piece, omega_pow(d))
        return add(prefix, piece)
    return add(prefix, omega_pow(fs(c, k)))


def sum_terms(ts):
    out = ZERO
    for t in ts:
        out = add(out, t)
    return out


def candidate_pool(seed=3, n=400):
    rng = random.Random(seed)
    pool = set(POOL)
    for _ in range(n):
        pool.add(random_ordinal(rng, 3, 2))
    return pool


CAND = candidate_pool()


@pytest.mark.parametrize("rho", [1, 2])
def test_power_iterates_enumerate_fixpoints(rho):
    """e^(w^rho) is checked against the limit clauses: its value at 1+b is
    a common fixpoint of the smaller iterates, it sits above every smaller
    iterate applied to the previous value plus one, and no notation in a
    candidate pool is a common fixpoint strictly in between."""
    idx = omega_pow(nat(rho))
    args = [ONE, nat(2), nat(3), OMEGA, add(OMEGA, ONE), P("w*2"), W2]
    prev = ZERO
    for x in args:
        v = hyperexp(idx, x)
        assert fixed_below(rho, v)
        assert prev < v
        if classify(x) is Kind.SUCCESSOR:
            base = add(hyperexp(idx, _pred(x)), ONE)
            for u in lower_iterates(rho, base):
                assert u < v
            near = set(lower_iterates(rho, base)) | CAND
            for w in near:
                if base <= w < v:
                    assert not fixed_below(rho, w), (x, w, v)
        else:
            # limit argument: the value is the supremum of earlier values
            approxs = [hyperexp(idx, fs(x, k)) for k in range(1, 12)]
            for w in CAND:
                if w < v:
                    assert any(w < a for a in approxs), (x, w)
        prev = v


def _pred(x):
    return sum_terms(x.term_list()[:-1])


def test_hyperexp_examples():
    assert hyperexp(nat(2), ONE) is P("w^(w)")
    for x in POOL:
        assert hyperexp(ZERO, x) is x
    assert hyperexp(add(ONE, ONE), OMEGA) is P("w^(w^(w))")


def test_hyperexp_omega_one_is_eps0():
    towers = [e_finite(n, ONE) for n in range(1, 6)]
    v = hyperexp(OMEGA, ONE)
    assert v is EPS0
    assert all(t < v for t in towers)
    assert e1(v) is v
    for w in CAND:
        if towers[-1] < w < v:
            assert e1(w) is not w


def test_basic_clauses():
    for z in SMALL_IDX:
        assert hyperexp(z, ZERO) is ZERO
    for x in POOL:
        assert hyperexp(ONE, x) is e1(x)


# iterate laws -----------------------------------------------------------------

idx_st = st.sampled_from(SMALL_IDX)


@given(idx_st, idx_st, below_eps0)
def test_composition(xi, zeta, a):
    assert hyperexp(add(xi, zeta), a) is hyperexp(xi, hyperexp(zeta, a))


@given(idx_st, idx_st, below_eps0)
def test_index_monotone(xi, zeta, a):
    if xi < zeta:
        assert hyperexp(xi, a) <= hyperexp(zeta, a)
        assert hyperlog(zeta, a) <= hyperlog(xi, a)


@given(idx_st, below_eps0, below_eps0)
def test_argument_strictly_monotone(xi, a, b):
    if a < b:
        assert hyperexp(xi, a) < hyperexp(xi, b)


@given(idx_st, idx_st, below_eps0)
def test_absorbed_index(xi, zeta, a):
    if add(xi, zeta) is zeta:
        assert hyperexp(xi, hyperexp(zeta, a)) is hyperexp(zeta, a)
        assert hyperlog(zeta, a) is hyperlog(zeta, hyperlog(xi, a))


@given(idx_st, idx_st, below_eps0)
def test_log_composition(xi, zeta, a):
    assert hyperlog(add(xi, zeta), a) is hyperlog(zeta, hyperlog(xi, a))


@given(idx_st, below_eps0)
def test_continuity_at_limits(xi, x):
    assume(classify(x) is Kind.LIMIT)
    v = hyperexp(xi, x)
    approxs = [hyperexp(xi, fs(x, k)) for k in range(1, 15)]
    assert all(a < v for a in approxs)
    for w in CAND:
        if w < v:
            assert any(w < a for a in approxs), (xi, x, w)


# hyperlogarithms ---------------------------------------------------------------

def test_hyperlog_examples():
    assert hyperlog(ONE, P("w^(w+1)")) is P("w+1")
    assert hyperlog(OMEGA, EPS0) is ONE
    assert hyperlog(ONE, ZERO) is ZERO
    # only the last term matters
    assert hyperlog(ONE, P("w^(w)+w^(3)")) is nat(3)


@given(idx_st, below_eps0)
def test_left_inverse(xi, b):
    a = hyperexp(xi, b)
    assert hyperlog(xi, a) is b


@given(idx_st, below_eps0, below_eps0)
def test_left_inverse_strict(xi, a, b):
    if a < hyperexp(xi, b):
        assert hyperlog(xi, a) < b or b is ZERO and hyperlog(xi, a) is ZERO


@given(idx_st, idx_st, below_eps0)
def test_log_of_exp(xi, zeta, a):
    if xi < zeta:
        assert hyperlog(xi, hyperexp(zeta, a)) is hyperexp(left_sub(xi, zeta), a)


@given(idx_st, below_eps0)
def test_exp_log_below(xi, b):
    # used to prune candidate searches
    assert hyperexp(xi, hyperlog(xi, b)) <= b


def test_hyperlog_not_monotone():
    # a reminder that pruning by hyperlog would be wrong
    assert hyperlog(ONE, P("w^(2)+1")) < hyperlog(ONE, W2)


@pytest.mark.parametrize("rho", [1, 2])
def test_range_characterisation(rho):
    idx = omega_pow(nat(rho))
    rng = random.Random(rho)
    xs = set(POOL) | {random_ordinal(rng, 3, 2) for _ in range(300)}
    xs |= {hyperexp(idx, x) for x in list(POOL)[:12]}
    bound = P("phi(2,1)")
    for x in xs:
        if not x < bound or x is ZERO:
            continue
        in_range = hyperexp(idx, hyperlog(idx, x)) is x
        assert in_range == fixed_below(rho, x), x


def test_last_nonzero():
    assert last_nonzero(ONE) is ZERO
    assert last_nonzero(OMEGA) is ONE
    assert last_nonzero(W2) is ONE
    assert last_nonzero(P("w^(w)")) is nat(2)
    assert last_nonzero(EPS0) is OMEGA
    for x in POOL[1:]:
        r = last_nonzero(x)
        assert hyperlog(r, x) is not ZERO
        assert hyperlog(add(r, ONE), x) is ZERO


# norms ---------------------------------------------------------------------------

def test_norm_examples():
    for G in ((), (ONE,), (ONE, OMEGA)):
        assert norm(nat(2), G, 8) == 2
        for n in range(11):
            assert norm(nat(n), G, n) == n
    assert norm(OMEGA, [ONE], 8) == 2
    assert norm(P("w^(w+1)"), [ONE], 8) == 4
    assert norm(EPS0, [ONE], 12) == INF
    assert norm(nat(9), [], 8) == INF


def test_is_definable():
    assert is_definable(ZERO, []) is True
    assert is_definable(OMEGA, [], 10) is None
    assert is_definable(P("w^(w)"), [ONE, nat(2)], 10) is True


def closure_oracle(p, G):
    """Least costs by closing {0, 1} under the two generation rules, keeping
    only decompositions into strictly smaller parts."""
    cost = {ZERO: 0}
    if p >= 1:
        cost[ONE] = 1
    changed = True
    while changed:
        changed = False
        items = list(cost.items())
        for a, na in items:
            for b, nb in items:
                n = na + nb
                if n > p or a is ZERO or b is ZERO:
                    continue
                s = add(a, b)
                if a < s and b < s and cost.get(s, p + 1) > n:
                    cost[s] = n
                    changed = True
            for g in G:
                if na + 1 > p or a is ZERO:
                    continue
                t = hyperexp(g, a)
                if a < t and cost.get(t, p + 1) > na + 1:
                    cost[t] = na + 1
                    changed = True
    return cost


GAMMAS = [(), (ONE,), (nat(2),), (ONE, nat(2)), (OMEGA,), (ONE, OMEGA)]


@pytest.mark.parametrize("G", GAMMAS, ids=str)
@pytest.mark.parametrize("p", [0, 1, 2, 3, 4, 5])
def test_norm_set_matches_closure(p, G):
    ns = norm_set(p, G)
    assert ns.norms == closure_oracle(p, G)
    for x, n in ns.norms.items():
        assert norm(x, G) == n


def test_norm_set_examples():
    assert set(norm_set(1, ()).elements) == {ZERO, ONE}
    assert set(norm_set(2, (ONE,)).elements) == {ZERO, ONE, nat(2), OMEGA}
    s3 = set(norm_set(3, (ONE,)).elements)
    assert s3 == {P(s) for s in ("0", "1", "2", "3", "w", "w+1", "w^(2)", "w^(w)")}
    assert set(norm_set(Parameters(2, {ONE})).elements) == {ZERO, ONE, nat(2), OMEGA}


def test_norm_set_cap():
    with pytest.raises(NormSetTooLarge):
        norm_set(7, (ONE, nat(2), OMEGA), cap=50)


def test_approx_examples():
    assert approx(ZERO, 5, [ONE]) is NEG_ONE
    assert approx(W2, 2, [ONE]) is OMEGA
    assert approx(nat(5), 3, []) is nat(3)
    assert approx(ONE, 0, []) is ZERO
    assert approx(W2, Parameters(2, {ONE})) is OMEGA


@pytest.mark.parametrize("G", GAMMAS, ids=str)
@pytest.mark.parametrize("p", [0, 1, 2, 3, 4, 5, 6])
def test_approx_matches_norm_set(p, G):
    ns = norm_set(p, G)
    rng = random.Random(p * 31 + len(G))
    targets = set(POOL) | {random_ordinal(rng, 3, 1) for _ in range(60)}
    targets |= {add(x, ONE) for x in ns.elements[:: max(1, len(ns) // 40)]}
    for a in targets:
        got = approx(a, p, G)
        assert got is ns.below(a), (a, p, G)
        # nothing of small norm sits strictly between
        if got is not NEG_ONE:
            assert got < a and norm(got, G) <= p


@given(below_eps0, st.integers(0, 4))
def test_approx_unbounded(xi, p):
    G = (ONE,)
    a = approx(xi, p, G)
    for z in norm_set(p, G):
        if z < xi:
            assert z <= a


def test_least_preimage():
    for z in SMALL_IDX:
        for t in POOL:
            if not t < PHI20:
                continue
            a = least_preimage(z, t)
            assert t <= hyperexp(z, a)
            for b in CAND:
                if b < a:
                    assert hyperexp(z, b) < t, (z, t, b)
