from __future__ import annotations

# Hyperexponentials, hyperlogarithms, Gamma-norms and approximations.
#
# ``e^z`` is the transfinite iterate of ``e(x) = -1 + w^x``.  Writing
# ``z = w^r1 + ... + w^rk`` in Cantor normal form, ``e^z`` is the
# composite ``e^(w^r1) . ... . e^(w^rk)`` and ``l^z`` the reverse
# composite of the ``l^(w^r)``.  For ``r >= 1`` the iterate ``e^(w^r)``
# enumerates the common fixpoints of the smaller iterates, which is what
# the Veblen function ``phi_r`` enumerates, giving
#
#     e^(w^r)(0) = 0,    e^(w^r)(1 + b) = phi(r, b).
#
# The test-suite checks this against the limit clauses directly.
#
# Norms use the fact that ``||x||`` is the sum of the norms of the Cantor
# terms of ``x``; a principal term ``t > 1`` costs ``1 + ||l^g t||`` for the
# cheapest ``g`` in Gamma with ``t`` in the range of ``e^g``.

import math
import os
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .ordinal import (
    NEG_ONE, ONE, ZERO, Ordinal, OrdinalError, add, compare, left_sub,
    omega_pow, veblen,
)

INF = math.inf

__all__ = [
    "INF", "hyperexp", "hyperlog", "norm", "norm_set", "approx",
    "is_definable", "Parameters", "NormSet", "NormSetTooLarge",
    "least_preimage", "last_nonzero", "DEFAULT_MAX_NORMSET",
]

DEFAULT_MAX_NORMSET = 200_000


class NormSetTooLarge(RuntimeError):
    pass


def _max_normset() -> int:
    return int(os.environ.get("GLP_MAX_NORMSET", DEFAULT_MAX_NORMSET))


def _exponents(z: Ordinal) -> list[Ordinal]:
    """Exponents ``r_i`` of ``z = w^r1 + ... + w^rk``."""
    out = []
    for t in z.term_list():
        a, b = t.phi_args
        out.append(b if a is ZERO else t)
    return out


def _e_pow(r: Ordinal, x: Ordinal) -> Ordinal:
    """``e^(w^r)(x)``."""
    if x is ZERO:
        return ZERO
    if r is ZERO:
        return omega_pow(x)
    return veblen(r, left_sub(ONE, x))


@lru_cache(maxsize=None)
def hyperexp(z: Ordinal, x: Ordinal) -> Ordinal:
    """``e^z x``."""
    for r in reversed(_exponents(z)):
        x = _e_pow(r, x)
    return x


def _max_rep(t: Ordinal) -> tuple[Ordinal, Ordinal]:
    """For a principal ``t > 1`` return ``(d, y)`` with ``t = e^(w^d) y``
    and ``d`` maximal."""
    a, b = t.phi_args
    if a is ZERO:
        return ZERO, b
    return a, add(ONE, b)


def _l_pow(r: Ordinal, x: Ordinal) -> Ordinal:
    """``l^(w^r)(x)``."""
    while True:
        if x is ZERO:
            return ZERO
        t = x.last_term()
        if t is ONE:
            return ZERO
        d, y = _max_rep(t)
        c = compare(d, r)
        if c == 0:
            return y
        if c > 0:
            return t
        x = y


@lru_cache(maxsize=None)
def hyperlog(z: Ordinal, x: Ordinal) -> Ordinal:
    """``l^z x``."""
    for r in _exponents(z):
        x = _l_pow(r, x)
    return x


def last_nonzero(x: Ordinal) -> Ordinal:
    """Largest ``rho`` with ``l^rho x > 0``; requires ``x > 0``."""
    if x is ZERO:
        raise OrdinalError("l^rho 0 is 0 for every rho")
    rho = ZERO
    while True:
        t = x.last_term()
        if t is ONE:
            return rho
        d, y = _max_rep(t)
        rho = add(rho, omega_pow(d))
        x = y


# norms -----------------------------------------------------------------------

@dataclass(frozen=True)
class Parameters:
    p: int
    gamma: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.p < 0:
            raise ValueError("norm budget must be >= 0")
        object.__setattr__(self, "gamma", frozenset(self.gamma))


def _gamma(G: Iterable[Ordinal]) -> tuple:
    return tuple(sorted({g for g in G if g is not ZERO}, key=_sort_key))


def _sort_key(x):
    return _Key(x)


class _Key:
    __slots__ = ("x",)

    def __init__(self, x):
        self.x = x

    def __lt__(self, other):
        return self.x < other.x


@lru_cache(maxsize=None)
def _term_norm(t: Ordinal, G: tuple) -> float:
    if t is ONE:
        return 1
    best = INF
    for g in G:
        a = hyperlog(g, t)
        if a < t and hyperexp(g, a) is t:
            best = min(best, 1 + _norm(a, G))
    return best


def _norm(x: Ordinal, G: tuple) -> float:
    total = 0
    for t in x.term_list():
        total += _term_norm(t, G)
    return total


def norm(x: Ordinal, G: Iterable[Ordinal] = (), budget: int | None = None):
    """``||x||_G``; ``INF`` when it is infinite or exceeds *budget*."""
    n = _norm(x, _gamma(G))
    if budget is not None and n > budget:
        return INF
    return n


def is_definable(x: Ordinal, G: Iterable[Ordinal] = (), budget: int = 10) -> bool | None:
    """True when ``x`` has a weak normal form over ``G`` within *budget*;
    ``None`` (unknown) otherwise."""
    return True if norm(x, G, budget) != INF else None


# norm sets -------------------------------------------------------------------

class NormSet:
    """All ordinals of norm at most ``p`` over ``gamma``, sorted."""

    def __init__(self, p: int, gamma: tuple, norms: dict):
        self.p = p
        self.gamma = gamma
        self.norms = norms
        self.elements = sorted(norms, key=_sort_key)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.norms

    def __iter__(self):
        return iter(self.elements)

    def below(self, a: Ordinal):
        """Largest element ``< a`` or ``NEG_ONE``."""
        lo, hi = 0, len(self.elements)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.elements[mid] < a:
                lo = mid + 1
            else:
                hi = mid
        return self.elements[lo - 1] if lo else NEG_ONE


_NS_CACHE: dict = {}
_NS_LOCK = threading.Lock()


def norm_set(params: Parameters | int, G: Iterable[Ordinal] = (), cap: int | None = None,
             below: Ordinal | None = None) -> NormSet:
    """Materialize ``{x : ||x||_G <= p}``, or only its part below *below*."""
    if isinstance(params, Parameters):
        p, G = params.p, params.gamma
    else:
        p = params
    G = _gamma(G)
    cap = _max_normset() if cap is None else cap
    key = (p, G, below)
    ns = _NS_CACHE.get(key)
    if ns is not None:
        if len(ns) > cap:
            raise NormSetTooLarge(f"norm set p={p} has {len(ns)} > {cap} elements")
        return ns
    # principal terms by exact norm, built level by level; every ordinal is
    # a non-increasing sum of principal terms, and a cheapest construction
    # of x only uses ordinals <= x, so cutting at *below* loses nothing
    prin: dict = {ONE: 1} if p >= 1 and (below is None or ONE < below) else {}
    for k in range(2, p + 1):
        sums = _all_sums(prin, k - 1, cap)
        for g in G:
            for a, n in sums.items():
                if n != k - 1:
                    continue
                t = hyperexp(g, a)
                if t is ZERO or t in prin or (below is not None and not t < below):
                    continue
                prin[t] = k
    seen = _all_sums(prin, p, cap)
    if below is not None:
        seen = {x: n for x, n in seen.items() if x < below}
    ns = NormSet(p, G, seen)
    with _NS_LOCK:
        if len(_NS_CACHE) > 4096:
            _NS_CACHE.clear()
        _NS_CACHE[key] = ns
    return ns


def _all_sums(prin: dict, p: int, cap: int) -> dict:
    ps = sorted(((t, n) for t, n in prin.items() if n <= p),
                key=lambda tn: _Key(tn[0]), reverse=True)
    seen = {ZERO: 0}
    _sums(ps, 0, ZERO, 0, p, seen, cap)
    return seen


def _sums(ps, start, acc, cost, p, seen, cap):
    for i in range(start, len(ps)):
        t, n = ps[i]
        c = cost + n
        if c > p:
            continue
        x = add(acc, t)
        seen[x] = c
        if len(seen) > cap:
            raise NormSetTooLarge(f"norm set exceeds {cap} elements")
        _sums(ps, i, x, c, p, seen, cap)


# approximations --------------------------------------------------------------

def _least_gt_phi(r: Ordinal, c: Ordinal) -> Ordinal:
    """Least ``b`` with ``phi(r, b) > c``."""
    b = _least_ge_phi(r, c)
    return add(b, ONE) if veblen(r, b) is c else b


def _least_ge_phi(r: Ordinal, t: Ordinal) -> Ordinal:
    """Least ``b`` with ``phi(r, b) >= t``."""
    if t is ZERO:
        return ZERO
    T = t.first_term()
    a, c = T.phi_args
    cmp_ = compare(a, r)
    if cmp_ > 0:
        b = T
    elif cmp_ == 0:
        b = c
    else:
        b = _least_gt_phi(r, c)
    if T is not t and veblen(r, b) is T:
        b = add(b, ONE)
    return b


def _least_preimage_pow(r: Ordinal, t: Ordinal) -> Ordinal:
    """Least ``a`` with ``e^(w^r)(a) >= t``."""
    if t is ZERO:
        return ZERO
    if r is ZERO:
        T = t.first_term()
        x = T.phi_args[1] if T.phi_args[0] is ZERO else T
        if T is not t:
            x = add(x, ONE)
        return x if x is not ZERO else ONE
    return add(ONE, _least_ge_phi(r, t))


@lru_cache(maxsize=None)
def least_preimage(z: Ordinal, t: Ordinal) -> Ordinal:
    """Least ``a`` with ``e^z a >= t``."""
    for r in _exponents(z):
        t = _least_preimage_pow(r, t)
    return t


@lru_cache(maxsize=None)
def _max_principal_below(bound: Ordinal, b: int, G: tuple):
    """Largest principal ``u < bound`` with ``||u|| <= b`` (or None)."""
    best = ONE if (b >= 1 and ONE < bound) else None
    if b < 2:
        return best
    for g in G:
        a = _approx(least_preimage(g, bound), b - 1, G)
        if a is NEG_ONE or a is ZERO:
            continue
        u = hyperexp(g, a)
        if best is None or best < u:
            best = u
    return best


def _greedy_below_principal(t: Ordinal, b: int, G: tuple) -> Ordinal:
    """Largest ``x < t`` (``t`` principal) with ``||x|| <= b``."""
    acc = ZERO
    bound = t
    while b > 0:
        u = _max_principal_below(bound, b, G)
        if u is None:
            break
        acc = add(acc, u)
        b -= _term_norm(u, G)
        bound = add(u, ONE)
    return acc


@lru_cache(maxsize=None)
def _approx(a: Ordinal, p: int, G: tuple):
    if a is ZERO:
        return NEG_ONE
    terms = a.term_list()
    costs = [0]
    for t in terms[:-1]:
        costs.append(costs[-1] + _term_norm(t, G))
    for j in range(len(terms) - 1, -1, -1):
        if costs[j] <= p:
            prefix = ZERO
            for t in terms[:j]:
                prefix = add(prefix, t)
            return add(prefix, _greedy_below_principal(terms[j], p - int(costs[j]), G))
    raise AssertionError("unreachable")


def approx(a: Ordinal, p: int | Parameters, G: Iterable[Ordinal] = ()):
    """Largest ``b < a`` with ``||b||_G <= p``; ``NEG_ONE`` when ``a = 0``."""
    if isinstance(p, Parameters):
        p, G = p.p, p.gamma
    return _approx(a, p, _gamma(G))
