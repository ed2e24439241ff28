from __future__ import annotations

# Seeded generators: random formulas, axiom instances, sample points and
# worlds, plus a fixed regression corpus.

import random

from .config import ModelConfig
from .formula import (
    BOT, TOP, And, Box, Diamond, Formula, Implies, Not, Or, parse,
)
from .hyper import hyperexp, hyperlog
from .lseq import LSeq, concat, main_axis
from .ordinal import OMEGA, ONE, ZERO, Ordinal, add, nat, omega_pow, parse_ordinal

AXIOMS = ("taut", "K", "lob", "mono", "neg")

DEFAULT_INDICES = (ZERO, ONE, OMEGA)


def random_formula(rng: random.Random, depth: int, indices=DEFAULT_INDICES, size: int = 3) -> Formula:
    """A closed formula of modal depth at most *depth*."""
    if size <= 0 or rng.random() < 0.2:
        return rng.choice((TOP, BOT))
    k = rng.randrange(6) if depth > 0 else rng.randrange(3)
    if k == 0:
        return Not(random_formula(rng, depth, indices, size - 1))
    if k in (1, 2):
        ctor = And if k == 1 else Or
        return ctor(random_formula(rng, depth, indices, size - 1),
                    random_formula(rng, depth, indices, size - 1))
    if k == 3:
        return Implies(random_formula(rng, depth, indices, size - 1),
                       random_formula(rng, depth, indices, size - 1))
    ctor = Diamond if k == 4 else Box
    return ctor(rng.choice(indices), random_formula(rng, depth - 1, indices, size - 1))


def axiom_instance(rng: random.Random, kind: str, depth: int = 2, indices=DEFAULT_INDICES) -> Formula:
    phi = random_formula(rng, depth, indices)
    psi = random_formula(rng, depth, indices)
    if kind == "taut":
        shape = rng.randrange(3)
        if shape == 0:
            return Or(phi, Not(phi))
        if shape == 1:
            return Implies(phi, Implies(psi, phi))
        return Implies(And(phi, psi), Or(psi, Not(Not(phi))))
    x = rng.choice(indices)
    if kind == "K":
        return Implies(Box(x, Implies(phi, psi)), Implies(Box(x, phi), Box(x, psi)))
    if kind == "lob":
        return Implies(Box(x, Implies(Box(x, phi), phi)), Box(x, phi))
    lo, hi = sorted(rng.sample(list(indices), 2))
    if kind == "mono":
        return Implies(Diamond(hi, phi), Diamond(lo, phi))
    if kind == "neg":
        return Implies(Diamond(lo, phi), Box(hi, Diamond(lo, phi)))
    raise ValueError(f"unknown axiom schema {kind!r}")


def axiom_instances(seed: int, n: int, depth: int = 2, indices=DEFAULT_INDICES) -> list:
    rng = random.Random(seed)
    return [(AXIOMS[i % len(AXIOMS)], axiom_instance(rng, AXIOMS[i % len(AXIOMS)], depth, indices))
            for i in range(n)]


def random_point(rng: random.Random, cfg: ModelConfig, tries: int = 50) -> Ordinal:
    """A point below ``theta`` built from small hyperexponential pieces."""
    for _ in range(tries):
        x = ZERO
        for _ in range(rng.randrange(1, 4)):
            z = rng.choice((ZERO, ONE, nat(2), OMEGA, add(OMEGA, ONE)))
            base = rng.choice((ONE, nat(2), nat(3), OMEGA, add(OMEGA, ONE)))
            t = hyperexp(z, base)
            if rng.random() < 0.3:
                t = omega_pow(add(t, ONE))
            for _ in range(rng.randrange(1, 3)):
                x = add(x, t) if not x < t else add(t, x)
        if rng.random() < 0.4:
            x = add(x, nat(rng.randrange(1, 4)))
        if rng.random() < 0.15:
            x = nat(rng.randrange(0, 6))
        if x < cfg.theta:
            return x
    return nat(rng.randrange(0, 6))


def sample_points(seed: int, n: int, cfg: ModelConfig) -> list:
    rng = random.Random(seed)
    return [random_point(rng, cfg) for _ in range(n)]


def random_world(rng: random.Random, cfg: ModelConfig) -> LSeq:
    """Mostly exact worlds, sometimes cut down at a random coordinate."""
    f = main_axis(random_point(rng, cfg), cfg)
    if rng.random() < 0.4:
        coords = [c for c in (ONE, nat(2), OMEGA) if c < cfg.lam]
        if coords:
            lam = rng.choice(coords)
            v = f(lam)
            if v is not ZERO:
                w = hyperexp(lam, _below(rng, v))
                f = concat(f, lam, main_axis(w, cfg)) if w < cfg.theta else f
    return f


def _below(rng, v):
    """Some ordinal below ``v > 0``: a proper prefix of its Cantor form,
    possibly plus a small natural."""
    pre = [ZERO]
    for t in v.term_list()[:-1]:
        pre.append(add(pre[-1], t))
    x = rng.choice(pre)
    y = add(x, nat(rng.randrange(1, 4)))
    return y if y < v and rng.random() < 0.5 else x


def sample_worlds(seed: int, n: int, cfg: ModelConfig) -> list:
    rng = random.Random(seed)
    return [random_world(rng, cfg) for _ in range(n)]


# regression corpus -----------------------------------------------------------

REGRESSION_FORMULAS = (
    "T", "F", "<0>T", "[0]F", "<1>T", "<1><1>T", "<0><1>T", "<1><0>T",
    "<w>T", "<w><0>T", "<1>T -> <0>T", "<0>T -> [1]<0>T", "<w>T & ~<w><w>T",
    "[1]([1]F -> F) -> [1]F", "<0>~<0>T", "<1>~<1>T", "<0>(<1>T & ~<0><0>T)",
    "[0]<0>T", "~<1>T & <0><0>T", "<w><1>T", "[w]<1>T", "<1>[0]F",
    "<0><0>T | <1>T", "[1](<0>T -> <1>T)", "<w>[1]F", "<1><w>T",
)


def regression_formulas() -> list:
    return [parse(s) for s in REGRESSION_FORMULAS]


REGRESSION_POINTS = (
    "0", "1", "2", "5", "w", "w+1", "w*2", "w^(2)", "w^(2)+w", "w^(w)",
    "w^(w+1)", "w^(w^(w))", "phi(1,0)", "phi(1,0)+1", "phi(1,0)*2",
    "w^(phi(1,0)+1)", "phi(1,1)", "phi(1,2)",
)


def regression_points(cfg: ModelConfig) -> list:
    out = []
    for s in REGRESSION_POINTS:
        x = parse_ordinal(s)
        if x < cfg.theta:
            out.append(x)
    return out
