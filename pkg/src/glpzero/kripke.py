from __future__ import annotations

# Kripke semantics on l-sequences and the satisfiability search.
#
# Worlds are finitely anchored :class:`LSeq` values.  ``f <_x g`` holds when
# ``f`` agrees with ``g`` below ``x`` and ``f(x) < g(x)``.
#
# To decide ``<m>chi`` at ``g`` it is enough to look at successors of the
# shape ``g *^m c`` where ``c`` is an exact tail whose value at ``m`` is
# ``ceil(t)(m)`` for a radius ``t`` over ``{0} + mods(chi)`` with values of
# norm at most ``q`` (see :func:`exact_budget`): any real successor is close to one of
# these, and close worlds agree on ``chi``.  ``q`` grows quickly, so it is
# capped by ``ModelConfig.norm_budget``; results computed under the cap are
# flagged as bounded.

import threading
from dataclasses import dataclass
from functools import lru_cache

from .config import ModelConfig
from .formula import (
    And, Bottom, Box, Diamond, Formula, Implies, Not, Or, Top, Worm,
    modal_depth, modalities,
)
from .hyper import NormSetTooLarge, hyperexp, hyperlog, least_preimage, norm_set
from .lseq import LSeq, LSeqError, _delta_set, coord_seq, eval_at, main_axis
from .ordinal import NEG_ONE, ZERO, Ordinal, add, left_sub, succ

__all__ = [
    "SearchCapExceeded", "BelowThreshold", "ConfigMismatch", "Verdict",
    "KripkeModel", "model_for", "less", "successors", "candidate_values",
    "eval", "satisfiable", "valid", "bisim_check", "worm_less", "worm_verdict", "decide",
]


class SearchCapExceeded(RuntimeError):
    pass


class BelowThreshold(ValueError):
    pass


class ConfigMismatch(LSeqError):
    pass


def less(f: LSeq, g: LSeq, xi: Ordinal) -> bool:
    """``f <_xi g``."""
    if f.lam is not g.lam or f.theta is not g.theta:
        raise ConfigMismatch("worlds come from different models")
    if not xi < f.lam:
        raise LSeqError(f"{xi} is not below the length {f.lam}")
    # both are exact between consecutive anchors, so agreement below xi
    # only has to be checked at the anchor coordinates below xi
    for x in {x for x, _ in f.anchors} | {x for x, _ in g.anchors}:
        if x < xi and eval_at(f, x) is not eval_at(g, x):
            return False
    return eval_at(f, xi) < eval_at(g, xi)


def exact_budget(sig: tuple, depth: int) -> int:
    """Budget making ``q``-close worlds agree on formulas of this depth over
    *sig*: ``q_0 = 0`` and ``q_(p+1) = (q_p + 1) * |sig|``.  The factor
    ``q_p + 1`` is the norm bound on ceiling values per coordinate."""
    q = 0
    for _ in range(depth):
        q = (q + 1) * len(sig)
    return q


@lru_cache(maxsize=4096)
def candidate_values(sig: tuple, q: int, mu: Ordinal, bound: Ordinal,
                     max_norm_set: int, max_candidates: int) -> tuple:
    """Sorted values ``ceil(t)(mu) < bound`` for radii ``t`` over *sig* with
    norm-``q`` values (or -1) at the coordinates that matter from *mu* on."""
    G = _delta_set(sig)
    k = max(i for i, s in enumerate(sig) if s <= mu)
    top = len(sig) - 1
    # radius values a only matter while succ(a) can still fit, so the norm
    # set can be cut at the largest per-coordinate bound
    below = None
    if sig[k] is mu:
        below = bound
        for s in sig[k + 1:]:
            b = least_preimage(left_sub(mu, s), bound)
            if below < b:
                below = b
    try:
        ns = norm_set(q, G, max_norm_set, below)
    except NormSetTooLarge as exc:
        raise SearchCapExceeded(str(exc)) from exc
    ext = [NEG_ONE] + ns.elements

    # for j > k, v = ceil(t)(s_j) = l^(-mu+s_j) beta and e^x l^x beta <= beta,
    # so e^(-mu+s_j) v < bound is necessary; monotone in v
    def fits(j, v):
        s = sig[j]
        if mu < s:
            return hyperexp(left_sub(mu, s), v) < bound
        return s is not mu or v < bound

    vals = set()
    for a in ext:
        v = succ(a)
        if not fits(top, v):
            break
        vals.add(v)
    for j in range(top - 1, k - 1, -1):
        d = left_sub(sig[j], sig[j + 1])
        nxt = set()
        for x in vals:
            ex = hyperexp(d, x)
            for a in ext:
                v = add(succ(a), ex)
                if not fits(j, v):
                    break  # v is non-decreasing in a
                nxt.add(v)
                if len(nxt) > max_candidates:
                    raise SearchCapExceeded(f"more than {max_candidates} candidates")
        vals = nxt
    if sig[k] is not mu:
        vals = {hyperlog(left_sub(sig[k], mu), v) for v in vals}
    out = [v for v in vals if v < bound]
    if len(out) > max_candidates:
        raise SearchCapExceeded(f"more than {max_candidates} candidates")
    out.sort(key=_Key)
    return tuple(out)


class _Key:
    __slots__ = ("x",)

    def __init__(self, x):
        self.x = x

    def __lt__(self, o):
        return self.x < o.x


@dataclass
class Verdict:
    result: str
    witness: Ordinal | None
    budget: int
    bounded: bool
    world: LSeq | None = None

    def to_json(self):
        return {
            "result": self.result,
            "witness": None if self.witness is None else str(self.witness),
            "world": None if self.world is None else self.world.to_json(),
            "budget": self.budget,
            "bounded": self.bounded,
        }


class KripkeModel:
    """Evaluator for one :class:`ModelConfig` with its memo tables."""

    def __init__(self, cfg: ModelConfig):
        self.cfg = cfg
        self._memo: dict = {}
        self._bis: dict = {}

    # budgets ---------------------------------------------------------------

    def budget_for(self, sig: tuple, depth: int) -> int:
        return self.cfg.budget(exact_budget(sig, depth))

    def capped(self, sig: tuple, depth: int) -> bool:
        exact = exact_budget(sig, depth)
        return self.cfg.budget(exact) < exact

    def is_bounded(self, phi: Formula) -> bool:
        """Whether deciding *phi* uses a budget below the exact one."""
        if isinstance(phi, (Top, Bottom)):
            return False
        if isinstance(phi, Not):
            return self.is_bounded(phi.arg)
        if isinstance(phi, (Box, Diamond)):
            chi = phi.arg
            return self.capped(modalities(chi), modal_depth(chi)) or self.is_bounded(chi)
        return self.is_bounded(phi.left) or self.is_bounded(phi.right)

    def _values(self, sig, q, mu, bound):
        return candidate_values(sig, q, mu, bound, self.cfg.max_norm_set,
                                self.cfg.max_candidates)

    def _check_world(self, f: LSeq):
        if f.lam is not self.cfg.lam or f.theta is not self.cfg.theta:
            raise ConfigMismatch("world does not belong to this model")

    def step(self, f: LSeq, mu: Ordinal, sig: tuple, q: int):
        """Candidate ``mu``-successors of *f*, in increasing order of their
        value at ``mu``."""
        fm = eval_at(f, mu)
        if fm is ZERO:
            return
        for beta in self._values(sig, q, mu, fm):
            anchors = [(x, v) for x, v in f.anchors if x < mu]
            anchors.append((mu, beta))
            yield LSeq.make(f.lam, f.theta, anchors)

    # evaluation ------------------------------------------------------------

    def eval(self, phi: Formula, f: LSeq) -> bool:
        self._check_world(f)
        return self._eval(phi, f)

    def _eval(self, phi, f):
        if isinstance(phi, Top):
            return True
        if isinstance(phi, Bottom):
            return False
        if isinstance(phi, Not):
            return not self._eval(phi.arg, f)
        if isinstance(phi, And):
            return self._eval(phi.left, f) and self._eval(phi.right, f)
        if isinstance(phi, Or):
            return self._eval(phi.left, f) or self._eval(phi.right, f)
        if isinstance(phi, Implies):
            return (not self._eval(phi.left, f)) or self._eval(phi.right, f)
        key = (phi, f)
        r = self._memo.get(key)
        if r is not None:
            return r
        mu = phi.index
        if not mu < self.cfg.lam:
            raise LSeqError(f"modality {mu} is not below the length {self.cfg.lam}")
        chi = phi.arg
        sig = modalities(chi)
        q = self.budget_for(sig, modal_depth(chi))
        if isinstance(phi, Diamond):
            r = any(self._eval(chi, g) for g in self.step(f, mu, sig, q))
        else:
            r = all(self._eval(chi, g) for g in self.step(f, mu, sig, q))
        self._memo[key] = r
        return r

    # satisfiability --------------------------------------------------------

    def satisfiable(self, phi: Formula) -> Verdict:
        sig = modalities(phi)
        for x in sig:
            if not x < self.cfg.lam:
                raise LSeqError(f"modality {x} is not below the length {self.cfg.lam}")
        depth = modal_depth(phi)
        q = self.budget_for(sig, depth)
        bounded = self.capped(sig, depth) or self.is_bounded(phi)
        for a in self._values(sig, q, ZERO, self.cfg.theta):
            f = main_axis(a, self.cfg)
            if self._eval(phi, f):
                return Verdict("satisfiable", a, q, bounded, f)
        return Verdict("unknown" if bounded else "unsat", None, q, bounded)

    def valid(self, phi: Formula) -> Verdict:
        v = self.satisfiable(Not(phi))
        if v.result == "satisfiable":
            return Verdict("invalid", v.witness, v.budget, v.bounded, v.world)
        return Verdict("unknown" if v.bounded else "valid", None, v.budget, v.bounded)

    # bisimulation ----------------------------------------------------------

    def bisim(self, f: LSeq, g: LSeq, p: int, sig: tuple) -> bool:
        if p == 0 or f == g:
            return True
        key = (f, g, p, sig)
        r = self._bis.get(key)
        if r is not None:
            return r
        q = self.budget_for(sig, p - 1)
        r = True
        for mu in sig:
            fs = list(self.step(f, mu, sig, q))
            gs = list(self.step(g, mu, sig, q))
            if not all(any(self.bisim(a, b, p - 1, sig) for b in gs) for a in fs) or \
                    not all(any(self.bisim(a, b, p - 1, sig) for a in fs) for b in gs):
                r = False
                break
        self._bis[key] = r
        return r


_MODELS: dict = {}
_MODELS_LOCK = threading.Lock()


def model_for(cfg: ModelConfig) -> KripkeModel:
    with _MODELS_LOCK:
        m = _MODELS.get(cfg)
        if m is None:
            m = _MODELS[cfg] = KripkeModel(cfg)
        return m


def successors(f: LSeq, lam: Ordinal, context, cfg: ModelConfig) -> list:
    """Candidate ``lam``-successors of *f* for subformulas with the given
    ``(modalities, depth)`` context."""
    sig, p = context
    sig = coord_seq(sig)
    m = model_for(cfg)
    m._check_world(f)
    return list(m.step(f, lam, sig, m.budget_for(sig, p)))


def eval(phi: Formula, f: LSeq, cfg: ModelConfig) -> bool:  # noqa: A001
    return model_for(cfg).eval(phi, f)


def satisfiable(phi: Formula, cfg: ModelConfig) -> Ordinal | None:
    return model_for(cfg).satisfiable(phi).witness


def valid(phi: Formula, cfg: ModelConfig) -> bool:
    return model_for(cfg).valid(phi).result == "valid"


def decide(phi: Formula, cfg: ModelConfig, mode: str = "sat") -> Verdict:
    m = model_for(cfg)
    return m.satisfiable(phi) if mode == "sat" else m.valid(phi)


def bisim_check(f: LSeq, g: LSeq, p: int, sig, cfg: ModelConfig) -> bool:
    m = model_for(cfg)
    m._check_world(f)
    m._check_world(g)
    return m.bisim(f, g, p, coord_seq(sig))


def worm_verdict(A: Worm, B: Worm, xi: Ordinal, cfg: ModelConfig) -> Verdict:
    """Validity verdict for ``B -> <xi>A``."""
    if not cfg.meets_threshold():
        raise BelowThreshold(
            f"depth {cfg.theta} is below e^{cfg.lam} 1 = {cfg.threshold}; "
            "validity there does not reflect provability")
    return model_for(cfg).valid(Implies(B.to_formula(), Diamond(xi, A.to_formula())))


def worm_less(A: Worm, B: Worm, xi: Ordinal, cfg: ModelConfig) -> bool:
    """``A <_xi B``.  An inconclusive bounded search counts as False;
    use :func:`worm_verdict` to tell the two apart."""
    return worm_verdict(A, B, xi, cfg).result == "valid"
