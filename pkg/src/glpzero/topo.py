from __future__ import annotations

# Polytopological semantics on the main axis.
#
# A point is an ordinal ``x < theta``, identified with the exact sequence
# ``z -> l^z x``.  The topology ``T_lam`` has subbasic sets
# ``(a, b]_z = {x : a < l^z x <= b}`` for ``z < lam`` and initial segments
# ``[0, b]`` at coordinate ``lam``.  Only basic neighbourhoods
# ``B^lam_r(x)`` are ever built; a :class:`Neighborhood` stores the radius ``r``.
#
# ``<lam>psi`` holds at ``x`` when ``x`` is a limit point of the points
# satisfying ``psi`` in ``T_lam``.  The search only inspects one neighbourhood
# ``U*`` (an isolating neighbourhood cut down by approximation intervals) and
# canonical points ``ceil(t)(0)`` inside it.

from dataclasses import dataclass, field

from .config import ModelConfig
from .formula import (
    And, Bottom, Box, Diamond, Formula, Implies, Not, Or, Top,
    modal_depth, modalities,
)
from .hyper import (
    NormSetTooLarge, _max_rep, approx, hyperexp, hyperlog, last_nonzero,
    least_preimage, norm_set,
)
from .kripke import SearchCapExceeded, exact_budget, model_for
from .lseq import _delta_set, coord_seq, join, main_axis
from .ordinal import NEG_ONE, ZERO, Ordinal, add, end_log, left_sub, omega_pow, succ

__all__ = [
    "Neighborhood", "in_nbhd", "isolating_nbhd", "topo_eval", "agree",
    "TopoModel", "topo_model_for",
]


@dataclass(frozen=True)
class Neighborhood:
    """``B^lam_r(center)``: ``r(c) < l^c x <= l^c center`` for ``c`` in the
    radius and ``l^lam x <= l^lam center``."""

    lam: Ordinal
    center: Ordinal
    radius: dict = field(default_factory=dict)

    def __post_init__(self):
        for c, v in self.radius.items():
            if not c < self.lam:
                raise ValueError(f"radius coordinate {c} is not below {self.lam}")
            if not v < hyperlog(c, self.center):
                raise ValueError(f"radius value {v} at {c} does not lie below the center")

    def __hash__(self):
        return hash((self.lam, self.center, frozenset(self.radius.items())))

    def join(self, other: "Neighborhood") -> "Neighborhood":
        if other.lam is not self.lam or other.center is not self.center:
            raise ValueError("neighbourhoods of different points or topologies")
        return Neighborhood(self.lam, self.center, join(self.radius, other.radius))

    def to_json(self):
        return {
            "lambda": str(self.lam),
            "center": str(self.center),
            "radius": {str(c): str(v) for c, v in self.radius.items()},
        }


def in_nbhd(eta: Ordinal, nb: Neighborhood) -> bool:
    for c, v in nb.radius.items():
        x = hyperlog(c, eta)
        if not (v < x and x <= hyperlog(c, nb.center)):
            return False
    return hyperlog(nb.lam, eta) <= hyperlog(nb.lam, nb.center)


def isolating_nbhd(xi: Ordinal, lam: Ordinal, cfg: ModelConfig | None = None) -> Neighborhood:
    """A ``T_lam``-neighbourhood of *xi* in which *xi* is the only point with
    its value of ``l^lam``."""
    if cfg is not None and not lam < cfg.lam:
        raise ValueError(f"{lam} is not below the length {cfg.lam}")
    return Neighborhood(lam, xi, _iso(xi, lam))


def _iso(xi, lam) -> dict:
    if lam is ZERO:
        # the cap [0, xi] at coordinate 0 already pins xi down
        return {}
    if xi is ZERO:
        return {ZERO: NEG_ONE}  # {0} = [0, 0]_0
    top = hyperlog(lam, xi)
    if top is ZERO:
        rho = last_nonzero(xi)
        # l^rho xi = gamma + 1; cut down to (gamma, gamma+1] at rho
        r = join(_iso(xi, rho), {rho: _pred(hyperlog(rho, xi))})
    else:
        # cut at a coordinate whose last term is e^(w^rho) of l^lam xi; any
        # smaller last term has a smaller l^lam
        th = _anchor(xi, lam)
        r = join(_iso(xi, th), {th: _pred(hyperlog(th, xi))})
    r.setdefault(ZERO, NEG_ONE)
    return r


def _anchor(xi, lam):
    """For ``lam = alpha + w^rho`` with ``l^lam xi > 0``, the least
    ``th >= alpha`` of the form ``alpha + w^d1 + ...`` (``d_i < rho``) where
    the last term of ``l^th xi`` is in the range of ``e^(w^rho)``.  With
    ``rho = 0`` this is just ``alpha``."""
    alpha, rho = _pred(lam), end_log(lam)
    th, x = alpha, hyperlog(alpha, xi)
    while True:
        d, y = _max_rep(x.last_term())
        if not d < rho:
            return th
        th, x = add(th, omega_pow(d)), y


def _pred(x: Ordinal) -> Ordinal:
    """``x`` without its last Cantor term."""
    terms = x.term_list()
    out = ZERO
    for t in terms[:-1]:
        out = add(out, t)
    return out


class TopoModel:
    def __init__(self, cfg: ModelConfig):
        self.cfg = cfg
        self._memo: dict = {}

    def budget_for(self, sig, depth):
        return self.cfg.budget(exact_budget(sig, depth))

    def nbhd(self, xi: Ordinal, lam: Ordinal, sig: tuple, q: int) -> Neighborhood:
        """``U*``: isolating neighbourhood joined with the approximation
        intervals at the coordinates of *sig* below *lam*."""
        G = _delta_set(sig)
        r = _iso(xi, lam)
        r = join(r, {s: approx(hyperlog(s, xi), q, G) for s in sig if s < lam})
        return Neighborhood(lam, xi, r)

    def candidates(self, xi: Ordinal, lam: Ordinal, sig: tuple, q: int):
        """Points ``ceil(t)(0)`` of ``U*`` other than *xi*, ascending."""
        nb = self.nbhd(xi, lam, sig, q)
        dom = coord_seq(set(nb.radius) | set(sig) | {lam})
        G = _delta_set(sig)
        cap = hyperlog(lam, xi)
        # free values only occur at coordinates c >= lam where
        # e^(-lam+c) v <= cap, which bounds the part of the norm set needed
        below = ZERO
        for c in sig:
            if lam <= c:
                b = least_preimage(left_sub(lam, c), succ(cap))
                if below < b:
                    below = b
        try:
            ns = norm_set(q, G, self.cfg.max_norm_set, below)
        except NormSetTooLarge as exc:
            raise SearchCapExceeded(str(exc)) from exc
        free = [NEG_ONE] + ns.elements
        sigset = set(sig)

        def options(c):
            if c < lam:
                return [nb.radius.get(c, NEG_ONE)]
            if c in sigset:
                return free
            return [NEG_ONE]

        def fits(c, v):
            if c < lam:
                return v <= hyperlog(c, xi)
            # l^c eta = v and e^(-lam+c) l^c eta <= l^lam eta <= cap
            return hyperexp(left_sub(lam, c), v) <= cap

        vals = None
        for j in range(len(dom) - 1, -1, -1):
            c = dom[j]
            nxt = set()
            if vals is None:
                base = [ZERO]
            else:
                d = left_sub(c, dom[j + 1])
                base = [hyperexp(d, x) for x in vals]
            for ex in base:
                for a in options(c):
                    v = add(succ(a), ex)
                    if not fits(c, v):
                        break
                    nxt.add(v)
                    if len(nxt) > self.cfg.max_candidates:
                        raise SearchCapExceeded(
                            f"more than {self.cfg.max_candidates} candidates")
            vals = nxt
        out = [v for v in vals if v is not xi and v < self.cfg.theta and in_nbhd(v, nb)]
        out.sort(key=_Key)
        return out

    def eval(self, phi: Formula, xi: Ordinal) -> bool:
        if not xi < self.cfg.theta:
            raise ValueError(f"point {xi} is not below the depth {self.cfg.theta}")
        return self._eval(phi, xi)

    def _eval(self, phi, xi):
        if isinstance(phi, Top):
            return True
        if isinstance(phi, Bottom):
            return False
        if isinstance(phi, Not):
            return not self._eval(phi.arg, xi)
        if isinstance(phi, And):
            return self._eval(phi.left, xi) and self._eval(phi.right, xi)
        if isinstance(phi, Or):
            return self._eval(phi.left, xi) or self._eval(phi.right, xi)
        if isinstance(phi, Implies):
            return (not self._eval(phi.left, xi)) or self._eval(phi.right, xi)
        key = (phi, xi)
        r = self._memo.get(key)
        if r is not None:
            return r
        lam = phi.index
        if not lam < self.cfg.lam:
            raise ValueError(f"modality {lam} is not below the length {self.cfg.lam}")
        psi = phi.arg
        sig = modalities(psi)
        q = self.budget_for(sig, modal_depth(psi))
        cands = self.candidates(xi, lam, sig, q)
        if isinstance(phi, Diamond):
            r = any(self._eval(psi, eta) for eta in cands)
        else:
            # [lam]psi = ~<lam>~psi, and ~psi has the same modalities and depth
            r = all(self._eval(psi, eta) for eta in cands)
        self._memo[key] = r
        return r


class _Key:
    __slots__ = ("x",)

    def __init__(self, x):
        self.x = x

    def __lt__(self, o):
        return self.x < o.x


_MODELS: dict = {}


def topo_model_for(cfg: ModelConfig) -> TopoModel:
    m = _MODELS.get(cfg)
    if m is None:
        m = _MODELS[cfg] = TopoModel(cfg)
    return m


def topo_eval(phi: Formula, xi: Ordinal, cfg: ModelConfig) -> bool:
    return topo_model_for(cfg).eval(phi, xi)


def agree(phi: Formula, xi: Ordinal, cfg: ModelConfig) -> dict:
    """Run both semantics at *xi* and report."""
    k = model_for(cfg).eval(phi, main_axis(xi, cfg))
    t = topo_eval(phi, xi, cfg)
    rep = {
        "formula": str(phi),
        "point": str(xi),
        "kripke": k,
        "topo": t,
        "match": k == t,
        "bounded": model_for(cfg).is_bounded(phi),
    }
    if k != t:
        rep["trace"] = _trace(phi, xi, cfg)
    return rep


def _trace(phi, xi, cfg):
    """Both verdicts for every subformula, outermost first."""
    out = []
    stack = [phi]
    km, tm = model_for(cfg), topo_model_for(cfg)
    f = main_axis(xi, cfg)
    while stack:
        p = stack.pop()
        out.append({"formula": str(p), "kripke": km.eval(p, f), "topo": tm.eval(p, xi)})
        if isinstance(p, (Not, Box, Diamond)):
            stack.append(p.arg)
        elif isinstance(p, (And, Or, Implies)):
            stack.extend((p.right, p.left))
    return out
