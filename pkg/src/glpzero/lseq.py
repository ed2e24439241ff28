from __future__ import annotations

# l-sequences, radii and the ceiling construction.
#
# An :class:`LSeq` is stored by anchors ``(x_j, v_j)``: on ``[x_j, x_{j+1})``
# the sequence is ``z -> l^(-x_j + z) v_j``.  Anchors are normalized so that
# an anchor is only kept where the value departs from the continuation of
# the previous segment; exact sequences are then exactly the one-anchor ones.
#
# Radii are plain mappings ``coordinate -> Ordinal | NEG_ONE``.

from dataclasses import dataclass
from typing import Iterable, Mapping

from .config import ModelConfig
from .hyper import approx, hyperexp, hyperlog
from .ordinal import (
    NEG_ONE, ZERO, Ordinal, OrdinalError, add, from_json, left_sub, succ,
    to_json,
)

__all__ = [
    "LSeq", "LSeqError", "DepthOverflow", "coord_seq", "deltas", "eval_at",
    "is_lseq", "is_exact", "main_axis", "ceil", "ceil_values", "concat",
    "radius_of", "floor_seq", "close", "join",
]


class LSeqError(ValueError):
    pass


class DepthOverflow(LSeqError):
    pass


def coord_seq(coords: Iterable[Ordinal]) -> tuple:
    """Sorted, deduplicated coordinates with 0 adjoined."""
    s = set(coords)
    s.add(ZERO)
    return tuple(sorted(s, key=_K))


class _K:
    __slots__ = ("x",)

    def __init__(self, x):
        self.x = x

    def __lt__(self, o):
        return self.x < o.x


def deltas(sig: tuple) -> tuple:
    """``{-s_i + s_(i+1)}`` as a sorted tuple."""
    return tuple(sorted(_delta_set(sig), key=_K))


def _delta_set(sig):
    return {left_sub(a, b) for a, b in zip(sig, sig[1:])}


@dataclass(frozen=True)
class LSeq:
    lam: Ordinal
    theta: Ordinal
    anchors: tuple

    def __post_init__(self):
        an = self.anchors
        if not an or an[0][0] is not ZERO:
            raise LSeqError("first anchor must sit at coordinate 0")
        for (x, _), (y, _) in zip(an, an[1:]):
            if not x < y:
                raise LSeqError("anchor coordinates must increase")
        if not an[-1][0] < self.lam:
            raise LSeqError("anchor coordinate outside the length")

    @classmethod
    def make(cls, lam, theta, anchors) -> "LSeq":
        out = []
        for x, v in anchors:
            if out:
                px, pv = out[-1]
                if not px < x:
                    raise LSeqError("anchor coordinates must increase")
                if hyperlog(left_sub(px, x), pv) is v:
                    continue
            out.append((x, v))
        return cls(lam, theta, tuple(out))

    def __call__(self, z: Ordinal) -> Ordinal:
        return eval_at(self, z)

    def with_config(self, cfg: ModelConfig) -> "LSeq":
        return LSeq(cfg.lam, cfg.theta, self.anchors)

    def to_json(self):
        return {
            "lambda": str(self.lam),
            "theta": str(self.theta),
            "anchors": [[str(x), str(v)] for x, v in self.anchors],
        }

    @classmethod
    def from_json(cls, obj) -> "LSeq":
        from .ordinal import parse_ordinal

        def ordv(v):
            return from_json(v) if isinstance(v, dict) else parse_ordinal(str(v))
        return cls.make(ordv(obj["lambda"]), ordv(obj["theta"]),
                        [(ordv(x), ordv(v)) for x, v in obj["anchors"]])

    def __str__(self):
        inner = ", ".join(f"{x}:{v}" for x, v in self.anchors)
        return f"LSeq[{inner}]"


def eval_at(f: LSeq, z: Ordinal) -> Ordinal:
    if not z < f.lam:
        raise LSeqError(f"coordinate {z} out of range (length {f.lam})")
    x, v = f.anchors[0]
    for y, w in f.anchors[1:]:
        if z < y:
            break
        x, v = y, w
    return hyperlog(left_sub(x, z), v)


def is_lseq(f: LSeq) -> bool:
    """Each anchor value is at most the continuation of the previous
    segment, and ``f(0) < theta``."""
    if not f.anchors[0][1] < f.theta:
        return False
    for (x, v), (y, w) in zip(f.anchors, f.anchors[1:]):
        if hyperlog(left_sub(x, y), v) < w:
            return False
    return True


def is_exact(f: LSeq) -> bool:
    return len(f.anchors) == 1


def main_axis(a: Ordinal, cfg: ModelConfig) -> LSeq:
    if not a < cfg.theta:
        raise DepthOverflow(f"{a} is not below the depth {cfg.theta}")
    return LSeq(cfg.lam, cfg.theta, ((ZERO, a),))


def ceil_values(r: Mapping) -> tuple[tuple, list]:
    """Coordinates and values of the ceiling at the radius coordinates."""
    sig = coord_seq(r)
    if set(sig) != set(r):
        raise LSeqError("radius domain must contain 0")
    vals = [None] * len(sig)
    vals[-1] = succ(r[sig[-1]])
    for i in range(len(sig) - 2, -1, -1):
        d = left_sub(sig[i], sig[i + 1])
        vals[i] = add(succ(r[sig[i]]), hyperexp(d, vals[i + 1]))
    return sig, vals


def ceil(r: Mapping, cfg: ModelConfig) -> LSeq:
    sig, vals = ceil_values(r)
    if not sig[-1] < cfg.lam:
        raise LSeqError("radius coordinate outside the length")
    if not vals[0] < cfg.theta:
        raise DepthOverflow(f"ceiling value {vals[0]} reaches the depth {cfg.theta}")
    return LSeq.make(cfg.lam, cfg.theta, list(zip(sig, vals)))


def concat(f: LSeq, lam: Ordinal, g: LSeq) -> LSeq:
    """``f`` below *lam*, ``g`` from *lam* on."""
    if f.lam is not g.lam or f.theta is not g.theta:
        raise LSeqError("sequences come from different models")
    gl = eval_at(g, lam)
    if eval_at(f, lam) < gl:
        raise LSeqError("concatenation needs g(lam) <= f(lam)")
    anchors = [(x, v) for x, v in f.anchors if x < lam]
    anchors.append((lam, gl))
    anchors.extend((x, v) for x, v in g.anchors if lam < x)
    return LSeq.make(f.lam, f.theta, anchors)


def radius_of(f: LSeq, sig: Iterable[Ordinal], p: int) -> dict:
    sig = coord_seq(sig)
    G = _delta_set(sig)
    return {s: approx(eval_at(f, s), p, G) for s in sig}


def floor_seq(f: LSeq, sig: Iterable[Ordinal], p: int, cfg: ModelConfig | None = None) -> LSeq:
    if cfg is None:
        cfg = ModelConfig(theta=f.theta, lam=f.lam)
    return ceil(radius_of(f, sig, p), cfg)


def close(f: LSeq, g: LSeq, p: int, sig: Iterable[Ordinal]) -> bool:
    sig = coord_seq(sig)
    G = _delta_set(sig)
    return all(approx(eval_at(f, s), p, G) is approx(eval_at(g, s), p, G) for s in sig)


def join(r: Mapping, s: Mapping) -> dict:
    t = dict(r)
    for k, v in s.items():
        if k in t:
            if t[k] < v:
                t[k] = v
        else:
            t[k] = v
    return t

