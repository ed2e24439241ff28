from __future__ import annotations

# Closed GLP formulas: AST, parser and printer.
#
# Grammar (loosest first)::
#
#     imp  := or ('->' imp)?
#     or   := and ('|' and)*
#     and  := un ('&' un)*
#     un   := '~' un | '[' ord ']' un | '<' ord '>' un | atom
#     atom := 'T' | 'F' | '(' imp ')'

from dataclasses import dataclass

from .lseq import coord_seq
from .ordinal import Ordinal, OrdinalError, parse_ordinal

__all__ = [
    "Formula", "Bottom", "Top", "Not", "And", "Or", "Implies", "Box",
    "Diamond", "BOT", "TOP", "Worm", "FormulaSyntaxError", "parse",
    "modal_depth", "modalities", "to_json",
]


class FormulaSyntaxError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class Formula:
    __slots__ = ()

    def __str__(self):
        return _show(self, 0)

    # sugar for building formulas in code
    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)

    def __rshift__(self, other):
        return Implies(self, other)


@dataclass(frozen=True, repr=False)
class Bottom(Formula):
    def __repr__(self):
        return "F"


@dataclass(frozen=True, repr=False)
class Top(Formula):
    def __repr__(self):
        return "T"


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    index: Ordinal
    arg: Formula


@dataclass(frozen=True)
class Diamond(Formula):
    index: Ordinal
    arg: Formula


BOT = Bottom()
TOP = Top()


@dataclass(frozen=True)
class Worm:
    """``<x0>...<xn>T``; the empty worm is ``T``."""

    indices: tuple = ()

    def to_formula(self) -> Formula:
        phi = TOP
        for x in reversed(self.indices):
            phi = Diamond(x, phi)
        return phi

    def __str__(self):
        return str(self.to_formula())

    @classmethod
    def parse(cls, text: str) -> "Worm":
        phi = parse(text)
        idx = []
        while isinstance(phi, Diamond):
            idx.append(phi.index)
            phi = phi.arg
        if not isinstance(phi, Top):
            raise FormulaSyntaxError("a worm is <x0>...<xn>T", 0)
        return cls(tuple(idx))


# printing --------------------------------------------------------------------

_PREC = {Implies: 1, Or: 2, And: 3, Not: 4, Box: 4, Diamond: 4}


def _show(phi: Formula, need: int) -> str:
    if isinstance(phi, Bottom):
        return "F"
    if isinstance(phi, Top):
        return "T"
    prec = _PREC[type(phi)]
    if isinstance(phi, Not):
        s = "~" + _show(phi.arg, 4)
    elif isinstance(phi, Box):
        s = f"[{phi.index}]" + _show(phi.arg, 4)
    elif isinstance(phi, Diamond):
        s = f"<{phi.index}>" + _show(phi.arg, 4)
    elif isinstance(phi, Implies):
        s = _show(phi.left, 2) + " -> " + _show(phi.right, 1)
    else:
        op = " & " if isinstance(phi, And) else " | "
        s = _show(phi.left, prec) + op + _show(phi.right, prec + 1)
    return f"({s})" if prec < need else s


# parsing ---------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.s = text
        self.i = 0

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self, lit):
        self.ws()
        return self.s.startswith(lit, self.i)

    def eat(self, lit):
        if self.peek(lit):
            self.i += len(lit)
            return True
        return False

    def fail(self, msg):
        raise FormulaSyntaxError(msg, self.i)

    def parse(self) -> Formula:
        phi = self.imp()
        self.ws()
        if self.i != len(self.s):
            self.fail("unexpected input")
        return phi

    def imp(self):
        left = self.disj()
        if self.eat("->"):
            return Implies(left, self.imp())
        return left

    def disj(self):
        phi = self.conj()
        while self.eat("|"):
            phi = Or(phi, self.conj())
        return phi

    def conj(self):
        phi = self.unary()
        while self.eat("&"):
            phi = And(phi, self.unary())
        return phi

    def index(self, close):
        j = self.s.find(close, self.i)
        if j < 0:
            self.i = len(self.s)
            self.fail(f"missing {close!r}")
        try:
            x = parse_ordinal(self.s[self.i:j])
        except OrdinalError as exc:
            raise FormulaSyntaxError(f"bad modality index: {exc}", self.i) from exc
        self.i = j + 1
        return x

    def unary(self):
        if self.eat("~"):
            return Not(self.unary())
        if self.eat("["):
            x = self.index("]")
            return Box(x, self.unary())
        if self.peek("<") and not self.peek("<-"):
            self.i += 1
            x = self.index(">")
            return Diamond(x, self.unary())
        return self.atom()

    def atom(self):
        if self.eat("T") or self.eat("⊤"):
            return TOP
        if self.eat("F") or self.eat("⊥"):
            return BOT
        if self.eat("("):
            phi = self.imp()
            if not self.eat(")"):
                self.fail("expected ')'")
            return phi
        self.fail("expected a formula")


def parse(text: str) -> Formula:
    return _Parser(text).parse()


# measures --------------------------------------------------------------------

def modal_depth(phi: Formula) -> int:
    if isinstance(phi, (Top, Bottom)):
        return 0
    if isinstance(phi, Not):
        return modal_depth(phi.arg)
    if isinstance(phi, (Box, Diamond)):
        return 1 + modal_depth(phi.arg)
    return max(modal_depth(phi.left), modal_depth(phi.right))


def _indices(phi: Formula, acc: set):
    if isinstance(phi, (Box, Diamond)):
        acc.add(phi.index)
        _indices(phi.arg, acc)
    elif isinstance(phi, Not):
        _indices(phi.arg, acc)
    elif isinstance(phi, (And, Or, Implies)):
        _indices(phi.left, acc)
        _indices(phi.right, acc)
    return acc


def modalities(phi: Formula) -> tuple:
    """Sorted modality indices of *phi*, with 0 adjoined."""
    return coord_seq(_indices(phi, set()))


def to_json(phi: Formula):
    if isinstance(phi, Top):
        return {"top": True}
    if isinstance(phi, Bottom):
        return {"bottom": True}
    if isinstance(phi, Not):
        return {"not": to_json(phi.arg)}
    if isinstance(phi, (Box, Diamond)):
        tag = "box" if isinstance(phi, Box) else "diamond"
        return {tag: [str(phi.index), to_json(phi.arg)]}
    tag = {And: "and", Or: "or", Implies: "implies"}[type(phi)]
    return {tag: [to_json(phi.left), to_json(phi.right)]}
