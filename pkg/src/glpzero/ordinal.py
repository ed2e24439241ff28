from __future__ import annotations

# Ordinal notations below Gamma_0.
#
# An ordinal is stored as a non-increasing tuple of principal terms
# ``phi(a, b)`` (Veblen normal form).  ``phi(0, b)`` is ``w^b``, so every
# ordinal below epsilon_0 is in plain Cantor normal form, and the natural
# number ``n`` is ``n`` copies of ``phi(0, 0) = 1``.
#
# Terms and ordinals are interned: two notations denote the same ordinal
# iff they are the same Python object, so ``==`` is identity and hashing is
# cheap.  Comparison results are memoized.

import threading
from enum import Enum

__all__ = [
    "Ordinal", "NegOne", "NEG_ONE", "OrdinalError", "NotationOverflow",
    "Kind", "ZERO", "ONE", "OMEGA", "nat", "veblen", "omega_pow", "add",
    "left_sub", "end_log", "classify", "compare", "succ", "parse_ordinal",
    "to_json", "from_json", "ordinal_max",
]


class OrdinalError(ValueError):
    pass


class NotationOverflow(OrdinalError):
    """Raised when a result would reach Gamma_0."""


_LOCK = threading.Lock()
_TERMS: dict = {}
_ORDS: dict = {}
_CMP: dict = {}


class _Term:
    """Principal term phi(a, b); always built through :func:`_term`."""

    __slots__ = ("a", "b", "_ord")

    def __reduce__(self):
        return (_term, (self.a, self.b))


def _term(a: "Ordinal", b: "Ordinal") -> _Term:
    key = (a, b)
    t = _TERMS.get(key)
    if t is None:
        with _LOCK:
            t = _TERMS.get(key)
            if t is None:
                t = object.__new__(_Term)
                t.a, t.b, t._ord = a, b, None
                _TERMS[key] = t
    return t


def _ord_of(t: _Term) -> "Ordinal":
    o = t._ord
    if o is None:
        o = t._ord = Ordinal._make((t,))
    return o


class Ordinal:
    """An interned ordinal notation.  Do not instantiate directly."""

    __slots__ = ("terms", "__weakref__")

    @classmethod
    def _make(cls, terms: tuple) -> "Ordinal":
        o = _ORDS.get(terms)
        if o is None:
            with _LOCK:
                o = _ORDS.get(terms)
                if o is None:
                    o = object.__new__(cls)
                    o.terms = terms
                    _ORDS[terms] = o
        return o

    def __reduce__(self):
        return (_rebuild, (self.terms,))

    # ordering ------------------------------------------------------------

    def __lt__(self, other):
        if other is NEG_ONE:
            return False
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) < 0

    def __le__(self, other):
        if other is NEG_ONE:
            return False
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) <= 0

    def __gt__(self, other):
        if other is NEG_ONE:
            return True
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) > 0

    def __ge__(self, other):
        if other is NEG_ONE:
            return True
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) >= 0

    def __add__(self, other):
        if isinstance(other, int):
            other = nat(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return add(self, other)

    def __radd__(self, other):
        if isinstance(other, int):
            return add(nat(other), self)
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    # structure -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_principal(self) -> bool:
        """Additively indecomposable (a single term)."""
        return len(self.terms) == 1

    @property
    def is_finite(self) -> bool:
        return all(t is _ONE_TERM for t in self.terms)

    def as_int(self) -> int:
        if not self.is_finite:
            raise OrdinalError(f"{self} is not finite")
        return len(self.terms)

    def last_term(self) -> "Ordinal":
        if not self.terms:
            raise OrdinalError("0 has no terms")
        return _ord_of(self.terms[-1])

    def first_term(self) -> "Ordinal":
        if not self.terms:
            raise OrdinalError("0 has no terms")
        return _ord_of(self.terms[0])

    def term_list(self) -> list["Ordinal"]:
        return [_ord_of(t) for t in self.terms]

    @property
    def phi_args(self) -> tuple["Ordinal", "Ordinal"]:
        """``(a, b)`` for a principal ordinal ``phi(a, b)``."""
        if len(self.terms) != 1:
            raise OrdinalError(f"{self} is not principal")
        t = self.terms[0]
        return t.a, t.b

    def __str__(self):
        return _render(self, _ASCII)

    def __repr__(self):
        return f"Ordinal({_render(self, _ASCII)!r})"

    def pretty(self) -> str:
        return _render(self, _UNICODE)


def _rebuild(terms):
    return Ordinal._make(terms)


ZERO = Ordinal._make(())
_ONE_TERM = _term(ZERO, ZERO)
ONE = _ord_of(_ONE_TERM)


class NegOne:
    """The floor sentinel -1: below every ordinal, ``-1 + 1 = 0``."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = object.__new__(cls)
        return cls._inst

    def __reduce__(self):
        return (NegOne, ())

    def __lt__(self, other):
        if isinstance(other, Ordinal):
            return True
        if other is self:
            return False
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, (Ordinal, NegOne)):
            return True
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, (Ordinal, NegOne)):
            return False
        return NotImplemented

    def __ge__(self, other):
        if other is self:
            return True
        if isinstance(other, Ordinal):
            return False
        return NotImplemented

    def __add__(self, other):
        if other == 1 or other is ONE:
            return ZERO
        raise OrdinalError("only -1 + 1 is defined on the floor sentinel")

    def __str__(self):
        return "-1"

    __repr__ = __str__


NEG_ONE = NegOne()


def succ(x) -> Ordinal:
    """``x + 1`` for an ordinal or the sentinel."""
    if x is NEG_ONE:
        return ZERO
    return add(x, ONE)


# comparison ------------------------------------------------------------------

def _cmp_term(s: _Term, t: _Term) -> int:
    if s is t:
        return 0
    c = compare(s.a, t.a)
    if c == 0:
        return compare(s.b, t.b)
    if c < 0:
        # phi(a1,b1) < phi(a2,b2) iff b1 < phi(a2,b2)
        return -1 if compare(s.b, _ord_of(t)) < 0 else 1
    # phi(a1,b1) < phi(a2,b2) iff phi(a1,b1) <= b2
    return -1 if compare(_ord_of(s), t.b) <= 0 else 1


def compare(x: Ordinal, y: Ordinal) -> int:
    """Three-way comparison: -1, 0 or 1."""
    if x is y:
        return 0
    key = (x, y)
    r = _CMP.get(key)
    if r is not None:
        return r
    xs, ys = x.terms, y.terms
    r = 0
    for s, t in zip(xs, ys):
        if s is not t:
            r = _cmp_term(s, t)
            break
    else:
        r = (len(xs) > len(ys)) - (len(xs) < len(ys))
    _CMP[key] = r
    _CMP[(y, x)] = -r
    return r


def ordinal_max(x, y):
    return y if x < y else x


# constructors and arithmetic -------------------------------------------------

def nat(n: int) -> Ordinal:
    if n < 0:
        raise OrdinalError("negative natural")
    return Ordinal._make((_ONE_TERM,) * n)


def veblen(a: Ordinal, b: Ordinal) -> Ordinal:
    """``phi_a(b)`` in normal form (collapses fixpoint arguments)."""
    if len(b.terms) == 1:
        tb = b.terms[0]
        if compare(tb.a, a) > 0:
            return b
    return _ord_of(_term(a, b))


def omega_pow(a: Ordinal) -> Ordinal:
    return veblen(ZERO, a)


OMEGA = omega_pow(ONE)


def add(x: Ordinal, y: Ordinal) -> Ordinal:
    if not y.terms:
        return x
    if not x.terms:
        return y
    lead = y.terms[0]
    xs = x.terms
    k = len(xs)
    while k and _cmp_term(xs[k - 1], lead) < 0:
        k -= 1
    return Ordinal._make(xs[:k] + y.terms)


def left_sub(x: Ordinal, z: Ordinal) -> Ordinal:
    """The unique ``eta`` with ``x + eta = z``; requires ``x <= z``."""
    if compare(x, z) > 0:
        raise OrdinalError(f"left_sub: {x} > {z}")
    xs, zs = x.terms, z.terms
    i = 0
    while i < len(xs) and xs[i] is zs[i]:
        i += 1
    return Ordinal._make(zs[i:])


def end_log(x: Ordinal) -> Ordinal:
    """Exponent of the last Cantor-normal-form term; ``end_log(0) = 0``."""
    if not x.terms:
        return ZERO
    t = x.terms[-1]
    if t.a is ZERO:
        return t.b
    return _ord_of(t)


class Kind(Enum):
    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


def classify(x: Ordinal) -> Kind:
    if not x.terms:
        return Kind.ZERO
    if x.terms[-1] is _ONE_TERM:
        return Kind.SUCCESSOR
    return Kind.LIMIT


# printing --------------------------------------------------------------------

_ASCII = "ascii"
_UNICODE = "unicode"
_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def _render_term(t: _Term, style: str) -> str:
    uni = style == _UNICODE
    if t.a is ZERO:
        if t.b is ZERO:
            return "1"
        if t.b is ONE:
            return "ω" if uni else "w"
        return ("ω^(%s)" if uni else "w^(%s)") % _render(t.b, style)
    if uni:
        if t.a is ONE and t.b.is_finite:
            return "ε" + str(t.b.as_int()).translate(_SUB)
        return "φ(%s,%s)" % (_render(t.a, style), _render(t.b, style))
    return "phi(%s,%s)" % (_render(t.a, style), _render(t.b, style))


def _render(x: Ordinal, style: str) -> str:
    if not x.terms:
        return "0"
    parts = []
    terms = x.terms
    i = 0
    while i < len(terms):
        j = i
        while j < len(terms) and terms[j] is terms[i]:
            j += 1
        k = j - i
        if terms[i] is _ONE_TERM:
            parts.append(str(k))
        elif k == 1:
            parts.append(_render_term(terms[i], style))
        else:
            parts.append(_render_term(terms[i], style) + ("·%d" if style == _UNICODE else "*%d") % k)
        i = j
    return "+".join(parts)


# parsing ---------------------------------------------------------------------

class _OrdParser:
    def __init__(self, text: str, allow_log: bool):
        self.s = "".join(text.split())
        self.i = 0
        self.allow_log = allow_log

    def error(self, msg):
        raise OrdinalError(f"{msg} at position {self.i} in {self.s!r}")

    def peek(self, lit):
        return self.s.startswith(lit, self.i)

    def eat(self, lit):
        if self.peek(lit):
            self.i += len(lit)
            return True
        return False

    def expect(self, lit):
        if not self.eat(lit):
            self.error(f"expected {lit!r}")

    def natural(self) -> int:
        j = self.i
        while j < len(self.s) and self.s[j].isdigit():
            j += 1
        if j == self.i:
            self.error("expected a natural number")
        n = int(self.s[self.i:j])
        self.i = j
        return n

    def parse(self) -> Ordinal:
        x = self.sum()
        if self.i != len(self.s):
            self.error("unexpected input")
        return x

    def sum(self) -> Ordinal:
        x = self.prod()
        while self.eat("+"):
            x = add(x, self.prod())
        return x

    def prod(self) -> Ordinal:
        x = self.atom()
        while self.eat("*"):
            n = self.natural()
            y = ZERO
            for _ in range(n):
                y = add(y, x)
            x = y
        return x

    def pair(self):
        self.expect("(")
        a = self.sum()
        self.expect(",")
        b = self.sum()
        self.expect(")")
        return a, b

    def atom(self) -> Ordinal:
        from . import hyper  # local: hyper depends on this module

        if self.i < len(self.s) and self.s[self.i].isdigit():
            return nat(self.natural())
        if self.eat("("):
            x = self.sum()
            self.expect(")")
            return x
        if self.eat("phi") or self.eat("φ"):
            return veblen(*self.pair())
        if self.eat("w") or self.eat("ω"):
            if self.eat("^"):
                return omega_pow(self.atom())
            return OMEGA
        if self.peek("e("):
            self.i += 1
            z, x = self.pair()
            return hyper.hyperexp(z, x)
        if self.allow_log and self.peek("l("):
            self.i += 1
            z, x = self.pair()
            return hyper.hyperlog(z, x)
        self.error("expected an ordinal")


def parse_ordinal(text: str, allow_log: bool = False) -> Ordinal:
    """Parse the notation grammar (``0``, naturals, ``w``, ``w^(x)``,
    ``phi(a,b)``, ``e(z,x)``, ``+``, ``*n``).  ``l(z,x)`` is accepted when
    *allow_log* is set."""
    return _OrdParser(text, allow_log).parse()


# json ------------------------------------------------------------------------

def to_json(x: Ordinal):
    if x.is_finite:
        return {"nat": len(x.terms)}
    parts = []
    i = 0
    terms = x.terms
    while i < len(terms):
        t = terms[i]
        if t is _ONE_TERM:
            parts.append({"nat": len(terms) - i})
            break
        parts.append({"phi": [to_json(t.a), to_json(t.b)]})
        i += 1
    if len(parts) == 1:
        return parts[0]
    return {"sum": parts}


def from_json(obj) -> Ordinal:
    if "nat" in obj:
        return nat(int(obj["nat"]))
    if "phi" in obj:
        a, b = obj["phi"]
        return veblen(from_json(a), from_json(b))
    if "sum" in obj:
        x = ZERO
        for part in obj["sum"]:
            x = add(x, from_json(part))
        return x
    raise OrdinalError(f"bad ordinal json: {obj!r}")
