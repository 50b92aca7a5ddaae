"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is a finite sum  w^e1*c1 + ... + w^ek*ck  with strictly
decreasing ordinal exponents e1 > ... > ek and positive integer
coefficients.  Zero is the empty sum.  Everything here is exact and
immutable; the module also provides the structure queries the rest of
the package leans on: Cantor-Bendixson rank, layer-subscript parity,
canonical fundamental sequences, and a notion of notation complexity
used by the certificate machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Tuple


class OrdinalError(Exception):
    """Base class for ordinal-notation errors."""


class NonCanonical(OrdinalError):
    """Term list violates CNF (exponents not strictly decreasing, bad coefficient)."""


class DepthExceeded(OrdinalError):
    """Exponent nesting deeper than the configured bound."""


class NotLimit(OrdinalError):
    """Fundamental sequence requested for a non-limit ordinal."""


class ParseError(OrdinalError):
    """Malformed ordinal notation string."""


# Nesting-depth knob.  A reported error, never silent truncation.
MAX_DEPTH = 8


@dataclass(frozen=True)
class Ordinal:
    # terms: ((exponent, coefficient), ...) with exponents strictly decreasing
    terms: Tuple[Tuple["Ordinal", int], ...] = ()

    # -- construction -------------------------------------------------

    def __post_init__(self) -> None:
        prev: Optional[Ordinal] = None
        for exp, coeff in self.terms:
            if not isinstance(coeff, int) or coeff < 1:
                raise NonCanonical(f"coefficient {coeff!r} must be a positive integer")
            if prev is not None and cmp(prev, exp) <= 0:
                raise NonCanonical("exponents must be strictly decreasing")
            prev = exp
        if self.depth() > MAX_DEPTH:
            raise DepthExceeded(f"exponent nesting exceeds {MAX_DEPTH}")

    def depth(self) -> int:
        if not self.terms:
            return 0
        return 1 + max(e.depth() for e, _ in self.terms)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def as_int(self) -> int:
        if self.is_zero():
            return 0
        if not self.is_finite():
            raise ValueError(f"{self} is not finite")
        return self.terms[0][1]

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero()

    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero()

    # -- order ----------------------------------------------------------

    def __lt__(self, other: "Ordinal") -> bool:
        return cmp(self, other) < 0

    def __le__(self, other: "Ordinal") -> bool:
        return cmp(self, other) <= 0

    def __gt__(self, other: "Ordinal") -> bool:
        return cmp(self, other) > 0

    def __ge__(self, other: "Ordinal") -> bool:
        return cmp(self, other) >= 0

    def __add__(self, other: "Ordinal") -> "Ordinal":
        return add(self, other)

    # -- display ----------------------------------------------------------

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal<{format_ordinal(self)}>"


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def nat(n: int) -> Ordinal:
    if n < 0:
        raise NonCanonical("ordinals are nonnegative")
    return ZERO if n == 0 else Ordinal(((ZERO, n),))


def omega_pow(e: Ordinal, coeff: int = 1) -> Ordinal:
    return Ordinal(((e, coeff),))


def cmp(a: Ordinal, b: Ordinal) -> int:
    """Strict total order on CNF: -1, 0, or 1."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = cmp(ea, eb)
        if c != 0:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) != len(b.terms):
        return -1 if len(a.terms) < len(b.terms) else 1
    return 0


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal addition: terms of a below b's leading exponent are absorbed."""
    if b.is_zero():
        return a
    if a.is_zero():
        return b
    lead = b.terms[0][0]
    merged = [t for t in a.terms if cmp(t[0], lead) > 0]
    # merge a's w^lead coefficient into b's first term if present
    extra = sum(c for e, c in a.terms if cmp(e, lead) == 0)
    first = (b.terms[0][0], b.terms[0][1] + extra)
    merged.append(first)
    merged.extend(b.terms[1:])
    return Ordinal(tuple(merged))


def succ(a: Ordinal) -> Ordinal:
    return add(a, ONE)


def pred(a: Ordinal) -> Ordinal:
    """Predecessor of a successor ordinal."""
    if not a.is_successor():
        raise NotLimit(f"{a} is not a successor")
    e, c = a.terms[-1]
    rest = a.terms[:-1]
    if c == 1:
        return Ordinal(rest)
    return Ordinal(rest + ((e, c - 1),))


def sub(b: Ordinal, a: Ordinal) -> Ordinal:
    """Left subtraction: the unique z with a + z = b, requires a <= b."""
    if cmp(a, b) > 0:
        raise NonCanonical(f"cannot subtract {a} from smaller {b}")
    i = 0
    while i < len(a.terms) and i < len(b.terms):
        (ea, ca), (eb, cb) = a.terms[i], b.terms[i]
        if cmp(ea, eb) != 0 or ca != cb:
            break
        i += 1
    if i == len(a.terms):
        return Ordinal(b.terms[i:])
    (ea, ca), (eb, cb) = a.terms[i], b.terms[i]
    if cmp(ea, eb) == 0 and ca < cb:
        return Ordinal(((eb, cb - ca),) + b.terms[i + 1 :])
    # a's remaining head is absorbed: difference starts at b's term i
    return Ordinal(b.terms[i:])


def omega_pow_times(r: Ordinal, q: Ordinal) -> Ordinal:
    """w^r * q  (left multiplication of q by the power w^r)."""
    if q.is_zero():
        return ZERO
    return Ordinal(tuple((add(r, e), c) for e, c in q.terms))


def split_by_rank(x: Ordinal, r: Ordinal) -> Tuple[Ordinal, Ordinal]:
    """Write x = w^r * q + rem with rem < w^r; returns (q, rem)."""
    hi = []
    lo = []
    for e, c in x.terms:
        if cmp(e, r) >= 0:
            hi.append((sub(e, r), c))
        else:
            lo.append((e, c))
    return Ordinal(tuple(hi)), Ordinal(tuple(lo))


def rank(x: Ordinal) -> Ordinal:
    """Cantor-Bendixson rank in any [0, top]: exponent of the last CNF term.

    rank(0) = 0 by convention (0 is an isolated point)."""
    if x.is_zero():
        return ZERO
    return x.terms[-1][0]


def parity_of_rank(r: Ordinal) -> str:
    """Parity of the layer subscript 1 + r.

    A point of rank r sits in layer I_{1+r}.  The subscript is 'even'
    when it has the form (zero or limit) + 2n.  For finite r the
    subscript is r + 1; for infinite r it is r itself."""
    s = succ(ZERO) if r.is_zero() else add(ONE, r)
    # finite part of s = coefficient of the trailing w^0 term, if any
    fin = s.terms[-1][1] if s.terms and s.terms[-1][0].is_zero() else 0
    return "even" if fin % 2 == 0 else "odd"


@dataclass(frozen=True)
class PointClass:
    rank: Ordinal
    kind: str  # 'zero' | 'successor' | 'limit'
    i_index_parity: str  # 'even' | 'odd'


def classify_point(x: Ordinal) -> PointClass:
    if x.is_zero():
        kind = "zero"
    elif x.is_successor():
        kind = "successor"
    else:
        kind = "limit"
    r = rank(x)
    return PointClass(rank=r, kind=kind, i_index_parity=parity_of_rank(r))


def fundamental_seq(x: Ordinal, n: int) -> Ordinal:
    """n-th element (n >= 1) of the canonical increasing sequence with sup x."""
    if not x.is_limit():
        raise NotLimit(f"{x} is not a limit ordinal")
    if n < 1:
        raise ValueError("n must be >= 1")
    e, c = x.terms[-1]
    prefix = Ordinal(x.terms[:-1] + (((e, c - 1),) if c > 1 else ()))
    if e.is_successor():
        step = omega_pow(pred(e), n)
    else:
        step = omega_pow(fundamental_seq(e, n))
    return add(prefix, step)


def complexity(x: Ordinal) -> int:
    """Notation complexity: max of term count, coefficients, and
    1 + complexity of each exponent.  complexity(0) = 0."""
    if x.is_zero():
        return 0
    worst = len(x.terms)
    for e, c in x.terms:
        worst = max(worst, c, 1 + complexity(e))
    return worst


def iter_below(x: Ordinal) -> Iterator[Ordinal]:  # pragma: no cover - debugging aid
    """Yield finitely many canonical approximants below x (not exhaustive)."""
    if x.is_limit():
        for n in range(1, 5):
            yield fundamental_seq(x, n)
    elif x.is_successor():
        yield pred(x)


# ---------------------------------------------------------------------------
# notation: parse / format
# ---------------------------------------------------------------------------


def format_ordinal(x: Ordinal) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for e, c in x.terms:
        if e.is_zero():
            parts.append(str(c))
            continue
        if e.is_finite() and e.as_int() == 1:
            base = "w"
        elif e.is_finite():
            base = f"w^{e.as_int()}"
        else:
            base = f"w^({format_ordinal(e)})"
        parts.append(base if c == 1 else f"{base}*{c}")
    return " + ".join(parts)


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r} at position {self.pos} in {self.text!r}")
        self.pos += 1

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError(f"expected number at position {start} in {self.text!r}")
        return int(self.text[start : self.pos])

    def ordinal(self) -> Ordinal:
        terms = [self.term()]
        while self.peek() == "+":
            self.expect("+")
            terms.append(self.term())
        result = []
        prev: Optional[Ordinal] = None
        for e, c in terms:
            if prev is not None and cmp(prev, e) <= 0:
                raise NonCanonical(
                    f"exponents not strictly decreasing in {self.text!r}"
                )
            prev = e
            result.append((e, c))
        return Ordinal(tuple(result))

    def exponent(self) -> Ordinal:
        # the part after a leading 'w': nothing, ^(ordinal), ^nat, or a
        # right-nested bare tower like w^w^2 (coefficients never bind here)
        if self.peek() != "^":
            return ONE
        self.expect("^")
        ch = self.peek()
        if ch == "(":
            self.expect("(")
            exp = self.ordinal()
            self.expect(")")
            return exp
        if ch == "w":
            self.pos += 1
            return omega_pow(self.exponent())
        return nat(self.nat())

    def term(self) -> Tuple[Ordinal, int]:
        ch = self.peek()
        if ch == "w":
            self.pos += 1
            exp = self.exponent()
            coeff = 1
            if self.peek() == "*":
                self.expect("*")
                coeff = self.nat()
                if coeff == 0:
                    raise NonCanonical("zero coefficient")
            return exp, coeff
        if ch.isdigit():
            n = self.nat()
            if n == 0:
                raise NonCanonical("zero term")
            return ZERO, n
        raise ParseError(f"unexpected {ch!r} at position {self.pos} in {self.text!r}")


def parse_ordinal(text: str) -> Ordinal:
    text = text.strip()
    if text == "0":
        return ZERO
    p = _Parser(text)
    result = p.ordinal()
    p.skip_ws()
    if p.pos != len(p.text):
        raise ParseError(f"trailing input at position {p.pos} in {text!r}")
    return result
