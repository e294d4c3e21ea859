"""Sparse multivariate polynomials over Q or F_p, truncated power-series style.

A :class:`Poly` maps exponent tuples to nonzero field elements. Two input
forms are accepted: structured ``[[coeff, [e1, ..., er]], ...]`` and strings
such as ``"3*X1^2 - X2"`` (``X`` alone when r = 1, rationals as ``p/q``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..linalg import QQ, Field

DEFAULT_TRUNCATION = 12


@dataclass(frozen=True)
class PolyRing:
    num_vars: int
    field: Field = QQ
    truncation: int = DEFAULT_TRUNCATION

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("need at least one variable")

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {(0,) * self.num_vars: 1})

    def const(self, c):
        return Poly(self, {(0,) * self.num_vars: c})

    def var(self, i):
        e = [0] * self.num_vars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self):
        return [self.var(i) for i in range(self.num_vars)]

    def monomial(self, exps, coeff=1):
        return Poly(self, {tuple(exps): coeff})

    def parse(self, obj):
        """Parse a string or structured list into a Poly."""
        if isinstance(obj, Poly):
            return obj
        if isinstance(obj, str):
            return _Parser(self, obj).parse()
        if isinstance(obj, (list, tuple)):
            if len(obj) == 2 and isinstance(obj[1], (list, tuple)) and all(isinstance(e, int) for e in obj[1]) \
                    and not isinstance(obj[0], (list, tuple)):
                obj = [obj]
            out = self.zero()
            for term in obj:
                if isinstance(term, str):
                    out = out + _Parser(self, term).parse()
                    continue
                coeff, exps = term
                if len(exps) != self.num_vars:
                    raise ValueError(f"exponent vector {exps} has wrong length")
                if any(e < 0 for e in exps):
                    raise ValueError("negative exponent")
                out = out + self.monomial(exps, Fraction(coeff) if isinstance(coeff, str) else coeff)
            return out
        if isinstance(obj, (int, Fraction)):
            return self.const(obj)
        raise ValueError(f"cannot parse polynomial from {obj!r}")


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        F = ring.field
        clean = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != ring.num_vars:
                raise ValueError("exponent vector has wrong length")
            c = F.coerce(c)
            if c != 0:
                clean[e] = c
        self.terms = clean

    def _new(self, terms):
        return Poly(self.ring, terms)

    def _coerce_other(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce_other(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce_other(other))

    def __rsub__(self, other):
        return self._coerce_other(other) - self

    def __mul__(self, other):
        other = self._coerce_other(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                return self == self.ring.const(other)
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((0,) * self.ring.num_vars, self.ring.field.zero)

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def low_degree(self):
        return min((sum(e) for e in self.terms), default=-1)

    def truncate(self, deg=None):
        deg = self.ring.truncation if deg is None else deg
        return self._new({e: c for e, c in self.terms.items() if sum(e) <= deg})

    def linear_part(self):
        """Coefficients of X_1, ..., X_r; requires zero constant term."""
        if self.constant_term() != 0:
            raise ValueError("polynomial has nonzero constant term")
        r = self.ring.num_vars
        out = []
        for i in range(r):
            e = tuple(int(i == j) for j in range(r))
            out.append(self.terms.get(e, self.ring.field.zero))
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0])))

    def to_struct(self):
        return [[_fmt_coeff(c), list(e)] for e, c in self.sorted_terms()]

    def __repr__(self):
        if not self.terms:
            return "0"
        r = self.ring.num_vars
        parts = []
        for e, c in self.sorted_terms():
            mon = "*".join(
                (f"X{i + 1}" if r > 1 else "X") + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            cs = _fmt_coeff(c)
            if not mon:
                parts.append(str(cs))
            elif c == 1:
                parts.append(mon)
            else:
                parts.append(f"{cs}*{mon}")
        return " + ".join(parts)


def _fmt_coeff(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else str(c)
    return c


class _Parser:
    """Recursive descent for ``expr := term (('+'|'-') term)*``,
    ``term := factor ('*' factor)*``, ``factor := atom ('^' int)?``,
    ``atom := number | 'X' int? | '(' expr ')' | '-' factor``.
    Numbers may be ``p/q`` rationals.
    """

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.s = text.replace(" ", "")
        self.i = 0

    def error(self, msg):
        raise ValueError(f"{msg} at position {self.i} in {self.s!r}")

    def peek(self):
        return self.s[self.i] if self.i < len(self.s) else ""

    def parse(self):
        if not self.s:
            self.error("empty polynomial")
        out = self.expr()
        if self.i != len(self.s):
            self.error("unexpected character")
        return out

    def expr(self):
        out = self.term()
        while self.peek() in ("+", "-"):
            op = self.s[self.i]
            self.i += 1
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self):
        out = self.factor()
        while self.peek() == "*":
            self.i += 1
            out = out * self.factor()
        return out

    def factor(self):
        if self.peek() == "-":
            self.i += 1
            return -self.factor()
        base = self.atom()
        if self.peek() == "^":
            self.i += 1
            k = self.integer()
            base = base**k
        return base

    def integer(self):
        start = self.i
        while self.peek().isdigit():
            self.i += 1
        if start == self.i:
            self.error("expected integer")
        return int(self.s[start:self.i])

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.i += 1
            out = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.i += 1
            return out
        if ch in ("X", "x"):
            self.i += 1
            if self.peek().isdigit():
                k = self.integer()
                if not 1 <= k <= self.ring.num_vars:
                    self.error(f"variable X{k} out of range")
                return self.ring.var(k - 1)
            if self.ring.num_vars != 1:
                self.error("bare X only allowed with one variable")
            return self.ring.var(0)
        if ch.isdigit():
            num = self.integer()
            if self.peek() == "/":
                self.i += 1
                den = self.integer()
                return self.ring.const(Fraction(num, den))
            return self.ring.const(num)
        self.error("unexpected token")
