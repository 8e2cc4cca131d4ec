"""Exact polynomials: integer polynomials in ``t`` and sparse polynomials in the cell unknowns.

Unknowns are oriented edges ``(i, j)`` (1-based) standing for ``p_ij``.
A monomial is a tuple of unknowns sorted by the variable order, repeated
for higher powers.  Variables are ordered ``p_ij > p_kl`` when ``(i, j)``
is lexicographically smaller than ``(k, l)``.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

Var = tuple  # (i, j)


class TPoly:
    """Polynomial in ``t`` with integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "TPoly":
        return cls([0] * degree + [coeff])

    @classmethod
    def constant(cls, value: int) -> "TPoly":
        return cls([value])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = TPoly([other])
        return isinstance(other, TPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, TPoly):
            return other
        if isinstance(other, int):
            return TPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return TPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return TPoly(-x for x in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self or not other:
            return TPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return TPoly(out)

    __rmul__ = __mul__

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def is_negative(self) -> bool:
        """All nonzero coefficients negative."""
        return bool(self.coeffs) and all(c <= 0 for c in self.coeffs)

    def is_single_term(self) -> bool:
        return sum(1 for c in self.coeffs if c) == 1

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                power = "t" if k == 1 else f"t^{k}"
                body = power if abs(c) == 1 else f"{abs(c)}*{power}"
            parts.append(("-" if c < 0 else "+", body))
        text = "".join(sign + body for sign, body in parts)
        return text[1:] if text.startswith("+") else text

    def __repr__(self):
        return f"TPoly({list(self.coeffs)})"


def var_name(v: Var) -> str:
    i, j = v
    return f"p{i}{j}" if i < 10 and j < 10 else f"p{i}_{j}"


def make_monomial(vars_: Iterable[Var]) -> tuple:
    return tuple(sorted(tuple(v) for v in vars_))


_SENTINEL = (10**9, 10**9)


def lex_key(mono: tuple) -> tuple:
    """Sort key putting lex-larger monomials first."""
    return mono + (_SENTINEL,)


def lex_greater(m1: tuple, m2: tuple) -> bool:
    return lex_key(m1) < lex_key(m2)


def grevlex_greater(m1: tuple, m2: tuple) -> bool:
    if len(m1) != len(m2):
        return len(m1) > len(m2)
    e1, e2 = Counter(m1), Counter(m2)
    for v in sorted(set(e1) | set(e2), reverse=True):  # smallest variable first
        if e1[v] != e2[v]:
            return e1[v] < e2[v]
    return False


TERM_ORDERS = {"lex": lex_greater, "grevlex": grevlex_greater}


def monomial_str(mono: tuple) -> str:
    counts = Counter(mono)
    out = []
    for v in sorted(counts):
        e = counts[v]
        out.append(var_name(v) if e == 1 else f"{var_name(v)}^{e}")
    return "*".join(out)


def _coeff_negative(c) -> bool:
    if isinstance(c, TPoly):
        return c.is_negative()
    return c < 0


def _coeff_str(c) -> tuple[str, bool]:
    """Text of |c| and whether it needs parentheses when multiplied."""
    if isinstance(c, TPoly):
        text = str(c)
        return text, not c.is_single_term()
    text = str(c)
    return text, isinstance(c, Fraction) and c.denominator != 1


class Poly:
    """Sparse polynomial ``{monomial: coefficient}`` with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            mono = make_monomial(mono)
            c = clean.get(mono, 0) + c
            clean[mono] = c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def var(cls, i: int, j: int) -> "Poly":
        return cls({((i, j),): 1})

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else Poly.const(-other))

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly({m: c * other for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = make_monomial(m1 + m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def variables(self) -> set:
        return {v for m in self.terms for v in m}

    def coefficient(self, mono) -> object:
        return self.terms.get(make_monomial(mono), 0)

    def sorted_terms(self, order: str = "lex"):
        if order == "lex":
            return sorted(self.terms.items(), key=lambda kv: lex_key(kv[0]))
        greater = TERM_ORDERS[order]
        import functools

        def cmp(x, y):
            return -1 if greater(x[0], y[0]) else (1 if greater(y[0], x[0]) else 0)

        return sorted(self.terms.items(), key=functools.cmp_to_key(cmp))

    def specialize(self, t) -> "Poly":
        """Substitute a number for ``t`` in TPoly coefficients."""
        return Poly(
            {m: (c(t) if isinstance(c, TPoly) else c) for m, c in self.terms.items()}
        )

    def evaluate(self, values, t=None):
        """Evaluate at ``values[(i, j)]`` (a mapping, or a 0-based 2-D array)."""
        if hasattr(values, "shape"):
            get = lambda v: values[v[0] - 1, v[1] - 1]  # noqa: E731
        else:
            get = values.__getitem__
        total = 0
        for mono, c in self.terms.items():
            if isinstance(c, TPoly):
                if t is None:
                    raise ValueError("t is needed to evaluate TPoly coefficients")
                c = c(t)
            term = c
            for v in mono:
                term = term * get(v)
            total = total + term
        return total

    def normalized(self) -> "Poly":
        """Scale by +-1 so that the lex-leading coefficient is positive."""
        if not self.terms:
            return self
        lead = self.sorted_terms()[0][1]
        return -self if _coeff_negative(lead) else self

    def primitive(self) -> "Poly":
        """Divide integer coefficients by their gcd."""
        g = 0
        for c in self.terms.values():
            g = gcd(g, int(c))
        return Poly({m: c // g for m, c in self.terms.items()}) if g > 1 else self

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for k, (mono, c) in enumerate(self.sorted_terms()):
            neg = _coeff_negative(c)
            shown = -c if neg else c
            text, paren = _coeff_str(shown)
            mtext = monomial_str(mono)
            if not mtext:
                body = text
            elif shown == 1:
                body = mtext
            else:
                body = f"({text})*{mtext}" if paren else f"{text}*{mtext}"
            if k == 0:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"Poly({self})"
