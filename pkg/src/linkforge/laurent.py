"""Sparse Laurent polynomials in one variable with integer coefficients."""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from fractions import Fraction

__all__ = ["LaurentPoly"]

_TERM = re.compile(r"([+-]?\d+)\*([A-Za-z]+)\^(-?\d+)")


class LaurentPoly:
    """Immutable sparse Laurent polynomial.

    Terms are kept as a mapping ``exponent -> coefficient`` with zero
    coefficients dropped. ``var`` is a tag (``"A"`` for the bracket variable,
    ``"x"`` for t^{1/2}); arithmetic between different tags is refused.
    """

    __slots__ = ("_terms", "var", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = (), var: str = "x") -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            if c:
                acc[int(e)] = acc.get(int(e), 0) + int(c)
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self.var = var
        self._hash = None

    @classmethod
    def monomial(cls, coeff: int, exp: int, var: str = "x") -> LaurentPoly:
        return cls({exp: coeff}, var)

    @classmethod
    def one(cls, var: str = "x") -> LaurentPoly:
        return cls({0: 1}, var)

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(iter(self._terms))

    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(reversed(self._terms))

    def _check(self, other: LaurentPoly) -> None:
        if other.var != self.var:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    def _coerce(self, other: object) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other}, self.var)
        return NotImplemented

    def __add__(self, other: object) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc, self.var)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms.items()}, self.var)

    def __sub__(self, other: object) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: object) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other: object) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials have Laurent inverses")
            return LaurentPoly({e * k: c ** k if k % 2 == 0 else c}, self.var)
        out = LaurentPoly.one(self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``var**k``."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()}, self.var)

    def substitute_power(self, k: Fraction | int, var: str) -> LaurentPoly:
        """Replace ``var_old**e`` by ``var_new**(k*e)``; every k*e must be an integer."""
        out = {}
        for e, c in self._terms.items():
            ne = Fraction(k) * e
            if ne.denominator != 1:
                raise ValueError(f"exponent {e} maps to non-integer {ne}")
            out[int(ne)] = c
        return LaurentPoly(out, var)

    def invert_variable(self) -> LaurentPoly:
        """The image under ``var -> var**-1``."""
        return LaurentPoly({-e: c for e, c in self._terms.items()}, self.var)

    def __call__(self, value):
        total = 0
        for e, c in self._terms.items():
            total += c * value ** e
        return total

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.var == other.var and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.var, tuple(self._terms.items())))
        return self._hash

    def serialize(self) -> str:
        """``c*v^e`` terms in ascending exponent order joined by ``+``."""
        if not self._terms:
            return "0"
        return "+".join(f"{c}*{self.var}^{e}" for e, c in self._terms.items())

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        text = text.strip()
        if text == "0":
            return cls({}, "x")
        pieces = text.split("+")
        terms = []
        var = None
        for piece in pieces:
            m = _TERM.fullmatch(piece.strip())
            if m is None:
                raise ValueError(f"bad polynomial term {piece!r}")
            if var is not None and m.group(2) != var:
                raise ValueError("mixed variables")
            var = m.group(2)
            terms.append((int(m.group(3)), int(m.group(1))))
        return cls(terms, var or "x")

    def __str__(self) -> str:
        return self.serialize()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.serialize()!r})"
