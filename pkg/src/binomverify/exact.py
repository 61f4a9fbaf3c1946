"""Exact integer, rational and univariate polynomial arithmetic.

Integers are Python ints and rationals are :class:`fractions.Fraction`; the
only thing built here is a small immutable polynomial type plus the
generalized binomial coefficient.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from numbers import Rational
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def binomial(n: int, r: int) -> int:
    """Generalized binomial coefficient ``n(n-1)...(n-r+1)/r!``.

    Zero for ``r < 0``; valid for negative ``n``.

    >>> binomial(5, 2), binomial(3, 5), binomial(-1, 3)
    (10, 0, -1)
    """
    if r < 0:
        return 0
    if n >= 0:
        return comb(n, r)
    # C(n, r) = (-1)^r C(r - n - 1, r)
    return (-1) ** r * comb(r - n - 1, r)


def _strip(coeffs: Iterable[Number]) -> tuple:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class Polynomial:
    """Immutable univariate polynomial with exact coefficients.

    Coefficients are stored low-to-high degree with trailing zeros removed, so
    the zero polynomial has an empty coefficient tuple and degree ``-1``.
    """

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs: Iterable[Number] = (), var: str = "x"):
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "coeffs", _strip(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    def __reduce__(self):
        return (type(self), (self.coeffs, self.var))

    @classmethod
    def constant(cls, c: Number, var: str = "x") -> "Polynomial":
        return cls((c,), var)

    @classmethod
    def variable(cls, var: str = "x") -> "Polynomial":
        return cls((0, 1), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Number:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.var != self.var:
                raise ValueError(
                    f"variable mismatch: {self.var!r} vs {other.var!r}"
                )
            return other
        if isinstance(other, Rational):
            return Polynomial((other,), self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial((self[i] + other[i] for i in range(n)), self.var)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial((-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Polynomial((), self.var)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(1, self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, c: Number):
        if isinstance(c, Polynomial):
            raise TypeError("polynomial division is not supported")
        return Polynomial((Fraction(a) / c for a in self.coeffs), self.var)

    def __call__(self, v: Number) -> Number:
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.var == other.var and self.coeffs == other.coeffs
        if isinstance(other, Rational):
            return self.coeffs == _strip((other,))
        return NotImplemented

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                mono = ""
            elif i == 1:
                mono = self.var
            else:
                mono = f"{self.var}^{i}"
            if mono and c == 1:
                body = mono
            elif mono and c == -1:
                body = "-" + mono
            elif mono:
                body = f"{_fmt(c, paren=True)}*{mono}"
            else:
                body = _fmt(c, paren=True)
            terms.append(body)
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> list[str]:
        return [format_number(c) for c in self.coeffs]


def _fmt(c: Number, paren: bool = False) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        s = f"{c.numerator}/{c.denominator}"
        return f"({s})" if paren else s
    return str(int(c))


def format_number(v: Number) -> str:
    """Decimal string for integral values, ``num/den`` otherwise."""
    if isinstance(v, Fraction) and v.denominator != 1:
        return f"{v.numerator}/{v.denominator}"
    return str(int(v))


def parse_number(s: str) -> Number:
    if "/" in s:
        return Fraction(s)
    return int(s)


def polynomial_from_json(data: Sequence[str], var: str = "x") -> Polynomial:
    return Polynomial((parse_number(s) for s in data), var)


def binomial_poly(p: Polynomial, r: int) -> Polynomial:
    """Return ``prod_{t<r} (p - t) / r!`` with rational coefficients."""
    if r < 0:
        raise ValueError(f"r must be nonnegative, got {r}")
    num = Polynomial.constant(1, p.var)
    for t in range(r):
        num = num * (p - t)
    return num / factorial(r)


def poly_equal(a: Polynomial, b: Polynomial) -> bool:
    if a.var != b.var:
        raise ValueError(f"variable mismatch: {a.var!r} vs {b.var!r}")
    return a.coeffs == b.coeffs


def poly_eval(p: Polynomial, v: Number) -> Number:
    return p(v)


def leading_coefficient(p: Polynomial) -> Number:
    return p.coeffs[-1] if p.coeffs else 0
