"""Direct-summation and closed-form evaluators for the binomial sums.

Everything is exact. ``0**0`` is taken to be 1 wherever a closed form such as
``q**(m - k)`` is evaluated at ``q = 0``, which is also Python's convention.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterator

from .exact import Polynomial, binomial, binomial_poly

X = Polynomial.variable("x")
Q = Polynomial.variable("q")


@dataclass(frozen=True)
class MasterParams:
    m: int
    x: int
    y: int
    z: int = 1

    def __post_init__(self):
        if self.m < 0:
            raise ValueError(f"m must be nonnegative, got {self.m}")


@dataclass(frozen=True)
class ReducedParams:
    m: int
    k: int
    b: int = 0
    q: int = 0

    def __post_init__(self):
        check_reduced(self.m, self.k, self.b, self.q)


def check_reduced(m: int, k: int, b: int = 0, q: int = 0) -> None:
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got k={k}, m={m}")
    if b < 0:
        raise ValueError(f"b must be nonnegative, got {b}")
    if q < 0:
        raise ValueError(f"q must be nonnegative, got {q}")


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a chain of exact equalities.

    ``failed`` names the first equality that did not hold, ``values`` keeps
    both sides of every equality that was evaluated.
    """

    ok: bool
    failed: str | None = None
    values: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _chain(checks: list[tuple[str, object, object]]) -> CheckResult:
    values = {}
    for name, left, right in checks:
        values[name] = (left, right)
        if left != right:
            return CheckResult(False, name, values)
    return CheckResult(True, None, values)


# -- the master identity and its generalization ------------------------------

def lhs1(x: int, y: int, m: int) -> int:
    first = sum(
        (x + m + 1) * (-1) ** i * binomial(x + y + i, m - i) * binomial(y + 2 * i, i)
        for i in range(m + 1)
    )
    second = sum(binomial(x + i, m - i) * (-4) ** i for i in range(m + 1))
    return first - second


def rhs1(x: int, y: int, m: int) -> int:
    return (x - m) * binomial(x, m)


def lhs2(x: int, y: int, z: int, m: int) -> int:
    s = sum(
        (-1) ** n * binomial(x + y + n * z, m - n) * binomial(y + n * (z + 1), n)
        for n in range(m + 1)
    )
    return (x + (m + 1) * z) * s


def rhs2(x: int, y: int, z: int, m: int) -> int:
    s = 0
    for n in range(m + 1):
        for l in range(n + 1):
            s += (
                (-1) ** n
                * binomial(n, l)
                * binomial(x + l, m - n)
                * (1 + z) ** (n + l)
                * (1 - z) ** (n - l)
            )
    return z * s + (x - m) * binomial(x, m)


def poly_sides1(y: int, m: int) -> tuple[Polynomial, Polynomial]:
    """Both sides of the master identity as polynomials in ``x``."""
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    left = Polynomial((), "x")
    for i in range(m + 1):
        term = binomial_poly(X + (y + i), m - i) * ((-1) ** i * binomial(y + 2 * i, i))
        left = left + (X + (m + 1)) * term
    for i in range(m + 1):
        left = left - binomial_poly(X + i, m - i) * (-4) ** i
    right = (X - m) * binomial_poly(X, m)
    return left, right


def poly_sides2(y: int, z: int, m: int) -> tuple[Polynomial, Polynomial]:
    """Both sides of the ``z``-generalized identity as polynomials in ``x``."""
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    s = Polynomial((), "x")
    for n in range(m + 1):
        s = s + binomial_poly(X + (y + n * z), m - n) * (
            (-1) ** n * binomial(y + n * (z + 1), n)
        )
    left = (X + (m + 1) * z) * s
    t = Polynomial((), "x")
    for n in range(m + 1):
        for l in range(n + 1):
            c = (-1) ** n * binomial(n, l) * (1 + z) ** (n + l) * (1 - z) ** (n - l)
            if c:
                t = t + binomial_poly(X + l, m - n) * c
    right = t * z + (X - m) * binomial_poly(X, m)
    return left, right


def leading_coefficient_expected(m: int) -> Fraction:
    return Fraction(1, factorial(m))


# -- reduced sums -------------------------------------------------------------

def eq3_sum(m: int, k: int, b: int) -> int:
    check_reduced(m, k, b)
    return sum(
        (-1) ** i
        * binomial(2 * m + b - k - i, i)
        * binomial(2 * m + b - 2 * i, m - i)
        for i in range(m + 1)
    )


def eq4_sum(m: int, k: int) -> int:
    check_reduced(m, k)
    return sum(
        (-1) ** i * binomial(2 * m - k - i, i) * 2 ** (2 * m - 2 * i)
        for i in range(m + 1)
    )


def eq5_sum(m: int, k: int, b: int, q: int) -> int:
    check_reduced(m, k, b, q)
    return sum(
        (-1) ** i
        * binomial((q + 1) * m - k + b - q * i, i)
        * binomial((q + 1) * m + b - (q + 1) * i, m - i)
        for i in range(m + 1)
    )


def _eq6_terms(m: int, k: int) -> Iterator[tuple[int, int, int]]:
    """Yield ``(coefficient, plus_exp, minus_exp)`` for each surviving term.

    A term survives only if ``C(m-k+j, m-i)`` is nonzero, which forces
    ``i + j >= k`` so the power of ``(1+q)`` is never negative.
    """
    for i in range(m + 1):
        for j in range(i + 1):
            c = binomial(m - k + j, m - i)
            if c == 0:
                continue
            yield (-1) ** (m - i) * binomial(i, j) * c, i + j - k, i - j


def eq6_sum(m: int, k: int, q: int) -> int:
    check_reduced(m, k, q=q)
    if k >= m:
        raise ValueError(f"eq6_sum needs k < m (got k={k}, m={m}); use eq6_special_sum")
    return sum(c * (1 + q) ** a * (1 - q) ** d for c, a, d in _eq6_terms(m, k))


def _eq6_polynomial(m: int, k: int) -> Polynomial:
    plus, minus = 1 + Q, 1 - Q
    total = Polynomial((), "q")
    for c, a, d in _eq6_terms(m, k):
        total = total + (plus**a) * (minus**d) * c
    return total


def eq6_poly(m: int, k: int) -> Polynomial:
    check_reduced(m, k)
    if k >= m:
        raise ValueError(f"eq6_poly needs k < m (got k={k}, m={m}); use eq6_special_poly")
    return _eq6_polynomial(m, k)


def eq6_special_sum(m: int, q: int) -> int:
    check_reduced(m, m, q=q)
    return sum(c * (1 + q) ** a * (1 - q) ** d for c, a, d in _eq6_terms(m, m))


def eq6_special_poly(m: int) -> Polynomial:
    check_reduced(m, m)
    return _eq6_polynomial(m, m)


# -- closed forms ---------------------------------------------------------------

def eq3_closed(m: int, k: int) -> int:
    return 2**k


def eq4_closed(m: int, k: int) -> int:
    return (2 * m - k + 1) * 2**k


def eq5_closed(m: int, k: int, q: int) -> int:
    return q ** (m - k) * (1 + q) ** k


def eq6_closed_poly(m: int, k: int) -> Polynomial:
    """``((m-k) + (m+1) q) q^(m-k-1)``; the constant ``m+1`` when ``k = m``."""
    if k == m:
        return Polynomial.constant(m + 1, "q")
    return ((m - k) + (m + 1) * Q) * Q ** (m - k - 1)


def eq6_closed(m: int, k: int, q: int) -> int:
    if k == m:
        return m + 1
    return ((m - k) + (m + 1) * q) * q ** (m - k - 1)


# -- reduction chains -------------------------------------------------------------

def _sign_sum(m: int, k: int, q: int) -> int:
    """``sum (-1)^i C(i,j) C(m-k+j, m-i) (1+q)^(i+j) (1-q)^(i-j)``."""
    s = 0
    for i in range(m + 1):
        for j in range(i + 1):
            s += (
                (-1) ** i
                * binomial(i, j)
                * binomial(m - k + j, m - i)
                * (1 + q) ** (i + j)
                * (1 - q) ** (i - j)
            )
    return s


def reduction_chain1(m: int, k: int, b: int) -> CheckResult:
    """Check that substituting ``x = m - k`` turns the master identity into
    the pair of reduced sums, and that the pair balances."""
    check_reduced(m, k, b)
    x = m - k
    e3, e4 = eq3_sum(m, k, b), eq4_sum(m, k)
    reduced = (2 * m - k + 1) * e3 - e4
    return _chain([
        ("rhs_vanishes", rhs1(x, b, m), 0),
        ("lhs_substitution", lhs1(x, b, m), (-1) ** m * reduced),
        ("reduced_balance", reduced, 0),
    ])


def reduction_chain2(m: int, k: int, b: int, q: int) -> CheckResult:
    """Same as :func:`reduction_chain1` for the ``z``-generalized identity
    with ``y = b`` and ``z = q``."""
    check_reduced(m, k, b, q)
    x = m - k
    factor = (m - k) + (m + 1) * q
    signed = _sign_sum(m, k, q)
    if k < m:
        inner = eq6_sum(m, k, q)
    else:
        inner = eq6_special_sum(m, q)
    return _chain([
        ("lhs_substitution", lhs2(x, b, q, m), (-1) ** m * factor * eq5_sum(m, k, b, q)),
        ("reduced_balance", (-1) ** m * factor * eq5_sum(m, k, b, q), q * signed),
        ("matrix_factorization", signed, (-1) ** m * (1 + q) ** k * inner),
        ("closed_form", q * (1 + q) ** k * inner, factor * eq5_closed(m, k, q)),
        ("identity", lhs2(x, b, q, m), rhs2(x, b, q, m)),
    ])
