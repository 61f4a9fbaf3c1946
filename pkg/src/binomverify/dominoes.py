"""Domino configurations and the leftmost-active-pair involution.

Vertices are numbered ``1..ground_size``. Dominoes may only be placed inside
the domino range ``1..range_size``; the remaining ``k`` vertices sit outside
it and are only ever colored.

Two variants share the engine:

* ``sun3`` -- ground ``2m+b``, range ``2m+b-k``, exactly ``m - #dominoes``
  black vertices.
* ``sun4`` -- ground ``2m``, range ``2m-k``, any number of black vertices.

An *active pair* is a pair ``(p, p+1)`` inside the range that is either
covered by a domino or is an uncovered black-white pair. The orientation of
that colored pair is selectable: ``"bw"`` (black then white, the default) or
``"wb"``. Either choice gives a sign-reversing involution with the same
number of fixed points; only their shape changes (blacks packed at the right
end of the range for ``"bw"``, at the left end for ``"wb"``).

Enumeration order is lexicographic in the tuple of domino starts (a prefix
sorts before its extensions), then by black set: smaller sets first, equal
sizes in lexicographic order.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, NamedTuple

from .exact import binomial

SUN3 = "sun3"
SUN4 = "sun4"
VARIANTS = (SUN3, SUN4)
ORIENTATIONS = ("bw", "wb")


def _check(variant: str, m: int, k: int, b: int) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if m < 0 or b < 0:
        raise ValueError("m and b must be nonnegative")
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got k={k}, m={m}")
    if variant == SUN4 and b:
        raise ValueError("sun4 configurations take no b")


def _check_orientation(orientation: str) -> None:
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}, got {orientation!r}")


def ground_size(variant: str, m: int, k: int, b: int = 0) -> int:
    return 2 * m + b if variant == SUN3 else 2 * m


def range_size(variant: str, m: int, k: int, b: int = 0) -> int:
    return 2 * m + b - k if variant == SUN3 else 2 * m - k


@dataclass(frozen=True)
class DominoConfig:
    variant: str
    m: int
    k: int
    b: int
    dominoes: tuple[int, ...]
    blacks: frozenset[int]

    @property
    def ground_size(self) -> int:
        return ground_size(self.variant, self.m, self.k, self.b)

    @property
    def range_size(self) -> int:
        return range_size(self.variant, self.m, self.k, self.b)

    def covered(self) -> set[int]:
        return {v for p in self.dominoes for v in (p, p + 1)}

    def validate(self) -> None:
        _check(self.variant, self.m, self.k, self.b)
        starts = self.dominoes
        if list(starts) != sorted(starts):
            raise ValueError("domino starts must be sorted")
        for p in starts:
            if p < 1 or p + 1 > self.range_size:
                raise ValueError(f"domino at {p} leaves the domino range")
        for p, p2 in zip(starts, starts[1:]):
            if p2 - p < 2:
                raise ValueError(f"dominoes at {p} and {p2} overlap")
        if self.blacks & self.covered():
            raise ValueError("black vertex under a domino")
        if any(v < 1 or v > self.ground_size for v in self.blacks):
            raise ValueError("black vertex outside the ground set")
        if self.variant == SUN3 and len(self.blacks) != self.m - len(starts):
            raise ValueError(
                f"sun3 needs {self.m - len(starts)} black vertices, got {len(self.blacks)}"
            )


class InvolutionOutcome(NamedTuple):
    """``partner`` is None for a fixed point."""

    partner: object | None = None
    site: int | None = None
    kind: str | None = None

    @property
    def fixed(self) -> bool:
        return self.partner is None


FIXED = InvolutionOutcome()

DOMINO_TO_PAIR = "domino_to_pair"
PAIR_TO_DOMINO = "pair_to_domino"


def _domino_starts(lo: int, last: int, limit: int) -> Iterator[tuple[int, ...]]:
    """Increasing start tuples in ``[lo, last]`` with gaps >= 2, at most
    ``limit`` of them, prefixes first."""
    yield ()
    if limit == 0:
        return
    for p in range(lo, last + 1):
        for rest in _domino_starts(p + 2, last, limit - 1):
            yield (p,) + rest


def count_closed(variant: str, m: int, k: int, b: int = 0) -> int:
    """Number of configurations, by the product-of-binomials count."""
    _check(variant, m, k, b)
    g, r = ground_size(variant, m, k, b), range_size(variant, m, k, b)
    if variant == SUN3:
        return sum(binomial(r - i, i) * binomial(g - 2 * i, m - i) for i in range(m + 1))
    return sum(binomial(r - i, i) * 2 ** (g - 2 * i) for i in range(m + 1))


def enumerate_configs(variant: str, m: int, k: int, b: int = 0) -> Iterator[DominoConfig]:
    _check(variant, m, k, b)
    g, r = ground_size(variant, m, k, b), range_size(variant, m, k, b)
    for starts in _domino_starts(1, r - 1, m):
        covered = {v for p in starts for v in (p, p + 1)}
        free = [v for v in range(1, g + 1) if v not in covered]
        if variant == SUN3:
            sizes = [m - len(starts)]
        else:
            sizes = range(len(free) + 1)
        for size in sizes:
            for blacks in combinations(free, size):
                yield DominoConfig(variant, m, k, b, starts, frozenset(blacks))


def weight(c: DominoConfig) -> int:
    return -1 if len(c.dominoes) % 2 else 1


def leftmost_active_pair(c: DominoConfig, orientation: str = "bw") -> tuple[int, str] | None:
    """Smallest ``p`` whose pair ``(p, p+1)`` is active, with ``"domino"``
    or ``"pair"`` as its kind."""
    _check_orientation(orientation)
    covered = c.covered()
    starts = set(c.dominoes)
    first, second = (True, False) if orientation == "bw" else (False, True)
    for p in range(1, c.range_size):
        if p in starts:
            return p, "domino"
        if p in covered or p + 1 in covered:
            continue
        if (p in c.blacks) == first and (p + 1 in c.blacks) == second:
            return p, "pair"
    return None


def involute(c: DominoConfig, orientation: str = "bw") -> InvolutionOutcome:
    found = leftmost_active_pair(c, orientation)
    if found is None:
        return FIXED
    p, kind = found
    if kind == "domino":
        black = p if orientation == "bw" else p + 1
        partner = DominoConfig(
            c.variant, c.m, c.k, c.b,
            tuple(s for s in c.dominoes if s != p),
            c.blacks | {black},
        )
        return InvolutionOutcome(partner, p, DOMINO_TO_PAIR)
    partner = DominoConfig(
        c.variant, c.m, c.k, c.b,
        tuple(sorted(c.dominoes + (p,))),
        c.blacks - {p, p + 1},
    )
    return InvolutionOutcome(partner, p, PAIR_TO_DOMINO)


def fixed_points(
    variant: str, m: int, k: int, b: int = 0, orientation: str = "bw"
) -> Iterator[DominoConfig]:
    """Construct the fixed points directly: no dominoes, blacks inside the
    range packed against one end, free coloring outside the range."""
    _check(variant, m, k, b)
    _check_orientation(orientation)
    g, r = ground_size(variant, m, k, b), range_size(variant, m, k, b)
    outside = range(r + 1, g + 1)

    def packed(n: int) -> set[int]:
        if orientation == "bw":
            return set(range(r - n + 1, r + 1))
        return set(range(1, n + 1))

    for size in range(len(outside) + 1):
        for out in combinations(outside, size):
            if variant == SUN3:
                inside_counts = [m - size]
            else:
                inside_counts = range(r + 1)
            for n in inside_counts:
                yield DominoConfig(variant, m, k, b, (), frozenset(packed(n) | set(out)))


def fixed_count_closed(variant: str, m: int, k: int) -> int:
    if variant == SUN3:
        return 2**k
    if variant == SUN4:
        return (2 * m - k + 1) * 2**k
    raise ValueError(f"unknown variant {variant!r}")


def to_trace(c: DominoConfig) -> str:
    """Render as tokens ``W``/``B``/``[..]`` with ``|`` after the range."""
    tokens = []
    starts = set(c.dominoes)
    v = 1
    while v <= c.ground_size:
        if v == c.range_size + 1:
            tokens.append("|")
        if v in starts:
            tokens.append("[..]")
            v += 2
            continue
        tokens.append("B" if v in c.blacks else "W")
        v += 1
    if c.range_size == c.ground_size:
        tokens.append("|")
    return " ".join(tokens)


def parse_trace(text: str, variant: str, m: int, k: int, b: int = 0) -> DominoConfig:
    """Inverse of :func:`to_trace`. The ``|`` marker is optional but must sit
    at the range boundary when present."""
    _check(variant, m, k, b)
    r = range_size(variant, m, k, b)
    v = 1
    starts, blacks = [], set()
    for tok in text.split():
        if tok == "|":
            if v != r + 1:
                raise ValueError(f"range marker after vertex {v - 1}, expected after {r}")
            continue
        if tok == "[..]":
            starts.append(v)
            v += 2
        elif tok.upper() == "B":
            blacks.add(v)
            v += 1
        elif tok.upper() == "W":
            v += 1
        else:
            raise ValueError(f"bad token {tok!r}")
    c = DominoConfig(variant, m, k, b, tuple(starts), frozenset(blacks))
    if v - 1 != c.ground_size:
        raise ValueError(f"trace covers {v - 1} vertices, expected {c.ground_size}")
    c.validate()
    return c
