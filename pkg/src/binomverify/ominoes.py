"""(q+1)-omino configurations and their involution.

Ground ``1..(q+1)m+b``, omino range ``1..(q+1)m+b-k``. A window
``p..p+q`` inside the range is active if an omino starts at ``p`` or if its
cells are uncovered and colored ``W^q B``. The involution toggles the leftmost
active window between the two forms.

``q = 0`` is rejected: every in-range black would be an active window on its
own and the survivor description below no longer applies. The direct sum
:func:`binomverify.sums.eq5_sum` still covers ``q = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

from .dominoes import FIXED, InvolutionOutcome
from .exact import binomial

OMINO_TO_STRING = "omino_to_string"
STRING_TO_OMINO = "string_to_omino"


def _check(m: int, k: int, b: int, q: int) -> None:
    if m < 0 or b < 0:
        raise ValueError("m and b must be nonnegative")
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got k={k}, m={m}")
    if q < 1:
        raise ValueError(f"omino engine needs q >= 1, got q={q}")


@dataclass(frozen=True)
class OminoConfig:
    m: int
    k: int
    b: int
    q: int
    ominoes: tuple[int, ...]
    blacks: frozenset[int]

    @property
    def ground_size(self) -> int:
        return (self.q + 1) * self.m + self.b

    @property
    def range_size(self) -> int:
        return self.ground_size - self.k

    def covered(self) -> set[int]:
        return {v for p in self.ominoes for v in range(p, p + self.q + 1)}

    def validate(self) -> None:
        _check(self.m, self.k, self.b, self.q)
        starts = self.ominoes
        if list(starts) != sorted(starts):
            raise ValueError("omino starts must be sorted")
        for p in starts:
            if p < 1 or p + self.q > self.range_size:
                raise ValueError(f"omino at {p} leaves the omino range")
        for p, p2 in zip(starts, starts[1:]):
            if p2 - p <= self.q:
                raise ValueError(f"ominoes at {p} and {p2} overlap")
        if self.blacks & self.covered():
            raise ValueError("black vertex under an omino")
        if any(v < 1 or v > self.ground_size for v in self.blacks):
            raise ValueError("black vertex outside the ground set")
        if len(self.blacks) != self.m - len(starts):
            raise ValueError(
                f"need {self.m - len(starts)} black vertices, got {len(self.blacks)}"
            )


def _starts(lo: int, last: int, gap: int, limit: int) -> Iterator[tuple[int, ...]]:
    yield ()
    if limit == 0:
        return
    for p in range(lo, last + 1):
        for rest in _starts(p + gap, last, gap, limit - 1):
            yield (p,) + rest


def count_closed(m: int, k: int, b: int, q: int) -> int:
    _check(m, k, b, q)
    g = (q + 1) * m + b
    r = g - k
    return sum(
        binomial(r - q * i, i) * binomial(g - (q + 1) * i, m - i) for i in range(m + 1)
    )


def enumerate_configs(m: int, k: int, b: int, q: int) -> Iterator[OminoConfig]:
    """Lexicographic in omino starts (prefixes first), then black set."""
    _check(m, k, b, q)
    g = (q + 1) * m + b
    r = g - k
    for starts in _starts(1, r - q, q + 1, m):
        covered = {v for p in starts for v in range(p, p + q + 1)}
        free = [v for v in range(1, g + 1) if v not in covered]
        for blacks in combinations(free, m - len(starts)):
            yield OminoConfig(m, k, b, q, starts, frozenset(blacks))


def weight(c: OminoConfig) -> int:
    return -1 if len(c.ominoes) % 2 else 1


def leftmost_active_tuple(c: OminoConfig) -> tuple[int, str] | None:
    q = c.q
    covered = c.covered()
    starts = set(c.ominoes)
    for p in range(1, c.range_size - q + 1):
        if p in starts:
            return p, "omino"
        window = range(p, p + q + 1)
        if any(v in covered for v in window):
            continue
        if p + q in c.blacks and not any(v in c.blacks for v in range(p, p + q)):
            return p, "string"
    return None


def involute(c: OminoConfig) -> InvolutionOutcome:
    found = leftmost_active_tuple(c)
    if found is None:
        return FIXED
    p, kind = found
    if kind == "omino":
        partner = OminoConfig(
            c.m, c.k, c.b, c.q,
            tuple(s for s in c.ominoes if s != p),
            c.blacks | {p + c.q},
        )
        return InvolutionOutcome(partner, p, OMINO_TO_STRING)
    partner = OminoConfig(
        c.m, c.k, c.b, c.q,
        tuple(sorted(c.ominoes + (p,))),
        c.blacks - {p + c.q},
    )
    return InvolutionOutcome(partner, p, STRING_TO_OMINO)


def fixed_points(m: int, k: int, b: int, q: int) -> Iterator[OminoConfig]:
    """Survivors built directly: any coloring of the last ``k`` vertices with
    ``j`` blacks, then ``W^{i_1} B ... W^{i_{m-j}} B W...W`` inside the range
    with every ``i_l`` in ``[0, q-1]``."""
    _check(m, k, b, q)
    g = (q + 1) * m + b
    r = g - k
    for j in range(k + 1):
        for out in combinations(range(r + 1, g + 1), j):
            for gaps in product(range(q), repeat=m - j):
                pos, inside = 0, []
                for gap in gaps:
                    pos += gap + 1
                    inside.append(pos)
                yield OminoConfig(m, k, b, q, (), frozenset(inside) | frozenset(out))


def fixed_count_closed(m: int, k: int, q: int) -> int:
    return q ** (m - k) * (1 + q) ** k


def to_trace(c: OminoConfig) -> str:
    block = "[" + "." * (c.q + 1) + "]"
    tokens = []
    starts = set(c.ominoes)
    v = 1
    while v <= c.ground_size:
        if v == c.range_size + 1:
            tokens.append("|")
        if v in starts:
            tokens.append(block)
            v += c.q + 1
            continue
        tokens.append("B" if v in c.blacks else "W")
        v += 1
    if c.range_size == c.ground_size:
        tokens.append("|")
    return " ".join(tokens)


def parse_trace(text: str, m: int, k: int, b: int, q: int) -> OminoConfig:
    _check(m, k, b, q)
    block = "[" + "." * (q + 1) + "]"
    r = (q + 1) * m + b - k
    v = 1
    starts, blacks = [], set()
    for tok in text.split():
        if tok == "|":
            if v != r + 1:
                raise ValueError(f"range marker after vertex {v - 1}, expected after {r}")
            continue
        if tok == block:
            starts.append(v)
            v += q + 1
        elif tok.upper() == "B":
            blacks.add(v)
            v += 1
        elif tok.upper() == "W":
            v += 1
        else:
            raise ValueError(f"bad token {tok!r} (omino token is {block!r})")
    c = OminoConfig(m, k, b, q, tuple(starts), frozenset(blacks))
    if v - 1 != c.ground_size:
        raise ValueError(f"trace covers {v - 1} vertices, expected {c.ground_size}")
    c.validate()
    return c
