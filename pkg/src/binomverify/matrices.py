"""Marked 0/1 matrix configurations and the four-step pruning involution.

A configuration is a ``2 x m`` main matrix plus an ``(m-k)``-cell extension
of the top row. Cells are plain ``0``, ``1`` or underlined ``0`` (written
``u``). Main columns ``(top, bottom)`` must be one of ``00 01 11 u1 0u`` and
the bottom row must end in at least as many plain zeros as there are ``1``
cells in the top row and extension combined.

Read as sets: top/extension ``1`` cells form K, bottom ``1`` cells form J,
top/extension ``u`` cells form A, bottom ``u`` cells form B. Elements of A
and B carry one of ``q`` colors that no step ever changes, so colors are not
materialized: each underline contributes a factor ``q`` and the weight is the
signed monomial ``(-1)^(|K|+|B|) q^(|A|+|B|)``.

:func:`classify` dispatches to the first applicable step:

1. toggle the leftmost underlined main column ``0u <-> u1``;
2. the ``bij1`` map on ``11`` columns and ``01`` strings of the bottom row;
3. when the bottom row is all zeros and the first non-underlined extension
   cell is a plain ``0``, flip the next non-underlined extension cell;
4. trade the first non-underlined extension cell against the length of the
   leading run of ones in the bottom row.

Whatever is left is a survivor of weight ``+q^e``.

``bij1`` keys on the *last* ``11`` column. Keying on the first one does not
give an involution; ``column="first"`` is kept only so the test-suite can
show that it breaks.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterator, NamedTuple

from .exact import Polynomial


class Mark(str, Enum):
    PLAIN = "0"
    ONE = "1"
    UNDER = "u"

    def __str__(self):
        return self.value


P, I, U = Mark.PLAIN, Mark.ONE, Mark.UNDER

COLUMNS = ((P, P), (P, I), (I, I), (U, I), (P, U))
_LEGAL_COLUMNS = frozenset(COLUMNS)

SEGMENT = "segment"  # k = m
EXT_UNDERLINED = "ext_underlined"  # k < m, extension all underlined
EXT_SINGLE_PLAIN = "ext_single_plain"  # k < m, one plain 0 among underlines


@dataclass(frozen=True)
class QMonomial:
    sign: int
    exponent: int

    def __post_init__(self):
        if self.sign not in (1, -1) or self.exponent < 0:
            raise ValueError(f"bad monomial {self.sign}, {self.exponent}")

    def __neg__(self):
        return QMonomial(-self.sign, self.exponent)

    def __call__(self, q: int) -> int:
        return self.sign * q**self.exponent

    def as_poly(self) -> Polynomial:
        return Polynomial((0,) * self.exponent + (self.sign,), "q")

    def __str__(self):
        s = "+" if self.sign > 0 else "-"
        return f"{s}q^{self.exponent}"


@dataclass(frozen=True)
class MatrixConfig:
    m: int
    k: int
    top: tuple[Mark, ...]
    bottom: tuple[Mark, ...]
    ext: tuple[Mark, ...] = ()

    def __post_init__(self):
        if len(self.top) != self.m or len(self.bottom) != self.m:
            raise ValueError("main rows must have length m")
        if len(self.ext) != self.m - self.k:
            raise ValueError("extension must have length m - k")

    # Positions are 1-based; extension cell t is element m + t of E.

    @property
    def K(self) -> frozenset[int]:
        return frozenset(
            [p for p, c in enumerate(self.top, 1) if c is I]
            + [self.m + t for t, c in enumerate(self.ext, 1) if c is I]
        )

    @property
    def J(self) -> frozenset[int]:
        return frozenset(p for p, c in enumerate(self.bottom, 1) if c is I)

    @property
    def A(self) -> frozenset[int]:
        return frozenset(
            [p for p, c in enumerate(self.top, 1) if c is U]
            + [self.m + t for t, c in enumerate(self.ext, 1) if c is U]
        )

    @property
    def B(self) -> frozenset[int]:
        return frozenset(p for p, c in enumerate(self.bottom, 1) if c is U)

    @property
    def i(self) -> int:
        return self.m - self.k_size()

    def k_size(self) -> int:
        return self.top.count(I) + self.ext.count(I)

    def trailing_plain(self) -> int:
        n = 0
        for c in reversed(self.bottom):
            if c is not P:
                break
            n += 1
        return n

    def is_legal(self) -> bool:
        if any((t, b) not in _LEGAL_COLUMNS for t, b in zip(self.top, self.bottom)):
            return False
        return self.trailing_plain() >= self.k_size()

    def validate(self) -> None:
        for p, col in enumerate(zip(self.top, self.bottom), 1):
            if col not in _LEGAL_COLUMNS:
                raise ValueError(f"illegal column {p}: {col[0]}{col[1]}")
        if self.trailing_plain() < self.k_size():
            raise ValueError(
                f"bottom row ends in {self.trailing_plain()} plain zeros, "
                f"need at least {self.k_size()}"
            )


class Killed(NamedTuple):
    step: int
    partner: MatrixConfig


class Survivor(NamedTuple):
    kind: str


class StepOutcome(NamedTuple):
    """Result of one pruning step; ``partner`` is None when the step does not
    apply (or, for step 3, when the configuration is a survivor)."""

    partner: MatrixConfig | None = None
    survivor: str | None = None

    @property
    def applies(self) -> bool:
        return self.partner is not None


NOT_APPLICABLE = StepOutcome()


def enumerate_configs(m: int, k: int) -> Iterator[MatrixConfig]:
    """All legal configurations, lexicographic in the main columns (in the
    order of :data:`COLUMNS`) and then in the extension (``0 < 1 < u``)."""
    if m < 0 or not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got k={k}, m={m}")
    all_ext = list(product((P, I, U), repeat=m - k))
    for cols in product(COLUMNS, repeat=m):
        top = tuple(c[0] for c in cols)
        bottom = tuple(c[1] for c in cols)
        run = 0
        for c in reversed(bottom):
            if c is not P:
                break
            run += 1
        room = run - top.count(I)
        if room < 0:
            continue
        for ext in all_ext:
            if ext.count(I) <= room:
                yield MatrixConfig(m, k, top, bottom, ext)


def weight(c: MatrixConfig) -> QMonomial:
    b = c.bottom.count(U)
    a = c.top.count(U) + c.ext.count(U)
    return QMonomial(-1 if (c.k_size() + b) % 2 else 1, a + b)


def step1_underline(c: MatrixConfig) -> StepOutcome:
    for p, (t, b) in enumerate(zip(c.top, c.bottom)):
        if b is U:
            return StepOutcome(_set_column(c, p, U, I))
        if t is U:
            return StepOutcome(_set_column(c, p, P, U))
    return NOT_APPLICABLE


def _set_column(c: MatrixConfig, p: int, t: Mark, b: Mark) -> MatrixConfig:
    top = list(c.top)
    bottom = list(c.bottom)
    top[p], bottom[p] = t, b
    return MatrixConfig(c.m, c.k, tuple(top), tuple(bottom), c.ext)


def step2_bij1(c: MatrixConfig, column: str = "last") -> StepOutcome:
    """Pre: no underline in the main matrix."""
    ones = [p for p, t in enumerate(c.top) if t is I]
    if column == "last":
        star = ones[-1] if ones else None
    elif column == "first":
        star = ones[0] if ones else None
    else:
        raise ValueError(f"column must be 'last' or 'first', got {column!r}")
    start = 0 if star is None else star + 1
    bottom = c.bottom
    last01 = None
    for p in range(start, c.m - 1):
        if bottom[p] is P and bottom[p + 1] is I:
            last01 = p
    top = list(c.top)
    new_bottom = list(bottom)
    if last01 is not None:
        last_one = max(p for p in range(start, c.m) if bottom[p] is I)
        top[last01] = I
        new_bottom[last01] = I
        new_bottom[last_one] = P
    elif star is not None:
        try:
            first_zero = next(p for p in range(start, c.m) if bottom[p] is P)
        except StopIteration:
            raise AssertionError(f"no zero after the 11 column in {to_trace(c)}") from None
        top[star] = P
        new_bottom[star] = P
        new_bottom[first_zero] = I
    else:
        return NOT_APPLICABLE
    return StepOutcome(MatrixConfig(c.m, c.k, tuple(top), tuple(new_bottom), c.ext))


def _leading_ones(bottom: tuple[Mark, ...]) -> int:
    t = 0
    for c in bottom:
        if c is not I:
            break
        t += 1
    return t


def _split_ext(ext: tuple[Mark, ...]) -> int | None:
    """Index of the first non-underlined extension cell, or None."""
    for idx, c in enumerate(ext):
        if c is not U:
            return idx
    return None


def step3_extflip(c: MatrixConfig) -> StepOutcome:
    """Pre: steps 1 and 2 do not apply, so the top row is plain and the bottom
    row is ``1^t 0^(m-t)``."""
    a_idx = _split_ext(c.ext)
    if a_idx is None:
        return StepOutcome(survivor=SEGMENT if c.k == c.m else EXT_UNDERLINED)
    if _leading_ones(c.bottom) != 0 or c.ext[a_idx] is not P:
        return NOT_APPLICABLE
    for idx in range(a_idx + 1, len(c.ext)):
        cell = c.ext[idx]
        if cell is not U:
            ext = list(c.ext)
            ext[idx] = I if cell is P else P
            return StepOutcome(MatrixConfig(c.m, c.k, c.top, c.bottom, tuple(ext)))
    return StepOutcome(survivor=EXT_SINGLE_PLAIN)


def step4_transfer(c: MatrixConfig) -> StepOutcome:
    """Pre: steps 1-3 do not apply."""
    a_idx = _split_ext(c.ext)
    if a_idx is None:
        return NOT_APPLICABLE
    t = _leading_ones(c.bottom)
    ext = list(c.ext)
    if c.ext[a_idx] is I:
        ext[a_idx] = P
        t += 1
    else:
        if t == 0:
            return NOT_APPLICABLE
        ext[a_idx] = I
        t -= 1
    bottom = (I,) * t + (P,) * (c.m - t)
    return StepOutcome(MatrixConfig(c.m, c.k, c.top, bottom, tuple(ext)))


def classify(c: MatrixConfig, column: str = "last") -> Killed | Survivor:
    out = step1_underline(c)
    if out.applies:
        return Killed(1, out.partner)
    out = step2_bij1(c, column)
    if out.applies:
        return Killed(2, out.partner)
    out = step3_extflip(c)
    if out.applies:
        return Killed(3, out.partner)
    if out.survivor is not None:
        return Survivor(out.survivor)
    out = step4_transfer(c)
    if out.applies:
        return Killed(4, out.partner)
    raise AssertionError(f"no step applies to {to_trace(c)}")


def survivors(m: int, k: int) -> Iterator[tuple[MatrixConfig, str]]:
    """Survivors built directly from their description."""
    if m < 0 or not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got k={k}, m={m}")
    top = (P,) * m
    e = m - k
    kind = SEGMENT if k == m else EXT_UNDERLINED
    for t in range(m + 1):
        yield MatrixConfig(m, k, top, (I,) * t + (P,) * (m - t), (U,) * e), kind
    for idx in range(e):
        ext = (U,) * idx + (P,) + (U,) * (e - idx - 1)
        yield MatrixConfig(m, k, top, (P,) * m, ext), EXT_SINGLE_PLAIN


def weight_total(m: int, k: int) -> Polynomial:
    counts: dict[int, int] = {}
    for c in enumerate_configs(m, k):
        w = weight(c)
        counts[w.exponent] = counts.get(w.exponent, 0) + w.sign
    return polynomial_from_counts(counts)


def survivor_total(m: int, k: int) -> Polynomial:
    counts: dict[int, int] = {}
    for c, _ in survivors(m, k):
        w = weight(c)
        counts[w.exponent] = counts.get(w.exponent, 0) + w.sign
    return polynomial_from_counts(counts)


def polynomial_from_counts(counts: dict[int, int]) -> Polynomial:
    if not counts:
        return Polynomial((), "q")
    return Polynomial([counts.get(e, 0) for e in range(max(counts) + 1)], "q")


def enumerate_colored(m: int, k: int, q: int) -> Iterator[tuple[MatrixConfig, tuple[int, ...]]]:
    """Configurations with an explicit color in ``range(q)`` for every
    underlined cell (in reading order: top, bottom, extension)."""
    for c in enumerate_configs(m, k):
        n = weight(c).exponent
        for colors in product(range(q), repeat=n):
            yield c, colors


def colored_signed_count(m: int, k: int, q: int) -> int:
    return sum(weight(c).sign for c, _ in enumerate_colored(m, k, q))


# -- text encoding ------------------------------------------------------------

def to_trace(c: MatrixConfig) -> str:
    top = "".join(x.value for x in c.top)
    if c.ext:
        top += " " + "".join(x.value for x in c.ext)
    bottom = "".join(x.value for x in c.bottom)
    return f"{top} / {bottom}"


def _marks(s: str) -> tuple[Mark, ...]:
    try:
        return tuple(Mark(ch) for ch in s)
    except ValueError:
        raise ValueError(f"bad cell in {s!r}; use 0, 1 or u") from None


def parse_trace(top: str, bottom: str, k: int | None = None) -> MatrixConfig:
    """Build a configuration from row strings such as ``"0u1011 0000"``.

    Whitespace in ``top`` separates the main row from the extension. ``k``
    defaults to ``m - len(extension)``.
    """
    parts = top.split()
    if not parts:
        raise ValueError("empty top row")
    main = _marks(parts[0])
    ext = _marks("".join(parts[1:]))
    bot = _marks("".join(bottom.split()))
    m = len(main)
    if len(bot) != m:
        raise ValueError(f"bottom row has {len(bot)} cells, top row has {m}")
    if k is None:
        k = m - len(ext)
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got k={k}, m={m}")
    c = MatrixConfig(m, k, main, bot, ext)
    c.validate()
    return c
