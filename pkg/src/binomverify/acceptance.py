"""Exit criteria of the package, runnable without pytest (``binomverify selftest``).

Each ``criterion_*`` function returns a :class:`Criterion`; :func:`run_all`
evaluates them in order. Every comparison is an exact equality.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, NamedTuple

from . import dominoes, matrices, sums
from .exact import Polynomial
from .verifier import FAIL, MISMATCH, CheckCase, RangeSpec, run, sweep


class Criterion(NamedTuple):
    number: int
    title: str
    passed: bool
    detail: str

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] criterion {self.number}: {self.title} -- {self.detail}"


def _r(text: str) -> RangeSpec:
    return RangeSpec.parse(text)


def _bad(reports) -> list:
    return [r for r in reports if r.status != "ok"]


def _describe(reports) -> str:
    bad = _bad(reports)
    if not bad:
        return f"{len(reports)} points ok"
    r = bad[0]
    return f"{len(bad)}/{len(reports)} points not ok, first {r.family} {r.params}: {r.status} {r.counterexample or r.reason}"


@lru_cache(maxsize=None)
def _domino_reports(family: str, orientation: str):
    ranges = {"m": _r("0..5"), "k": _r("0..m"), "b": _r("0..4")}
    return tuple(sweep([family], ranges, mode="all", orientation=orientation))


@lru_cache(maxsize=None)
def _omino_reports():
    reports = []
    for q in range(1, 5):
        for m in range(12 // (q + 1) + 1):
            for k in range(m + 1):
                for b in range(0, 13 - (q + 1) * m):
                    reports.append(run(CheckCase("eq5", {"m": m, "k": k, "b": b, "q": q})))
    return tuple(reports)


@lru_cache(maxsize=None)
def _matrix_reports(bij1_column: str = "last"):
    general = sweep(["eq6"], {"m": _r("1..6"), "k": _r("0..m-1")}, bij1_column=bij1_column)
    special = sweep(["eq6_special"], {"m": _r("0..6")}, bij1_column=bij1_column)
    return tuple(general), tuple(special)


def criterion_1() -> Criterion:
    bad = [
        (m, k, b)
        for m in range(9) for k in range(m + 1) for b in range(5)
        if sums.eq3_sum(m, k, b) != 2**k
    ]
    reports = _domino_reports("eq3", "bw")
    ok = not bad and not _bad(reports)
    detail = f"formula sweep m<=8: {'ok' if not bad else bad[0]}; enumeration m<=5: {_describe(reports)}"
    return Criterion(1, "eq3 sum = 2^k, enumeration and fixed-point census agree", ok, detail)


def criterion_2() -> Criterion:
    bad = [
        (m, k)
        for m in range(9) for k in range(m + 1)
        if sums.eq4_sum(m, k) != (2 * m - k + 1) * 2**k
    ]
    reports = _domino_reports("eq4", "bw")
    ok = not bad and not _bad(reports)
    detail = f"formula sweep m<=8: {'ok' if not bad else bad[0]}; enumeration m<=5: {_describe(reports)}"
    return Criterion(2, "eq4 sum = (2m-k+1) 2^k, enumeration and census agree", ok, detail)


def criterion_3() -> Criterion:
    bad = [
        (m, k, b, q)
        for m in range(7) for k in range(m + 1) for b in range(4) for q in range(5)
        if sums.eq5_sum(m, k, b, q) != q ** (m - k) * (1 + q) ** k
    ]
    reports = _omino_reports()
    ok = not bad and not _bad(reports)
    detail = f"formula sweep m<=6: {'ok' if not bad else bad[0]}; enumeration (q+1)m+b<=12: {_describe(reports)}"
    return Criterion(3, "omino sum = q^(m-k)(1+q)^k, enumeration and census agree", ok, detail)


def criterion_4() -> Criterion:
    bad = []
    for m in range(9):
        total = matrices.weight_total(m, m)
        if total != Polynomial.constant(m + 1, "q"):
            bad.append(f"weight_total({m},{m})={total}")
        for q in range(5):
            if sums.eq6_special_sum(m, q) != m + 1:
                bad.append(f"eq6_special_sum({m},{q})")
    detail = "m<=8 ok" if not bad else bad[0]
    return Criterion(4, "matrix case k=m totals m+1", not bad, detail)


def criterion_5() -> Criterion:
    general, _ = _matrix_reports()
    bad = []
    for r in general:
        m, k = r.params["m"], r.params["k"]
        closed = sums.eq6_closed_poly(m, k)
        survivors = (m + 1) * Polynomial.variable("q") ** (m - k) + (m - k) * Polynomial.variable("q") ** (m - k - 1)
        if not (r.enumerated == r.formula == closed == r.fixed_points == survivors):
            bad.append((m, k))
    detail = f"{len(general)} points ok" if not bad else f"first bad (m,k)={bad[0]}"
    return Criterion(5, "matrix case k<m: weight total = sum = closed form = survivors", not bad, detail)


def criterion_6() -> Criterion:
    problems = []
    for orientation in ("bw", "wb"):
        for fam in ("eq3", "eq4"):
            reports = _domino_reports(fam, orientation)
            if _bad(reports):
                problems.append(f"{fam}/{orientation}: {_describe(reports)}")
    if _bad(_omino_reports()):
        problems.append(f"eq5: {_describe(_omino_reports())}")
    general, special = _matrix_reports()
    for reports in (general, special):
        if _bad(reports):
            problems.append(f"matrices: {_describe(reports)}")
    # the bij1 map keyed on the first 11 column must be caught
    mutated = [r for group in _matrix_reports("first") for r in group]
    caught = [r for r in mutated if r.status == MISMATCH]
    if not caught:
        problems.append("mutation with first-column bij1 went undetected")
    detail = problems[0] if problems else (
        f"all involution suites pass; mutation caught at {len(caught)} points "
        f"(first: m={caught[0].params['m']}, "
        f"{next(n for n, c in caught[0].checks.items() if c['status'] == FAIL)})"
    )
    return Criterion(6, "involution property suites and mutation guard", not problems, detail)


def criterion_7() -> Criterion:
    reports = sweep(["master1"], {"m": _r("0..6"), "y": _r("0..3")})
    reports += sweep(["master2"], {"m": _r("0..6"), "y": _r("0..3"), "z": _r("0..3")})
    chain_bad = []
    for m in range(6):
        for k in range(m + 1):
            for b in range(5):
                if not sums.reduction_chain1(m, k, b):
                    chain_bad.append(("chain1", m, k, b))
                for q in range(5):
                    res = sums.reduction_chain2(m, k, b, q)
                    if not res:
                        chain_bad.append(("chain2", m, k, b, q, res.failed))
    ok = not _bad(reports) and not chain_bad
    detail = f"polynomial checks: {_describe(reports)}; reduction chains m<=5: " + (
        "ok" if not chain_bad else str(chain_bad[0])
    )
    return Criterion(7, "master identities as polynomials in x", ok, detail)


EXCHANGE_FIRST = "W B B W W W [..] W | B"
EXCHANGE_SECOND = "W B [..] W W [..] W | B"
BIJ1_LEFT = ("010000000", "110101110")
BIJ1_RIGHT = ("010010000", "110111100")
EXAMPLE_M10 = ("0u10110000", "111011u000")


def criterion_8() -> Criterion:
    problems = []
    first = dominoes.parse_trace(EXCHANGE_FIRST, dominoes.SUN3, 4, 1, 2)
    second = dominoes.parse_trace(EXCHANGE_SECOND, dominoes.SUN3, 4, 1, 2)
    if (dominoes.weight(first), dominoes.weight(second)) != (-1, 1):
        problems.append("exchange pair weights")
    if dominoes.involute(first).partner != second or dominoes.involute(second).partner != first:
        problems.append("exchange pair not swapped")
    left = matrices.parse_trace(*BIJ1_LEFT)
    right = matrices.parse_trace(*BIJ1_RIGHT)
    if matrices.step2_bij1(left).partner != right or matrices.step2_bij1(right).partner != left:
        problems.append("bij1 pair not exchanged")
    ex = matrices.parse_trace(*EXAMPLE_M10)
    sets = (set(ex.K), set(ex.J), set(ex.A), set(ex.B))
    if sets != ({3, 5, 6}, {1, 2, 3, 5, 6}, {2}, {7}):
        problems.append(f"m=10 example parsed to {sets}")
    out = matrices.classify(ex)
    if not (isinstance(out, matrices.Killed) and out.step == 1):
        problems.append(f"m=10 example classified as {out}")
    detail = "exchange pair, bij1 pair and m=10 example reproduced" if not problems else problems[0]
    return Criterion(8, "worked examples", not problems, detail)


CRITERIA: tuple[Callable[[], Criterion], ...] = (
    criterion_1, criterion_2, criterion_3, criterion_4,
    criterion_5, criterion_6, criterion_7, criterion_8,
)


def run_all(echo: Callable[[str], None] | None = print) -> list[Criterion]:
    results = []
    for fn in CRITERIA:
        res = fn()
        results.append(res)
        if echo:
            echo(res.line())
    return results
