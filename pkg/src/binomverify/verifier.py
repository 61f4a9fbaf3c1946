"""Three-way checks per parameter point and sweeps over parameter ranges.

For the reduced sums a point is checked three ways: the direct sum against
its closed form, the signed weight total of the enumerated configurations,
and the number (or total weight) of fixed points of the involution. The
involution itself is audited on every enumerated configuration.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Mapping

from . import dominoes, matrices, ominoes, sums
from .exact import Polynomial, format_number, poly_equal

log = logging.getLogger(__name__)

FAMILIES = ("eq3", "eq4", "eq5", "eq6", "eq6_special", "master1", "master2")
MODES = ("formula", "enumerate", "involution", "all")

# Parameter names in sweep order (outermost first).
FAMILY_PARAMS = {
    "eq3": ("m", "k", "b"),
    "eq4": ("m", "k"),
    "eq5": ("m", "k", "b", "q"),
    "eq6": ("m", "k"),
    "eq6_special": ("m",),
    "master1": ("m", "y"),
    "master2": ("m", "y", "z"),
}

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
OK, MISMATCH = "ok", "mismatch"


@dataclass(frozen=True)
class Ceilings:
    """Largest sizes enumerated before a point is reported as skipped."""

    ground: int = 16
    matrix_m: int = 8


@dataclass
class CheckCase:
    family: str
    params: dict
    mode: str = "all"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; choose from {MODES}")
        expected = set(FAMILY_PARAMS[self.family])
        got = set(self.params)
        if got != expected:
            raise ValueError(
                f"{self.family} takes parameters {sorted(expected)}, got {sorted(got)}"
            )
        validate_params(self.family, self.params)


def validate_params(family: str, p: Mapping[str, int]) -> None:
    m = p["m"]
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if family in ("eq3", "eq4", "eq5", "eq6"):
        sums.check_reduced(m, p["k"], p.get("b", 0), p.get("q", 0))
    if family == "eq6" and p["k"] >= m:
        raise ValueError(f"eq6 needs k < m (got k={p['k']}, m={m}); use eq6_special")
    if family in ("master1", "master2") and p["y"] < 0:
        raise ValueError(f"y must be nonnegative, got {p['y']}")
    if family == "master2" and p["z"] < 0:
        raise ValueError(f"z must be nonnegative, got {p['z']}")


@dataclass
class VerificationReport:
    family: str
    params: dict
    mode: str
    formula: object = None
    closed_form: object = None
    enumerated: object = None
    fixed_points: object = None
    config_count: int | None = None
    checks: dict = field(default_factory=dict)
    status: str = OK
    reason: str | None = None
    counterexample: str | None = None
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == OK

    def to_dict(self, include_elapsed: bool = False) -> dict:
        d = {
            "family": self.family,
            "params": {k: str(v) for k, v in self.params.items()},
            "mode": self.mode,
            "formula": _ser(self.formula),
            "closed_form": _ser(self.closed_form),
            "enumerated": _ser(self.enumerated),
            "fixed_points": _ser(self.fixed_points),
            "config_count": _ser(self.config_count),
            "checks": self.checks,
            "status": self.status,
        }
        if self.reason is not None:
            d["reason"] = self.reason
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        if include_elapsed:
            d["volatile"] = {"elapsed": round(self.elapsed, 6)}
        return d


def _ser(v):
    if v is None:
        return None
    if isinstance(v, Polynomial):
        return v.to_json()
    if isinstance(v, (int, Fraction)):
        return format_number(v)
    return str(v)


class _Audit:
    """Collects named checks; the first failure becomes the counterexample."""

    def __init__(self, report: VerificationReport):
        self.report = report

    def record(self, name: str, passed: bool, witness: str | None = None) -> None:
        entry = {"status": PASS if passed else FAIL}
        if not passed:
            entry["witness"] = witness
            if self.report.counterexample is None:
                self.report.counterexample = witness
        self.report.checks[name] = entry

    def skip(self, name: str, why: str) -> None:
        self.report.checks[name] = {"status": SKIPPED, "reason": why}

    def compare(self, name: str, left, right) -> None:
        self.record(name, left == right, None if left == right else f"{_ser(left)} != {_ser(right)}")


def run(
    case: CheckCase,
    ceilings: Ceilings = Ceilings(),
    orientation: str = "bw",
    bij1_column: str = "last",
) -> VerificationReport:
    """Run every comparison requested by ``case.mode``; deterministic apart
    from ``elapsed``."""
    start = time.perf_counter()
    report = VerificationReport(case.family, dict(case.params), case.mode)
    audit = _Audit(report)
    fam = case.family
    if fam in ("eq3", "eq4"):
        _run_dominoes(case, report, audit, ceilings, orientation)
    elif fam == "eq5":
        _run_ominoes(case, report, audit, ceilings)
    elif fam in ("eq6", "eq6_special"):
        _run_matrices(case, report, audit, ceilings, bij1_column)
    else:
        _run_master(case, report, audit)
    if any(c["status"] == FAIL for c in report.checks.values()):
        report.status = MISMATCH
    elif report.reason is not None:
        report.status = SKIPPED
    report.elapsed = time.perf_counter() - start
    return report


def _wants(mode: str, what: str) -> bool:
    return mode == "all" or mode == what


def _involution_audit(audit, configs, involute, weight, conserved, fixed_stream, trace):
    """Audit a sign-reversing involution over an enumerated family."""
    involutive = sign = conserve = True
    witness = {}
    fixed = set()
    for c in configs:
        out = involute(c)
        if out.fixed:
            fixed.add(c)
            continue
        d = out.partner
        back = involute(d)
        if involutive and back.partner != c:
            involutive = False
            witness["involutivity"] = trace(c)
        if sign and weight(d) != -weight(c):
            sign = False
            witness["sign_reversal"] = trace(c)
        if conserve and conserved(c) != conserved(d):
            conserve = False
            witness["conservation"] = trace(c)
    audit.record("involutivity", involutive, witness.get("involutivity"))
    audit.record("sign_reversal", sign, witness.get("sign_reversal"))
    audit.record("conservation", conserve, witness.get("conservation"))
    constructed = set(fixed_stream)
    diff = sorted(trace(c) for c in fixed ^ constructed)
    audit.record("fixed_characterization", not diff, diff[0] if diff else None)


def _run_dominoes(case, report, audit, ceilings, orientation):
    p = case.params
    m, k = p["m"], p["k"]
    if case.family == "eq3":
        variant, b = dominoes.SUN3, p["b"]
        report.formula = sums.eq3_sum(m, k, b)
        report.closed_form = sums.eq3_closed(m, k)
    else:
        variant, b = dominoes.SUN4, 0
        report.formula = sums.eq4_sum(m, k)
        report.closed_form = sums.eq4_closed(m, k)
    audit.compare("formula_vs_closed", report.formula, report.closed_form)
    if not (_wants(case.mode, "enumerate") or _wants(case.mode, "involution")):
        return
    g = dominoes.ground_size(variant, m, k, b)
    if g > ceilings.ground:
        report.reason = f"ground size {g} exceeds ceiling {ceilings.ground}"
        return
    configs = list(dominoes.enumerate_configs(variant, m, k, b))
    report.config_count = len(configs)
    fixed = list(dominoes.fixed_points(variant, m, k, b, orientation))
    if _wants(case.mode, "enumerate"):
        report.enumerated = sum(dominoes.weight(c) for c in configs)
        report.fixed_points = len(fixed)
        audit.compare("config_count", len(configs), dominoes.count_closed(variant, m, k, b))
        audit.compare("enumerated_vs_formula", report.enumerated, report.formula)
        audit.compare("fixed_vs_closed", report.fixed_points, report.closed_form)
    if _wants(case.mode, "involution"):
        _involution_audit(
            audit,
            configs,
            lambda c: dominoes.involute(c, orientation),
            dominoes.weight,
            lambda c: len(c.dominoes) + len(c.blacks),
            fixed,
            dominoes.to_trace,
        )


def _run_ominoes(case, report, audit, ceilings):
    m, k, b, q = (case.params[n] for n in ("m", "k", "b", "q"))
    report.formula = sums.eq5_sum(m, k, b, q)
    report.closed_form = sums.eq5_closed(m, k, q)
    audit.compare("formula_vs_closed", report.formula, report.closed_form)
    if not (_wants(case.mode, "enumerate") or _wants(case.mode, "involution")):
        return
    if q < 1:
        report.reason = "omino engine needs q >= 1"
        return
    g = (q + 1) * m + b
    if g > ceilings.ground:
        report.reason = f"ground size {g} exceeds ceiling {ceilings.ground}"
        return
    configs = list(ominoes.enumerate_configs(m, k, b, q))
    report.config_count = len(configs)
    fixed = list(ominoes.fixed_points(m, k, b, q))
    if _wants(case.mode, "enumerate"):
        report.enumerated = sum(ominoes.weight(c) for c in configs)
        report.fixed_points = len(fixed)
        audit.compare("config_count", len(configs), ominoes.count_closed(m, k, b, q))
        audit.compare("enumerated_vs_formula", report.enumerated, report.formula)
        audit.compare("fixed_vs_closed", report.fixed_points, report.closed_form)
    if _wants(case.mode, "involution"):
        _involution_audit(
            audit,
            configs,
            ominoes.involute,
            ominoes.weight,
            lambda c: len(c.ominoes) + len(c.blacks),
            fixed,
            ominoes.to_trace,
        )


def _run_matrices(case, report, audit, ceilings, bij1_column):
    m = case.params["m"]
    k = m if case.family == "eq6_special" else case.params["k"]
    report.formula = sums.eq6_special_poly(m) if k == m else sums.eq6_poly(m, k)
    report.closed_form = sums.eq6_closed_poly(m, k)
    audit.compare("formula_vs_closed", report.formula, report.closed_form)
    if not (_wants(case.mode, "enumerate") or _wants(case.mode, "involution")):
        return
    if m > ceilings.matrix_m:
        report.reason = f"matrix size m={m} exceeds ceiling {ceilings.matrix_m}"
        return
    survivors = list(matrices.survivors(m, k))
    counts: dict[int, int] = {}
    n = 0
    involutive = sign = legal = True
    witness = {}
    found: set = set()
    trace = matrices.to_trace
    check_inv = _wants(case.mode, "involution")
    for c in matrices.enumerate_configs(m, k):
        n += 1
        w = matrices.weight(c)
        counts[w.exponent] = counts.get(w.exponent, 0) + w.sign
        if not check_inv:
            continue
        out = matrices.classify(c, bij1_column)
        if isinstance(out, matrices.Survivor):
            found.add((c, out.kind))
            continue
        d = out.partner
        if not d.is_legal():
            if legal:
                legal = False
                witness["constraint"] = trace(c)
            continue
        if involutive and matrices.classify(d, bij1_column) != (out.step, c):
            involutive = False
            witness["involutivity"] = trace(c)
        if sign and matrices.weight(d) != -w:
            sign = False
            witness["sign_reversal"] = trace(c)
    report.config_count = n
    total = matrices.polynomial_from_counts(counts)
    if _wants(case.mode, "enumerate"):
        report.enumerated = total
        report.fixed_points = matrices.survivor_total(m, k)
        audit.compare("enumerated_vs_formula", report.enumerated, report.formula)
        audit.compare("survivors_vs_closed", report.fixed_points, report.closed_form)
    if check_inv:
        audit.record("involutivity", involutive, witness.get("involutivity"))
        audit.record("sign_reversal", sign, witness.get("sign_reversal"))
        audit.record("conservation", legal, witness.get("constraint"))
        expected = set(survivors)
        diff = sorted(trace(c) for c, _ in found ^ expected)
        audit.record("fixed_characterization", not diff, diff[0] if diff else None)


def _run_master(case, report, audit):
    p = case.params
    m, y = p["m"], p["y"]
    if case.family == "master1":
        left, right = sums.poly_sides1(y, m)
        numeric_l = lambda x: sums.lhs1(x, y, m)  # noqa: E731
        numeric_r = lambda x: sums.rhs1(x, y, m)  # noqa: E731
    else:
        z = p["z"]
        left, right = sums.poly_sides2(y, z, m)
        numeric_l = lambda x: sums.lhs2(x, y, z, m)  # noqa: E731
        numeric_r = lambda x: sums.rhs2(x, y, z, m)  # noqa: E731
    report.formula = left
    report.closed_form = right
    audit.record("poly_equal", poly_equal(left, right), f"{left} != {right}")
    audit.compare("degree", (left.degree, right.degree), (m + 1, m + 1))
    lead = Fraction(1, factorial(m))
    audit.compare("leading_coefficient", (left[m + 1], right[m + 1]), (lead, lead))
    # the z-term only drops out at z = 0
    if case.family == "master1" or p["z"] == 0:
        roots = [x for x in range(m + 1) if right(x) != 0]
        audit.record("rhs_vanishes", not roots, f"x={roots[0]}" if roots else None)
    bad = [
        x for x in range(-5, 11)
        if not (left(x) == numeric_l(x) and right(x) == numeric_r(x) and numeric_l(x) == numeric_r(x))
    ]
    audit.record("spot_checks", not bad, f"x={bad[0]}" if bad else None)
    for kk in range(m + 1):
        if case.family == "master1":
            res = sums.reduction_chain1(m, kk, y)
        else:
            res = sums.reduction_chain2(m, kk, y, p["z"])
        if not res:
            audit.record("reduction_chain", False, f"k={kk}: {res.failed}")
            break
    else:
        audit.record("reduction_chain", True)


# -- sweeps -------------------------------------------------------------------

@dataclass(frozen=True)
class RangeSpec:
    """Inclusive range ``lo..hi``; a bound may refer to ``m`` as in ``m-1``."""

    lo: int | str
    hi: int | str

    @classmethod
    def parse(cls, text: str) -> "RangeSpec":
        parts = text.split("..")
        if len(parts) == 1:
            lo = hi = _parse_bound(parts[0])
        elif len(parts) == 2:
            lo, hi = _parse_bound(parts[0]), _parse_bound(parts[1])
        else:
            raise ValueError(f"malformed range {text!r}; expected a..b")
        return cls(lo, hi)

    def values(self, m: int | None = None) -> range:
        lo, hi = _resolve(self.lo, m), _resolve(self.hi, m)
        return range(lo, hi + 1)

    @property
    def symbolic(self) -> bool:
        return isinstance(self.lo, str) or isinstance(self.hi, str)


def _parse_bound(s: str) -> int | str:
    s = s.strip().replace(" ", "")
    if not s:
        raise ValueError("empty range bound")
    if s.lstrip("-").isdigit():
        return int(s)
    if s == "m" or (s[:2] in ("m-", "m+") and s[2:].isdigit()):
        return s
    raise ValueError(f"malformed range bound {s!r}")


def _resolve(bound: int | str, m: int | None) -> int:
    if isinstance(bound, int):
        return bound
    if m is None:
        raise ValueError(f"bound {bound!r} refers to m, which is not available here")
    if bound == "m":
        return m
    off = int(bound[2:])
    return m - off if bound[1] == "-" else m + off


def points(family: str, ranges: Mapping[str, RangeSpec]) -> Iterator[dict]:
    """Parameter points of a family in sweep order; raises on any point that
    violates the family's preconditions."""
    names = FAMILY_PARAMS[family]
    missing = [n for n in names if n not in ranges]
    if missing:
        raise ValueError(f"{family} needs ranges for {missing}")
    if ranges["m"].symbolic:
        raise ValueError("the m range cannot refer to m")

    def rec(i: int, acc: dict):
        if i == len(names):
            validate_params(family, acc)
            yield dict(acc)
            return
        name = names[i]
        vals = ranges[name].values(acc.get("m"))
        for v in vals:
            acc[name] = v
            yield from rec(i + 1, acc)
        acc.pop(name, None)

    yield from rec(0, {})


def _run_star(args):
    return run(*args)


def sweep(
    families: Iterable[str],
    ranges: Mapping[str, RangeSpec],
    mode: str = "all",
    ceilings: Ceilings = Ceilings(),
    orientation: str = "bw",
    bij1_column: str = "last",
    jobs: int = 1,
) -> list[VerificationReport]:
    """One report per parameter point, in family then parameter order."""
    cases = [
        CheckCase(fam, pt, mode)
        for fam in families
        for pt in points(fam, {n: r for n, r in ranges.items() if n in FAMILY_PARAMS[fam]})
    ]
    log.info("sweeping %d points", len(cases))
    args = [(c, ceilings, orientation, bij1_column) for c in cases]
    if jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_star, args, chunksize=max(1, len(args) // (4 * jobs))))
    return [_run_star(a) for a in args]


def overall_ok(reports: Iterable[VerificationReport]) -> bool:
    return all(r.status != MISMATCH for r in reports)


# -- output formats --------------------------------------------------------------

def to_json(reports: list[VerificationReport], include_elapsed: bool = False) -> str:
    body = {
        "reports": [r.to_dict(include_elapsed) for r in reports],
        "summary": {
            "points": len(reports),
            OK: sum(r.status == OK for r in reports),
            MISMATCH: sum(r.status == MISMATCH for r in reports),
            SKIPPED: sum(r.status == SKIPPED for r in reports),
        },
    }
    return json.dumps(body, indent=2, sort_keys=True) + "\n"


CSV_FIELDS = (
    "family", "params", "mode", "formula", "closed_form", "enumerated",
    "fixed_points", "config_count", "checks", "status", "reason", "counterexample",
)


def to_csv(reports: list[VerificationReport]) -> str:
    """One row per report; nested values are compact JSON strings."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        d = r.to_dict()
        row = {}
        for name in CSV_FIELDS:
            v = d.get(name)
            if isinstance(v, (dict, list)):
                v = json.dumps(v, sort_keys=True, separators=(",", ":"))
            row[name] = "" if v is None else v
        writer.writerow(row)
    return buf.getvalue()


def to_text(reports: list[VerificationReport]) -> str:
    lines = []
    for r in reports:
        params = " ".join(f"{k}={v}" for k, v in r.params.items())
        parts = [f"{r.family:<12} {params:<22}", f"formula={_show(r.formula)}"]
        if r.enumerated is not None:
            parts.append(f"enumerated={_show(r.enumerated)}")
        if r.fixed_points is not None:
            parts.append(f"fixed={_show(r.fixed_points)}")
        parts.append(r.status.upper())
        if r.reason:
            parts.append(f"({r.reason})")
        if r.counterexample:
            failed = [n for n, c in r.checks.items() if c["status"] == FAIL]
            parts.append(f"failed={','.join(failed)} witness={r.counterexample}")
        lines.append("  ".join(parts))
    n_bad = sum(r.status == MISMATCH for r in reports)
    n_skip = sum(r.status == SKIPPED for r in reports)
    lines.append(f"{len(reports)} points, {n_bad} mismatches, {n_skip} skipped")
    return "\n".join(lines) + "\n"


def _show(v) -> str:
    if isinstance(v, Polynomial) and len(v.coeffs) > 3:
        return "[" + ",".join(v.to_json()) + "]"
    return str(v)
