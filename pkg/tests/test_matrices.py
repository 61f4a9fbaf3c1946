from itertools import chain, combinations, product

import pytest

from binomverify import matrices as M
from binomverify import sums
from binomverify.exact import Polynomial
from binomverify.matrices import P, U

Q = Polynomial.variable("q")

BIJ1_LEFT = ("010000000", "110101110")
BIJ1_RIGHT = ("010010000", "110111100")
EXAMPLE_M10 = ("0u10110000", "111011u000")


def subsets(s):
    s = sorted(s)
    return chain.from_iterable(combinations(s, n) for n in range(len(s) + 1))


def tuple_weight_total(m, k):
    """Oracle: sum over 5-tuples (i, J, K, A, B) with J in [i], K an
    (m-i)-subset of J u E, A in (J u E) minus K, B in [i] minus J, of
    (-1)^(|K|+|B|) q^(|A|+|B|)."""
    E = set(range(m + 1, 2 * m - k + 1))
    counts = {}
    for i in range(m + 1):
        I_ = set(range(1, i + 1))
        for J in subsets(I_):
            pool = set(J) | E
            for K in combinations(sorted(pool), m - i):
                for A in subsets(pool - set(K)):
                    for B in subsets(I_ - set(J)):
                        e = len(A) + len(B)
                        counts[e] = counts.get(e, 0) + (-1) ** (len(K) + len(B))
    return M.polynomial_from_counts(counts)


def tuple_configs(m, k):
    """Oracle for the legal set: the compact (J, K, A, B) description."""
    out = set()
    for top, bottom, ext in product(
        product("01u", repeat=m), product("01u", repeat=m), product("01u", repeat=m - k)
    ):
        K = {p for p, c in enumerate(top + ext, 1) if c == "1"}
        A = {p for p, c in enumerate(top + ext, 1) if c == "u"}
        J = {p for p, c in enumerate(bottom, 1) if c == "1"}
        B = {p for p, c in enumerate(bottom, 1) if c == "u"}
        main = set(range(1, m + 1))
        if not (K & main) <= J or not (A & main) <= J or J & B:
            continue
        if max(J | B, default=0) > m - len(K):
            continue
        out.add(M.MatrixConfig(
            m, k, tuple(M.Mark(c) for c in top), tuple(M.Mark(c) for c in bottom),
            tuple(M.Mark(c) for c in ext),
        ))
    return out


@pytest.mark.parametrize("m", range(4))
def test_enumeration_matches_set_description(m):
    for k in range(m + 1):
        got = list(M.enumerate_configs(m, k))
        assert len(got) == len(set(got))
        assert set(got) == tuple_configs(m, k)


@pytest.mark.parametrize("m", range(5))
def test_weight_total_matches_tuple_oracle(m):
    for k in range(m + 1):
        assert M.weight_total(m, k) == tuple_weight_total(m, k)


def test_enumeration_examples():
    configs = list(M.enumerate_configs(1, 1))
    cols = [(c.top[0].value, c.bottom[0].value) for c in configs]
    assert cols == [("0", "0"), ("0", "1"), ("u", "1"), ("0", "u")]
    assert list(M.enumerate_configs(0, 0)) == [M.MatrixConfig(0, 0, (), (), ())]


def test_worked_example_m10():
    c = M.parse_trace(*EXAMPLE_M10)
    assert c.is_legal()
    assert c.trailing_plain() == 3
    assert (c.K, c.J, c.A, c.B) == ({3, 5, 6}, {1, 2, 3, 5, 6}, {2}, {7})
    assert c.i == 7
    w = M.weight(c)
    assert (w.sign, w.exponent) == (1, 2)
    out = M.classify(c)
    assert out.step == 1
    assert out.partner.top[1] is P and out.partner.bottom[1] is U


def test_weights():
    assert M.weight(M.parse_trace("000", "000")) == M.QMonomial(1, 0)
    assert M.weight(M.parse_trace("0", "u")) == M.QMonomial(-1, 1)
    assert M.weight_total(1, 1) == Polynomial.constant(2, "q")
    assert M.weight_total(1, 0) == 1 + 2 * Q
    for m in range(9):
        assert M.weight_total(m, m) == Polynomial.constant(m + 1, "q")


def test_step1():
    c = M.parse_trace("000", "0u0")
    d = M.step1_underline(c).partner
    assert M.to_trace(d) == "0u0 / 010"
    assert M.step1_underline(d).partner == c
    assert not M.step1_underline(M.parse_trace("000 u", "000")).applies


def test_bij1_display_pair():
    left = M.parse_trace(*BIJ1_LEFT)
    right = M.parse_trace(*BIJ1_RIGHT)
    assert left.K == {2} and left.J == {1, 2, 4, 6, 7, 8}
    assert right.K == {2, 5} and right.J == {1, 2, 4, 5, 6, 7}
    assert M.step2_bij1(left).partner == right
    assert M.step2_bij1(right).partner == left
    assert M.classify(left) == M.Killed(2, right)


def test_bij1_small_case():
    c = M.parse_trace("00", "01")
    d = M.step2_bij1(c).partner
    assert M.to_trace(d) == "10 / 10"
    assert d.is_legal()
    assert M.step2_bij1(d).partner == c


def test_bij1_not_applicable_on_segment():
    assert not M.step2_bij1(M.parse_trace("0000", "1100")).applies


def test_bij1_first_column_breaks_involution():
    # two 11 columns; keying on the first one does not come back
    c = M.parse_trace("0100100000", "0101101000")
    assert c.is_legal()
    assert M.classify(M.classify(c).partner) == M.Killed(2, c)
    d = M.classify(c, "first").partner
    assert not d.is_legal() or M.classify(d, "first") != M.Killed(2, c)


def test_step3_examples():
    c = M.parse_trace("000 00", "000")
    assert M.to_trace(M.step3_extflip(c).partner) == "000 01 / 000"
    s = M.step3_extflip(M.parse_trace("000 0u", "000"))
    assert not s.applies and s.survivor == M.EXT_SINGLE_PLAIN
    s = M.step3_extflip(M.parse_trace("000 uu", "100"))
    assert not s.applies and s.survivor == M.EXT_UNDERLINED


def test_step4_examples():
    a1 = M.parse_trace("00 1", "00")
    a0 = M.parse_trace("00 0", "10")
    assert M.step4_transfer(a1).partner == a0
    assert M.step4_transfer(a0).partner == a1
    assert M.classify(a1) == M.Killed(4, a0)


def test_classify_k_equal_m_one():
    kinds = [M.classify(c) for c in M.enumerate_configs(1, 1)]
    survivors = [c for c, out in zip(M.enumerate_configs(1, 1), kinds) if isinstance(out, M.Survivor)]
    assert [M.to_trace(c) for c in survivors] == ["0 / 0", "0 / 1"]


@pytest.mark.parametrize("m", range(6))
def test_pipeline_is_a_sign_reversing_involution(m):
    for k in range(m + 1):
        found = set()
        for c in M.enumerate_configs(m, k):
            out = M.classify(c)
            if isinstance(out, M.Survivor):
                found.add((c, out.kind))
                continue
            d = out.partner
            assert d.is_legal()
            # same step on the way back, so no earlier step applies to d
            assert M.classify(d) == M.Killed(out.step, c)
            assert M.weight(d) == -M.weight(c)
        assert found == set(M.survivors(m, k))
        total = M.survivor_total(m, k)
        assert total == sums.eq6_closed_poly(m, k)
        if k < m:
            assert total == (m + 1) * Q ** (m - k) + (m - k) * Q ** (m - k - 1)


@pytest.mark.parametrize("m", range(1, 6))
def test_weight_total_equals_eq6(m):
    for k in range(m):
        assert M.weight_total(m, k) == sums.eq6_poly(m, k)


@pytest.mark.parametrize("q", [1, 2, 3])
def test_explicit_colors_match_weight_polynomial(q):
    for m in range(4):
        for k in range(m + 1):
            assert M.colored_signed_count(m, k, q) == M.weight_total(m, k)(q)


def test_parse_errors():
    with pytest.raises(ValueError):
        M.parse_trace("1", "0")  # illegal column
    with pytest.raises(ValueError):
        M.parse_trace("01", "11")  # no trailing zero for K
    with pytest.raises(ValueError):
        M.parse_trace("0x", "00")
    with pytest.raises(ValueError):
        M.parse_trace("00", "000")


def test_trace_round_trip():
    for c in M.enumerate_configs(3, 1):
        top, bottom = M.to_trace(c).split(" / ")
        assert M.parse_trace(top, bottom) == c
