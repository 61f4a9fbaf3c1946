from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from binomverify import dominoes as D
from binomverify import sums
from binomverify.dominoes import SUN3, SUN4

EXCHANGE_FIRST = "W B B W W W [..] W | B"
EXCHANGE_SECOND = "W B [..] W W [..] W | B"


def brute_force(variant, m, k, b):
    """Oracle: every vertex is W, B, L (left half of a domino) or R; keep the
    words that tile correctly."""
    g = D.ground_size(variant, m, k, b)
    r = D.range_size(variant, m, k, b)
    out = set()
    for word in product("WBLR", repeat=g):
        ok = True
        starts = []
        for v, s in enumerate(word, 1):
            if s == "L":
                if v + 1 > r or word[v] != "R":
                    ok = False
                    break
                starts.append(v)
            elif s == "R" and (v == 1 or word[v - 2] != "L"):
                ok = False
                break
        if not ok or len(starts) > m:
            continue
        blacks = frozenset(v for v, s in enumerate(word, 1) if s == "B")
        if variant == SUN3 and len(blacks) != m - len(starts):
            continue
        out.add(D.DominoConfig(variant, m, k, b, tuple(starts), blacks))
    return out


def small_points(variant, max_ground):
    for m in range(6):
        for k in range(m + 1):
            for b in (range(5) if variant == SUN3 else [0]):
                if D.ground_size(variant, m, k, b) <= max_ground:
                    yield m, k, b


@pytest.mark.parametrize("variant", [SUN3, SUN4])
def test_enumeration_matches_brute_force(variant):
    for m, k, b in small_points(variant, 7):
        got = list(D.enumerate_configs(variant, m, k, b))
        assert len(got) == len(set(got))
        assert set(got) == brute_force(variant, m, k, b)
        assert len(got) == D.count_closed(variant, m, k, b)


def test_enumeration_examples():
    sun3 = list(D.enumerate_configs(SUN3, 1, 0, 0))
    assert [(c.dominoes, sorted(c.blacks)) for c in sun3] == [
        ((), [1]), ((), [2]), ((1,), []),
    ]
    assert list(D.enumerate_configs(SUN3, 0, 0, 0)) == [
        D.DominoConfig(SUN3, 0, 0, 0, (), frozenset())
    ]
    # four colorings of two vertices plus the single domino
    assert len(list(D.enumerate_configs(SUN4, 1, 0))) == 5


def test_enumeration_is_lexicographic():
    configs = list(D.enumerate_configs(SUN4, 2, 1))
    keys = [(c.dominoes, len(c.blacks), sorted(c.blacks)) for c in configs]
    assert keys == sorted(keys)


def test_rejects_k_above_m():
    with pytest.raises(ValueError):
        list(D.enumerate_configs(SUN3, 1, 2, 0))


def test_exchange_pair_weights():
    first = D.parse_trace(EXCHANGE_FIRST, SUN3, 4, 1, 2)
    second = D.parse_trace(EXCHANGE_SECOND, SUN3, 4, 1, 2)
    assert first.dominoes == (7,) and first.blacks == {2, 3, 10}
    assert second.dominoes == (3, 7) and second.blacks == {2, 10}
    assert D.weight(first) == -1
    assert D.weight(second) == +1
    assert D.leftmost_active_pair(first) == (3, "pair")
    assert D.leftmost_active_pair(second) == (3, "domino")
    out = D.involute(first)
    assert out.partner == second and out.site == 3 and out.kind == D.PAIR_TO_DOMINO
    assert D.involute(second).partner == first


def test_small_involution_examples():
    c = D.DominoConfig(SUN3, 1, 0, 0, (), frozenset({2}))
    assert D.involute(c).fixed
    c = D.DominoConfig(SUN3, 1, 0, 0, (), frozenset({1}))
    assert D.involute(c).partner == D.DominoConfig(SUN3, 1, 0, 0, (1,), frozenset())
    white = D.DominoConfig(SUN4, 2, 0, 0, (), frozenset())
    assert D.leftmost_active_pair(white) is None
    assert D.weight(white) == 1


def test_pair_straddling_range_is_not_active():
    # vertex 2 is the last in range; B at 2, W at 3 outside
    c = D.DominoConfig(SUN3, 1, 1, 1, (), frozenset({2}))
    assert c.range_size == 2
    assert D.leftmost_active_pair(c) is None


@pytest.mark.parametrize("orientation", D.ORIENTATIONS)
@pytest.mark.parametrize("variant", [SUN3, SUN4])
def test_involution_properties_exhaustive(variant, orientation):
    for m, k, b in small_points(variant, 14):
        configs = list(D.enumerate_configs(variant, m, k, b))
        fixed = set()
        for c in configs:
            out = D.involute(c, orientation)
            if out.fixed:
                fixed.add(c)
                continue
            d = out.partner
            d.validate()
            assert D.involute(d, orientation).partner == c
            assert D.weight(d) == -D.weight(c)
            assert len(d.dominoes) + len(d.blacks) == len(c.dominoes) + len(c.blacks)
            assert abs(len(d.dominoes) - len(c.dominoes)) == 1
        constructed = list(D.fixed_points(variant, m, k, b, orientation))
        assert len(constructed) == len(set(constructed))
        assert fixed == set(constructed)
        assert all(not c.dominoes for c in fixed)
        total = sum(D.weight(c) for c in configs)
        formula = sums.eq3_sum(m, k, b) if variant == SUN3 else sums.eq4_sum(m, k)
        assert total == formula == len(fixed) == D.fixed_count_closed(variant, m, k)


def test_fixed_point_examples():
    assert list(D.fixed_points(SUN3, 1, 0, 0)) == [
        D.DominoConfig(SUN3, 1, 0, 0, (), frozenset({2}))
    ]
    assert len(list(D.fixed_points(SUN3, 4, 1, 2))) == 2
    assert len(list(D.fixed_points(SUN4, 4, 1))) == 16
    assert D.fixed_count_closed(SUN4, 4, 1) == 16


def test_fixed_points_packing_depends_on_orientation():
    bw = list(D.fixed_points(SUN3, 2, 0, 1, "bw"))
    wb = list(D.fixed_points(SUN3, 2, 0, 1, "wb"))
    assert [sorted(c.blacks) for c in bw] == [[4, 5]]
    assert [sorted(c.blacks) for c in wb] == [[1, 2]]


def test_bad_orientation():
    with pytest.raises(ValueError):
        D.leftmost_active_pair(D.DominoConfig(SUN4, 0, 0, 0, (), frozenset()), "bb")


def test_validate_rejects_bad_configs():
    with pytest.raises(ValueError):
        D.DominoConfig(SUN3, 2, 1, 0, (3,), frozenset({1})).validate()  # leaves range
    with pytest.raises(ValueError):
        D.DominoConfig(SUN3, 2, 0, 0, (1, 2), frozenset()).validate()  # overlap
    with pytest.raises(ValueError):
        D.DominoConfig(SUN3, 2, 0, 0, (1,), frozenset({1})).validate()  # black under domino
    with pytest.raises(ValueError):
        D.DominoConfig(SUN3, 2, 0, 0, (1,), frozenset()).validate()  # black count


def test_parse_trace_errors():
    with pytest.raises(ValueError):
        D.parse_trace("W B B W W W [..] | W B", SUN3, 4, 1, 2)  # misplaced marker
    with pytest.raises(ValueError):
        D.parse_trace("W B", SUN3, 4, 1, 2)  # too short
    with pytest.raises(ValueError):
        D.parse_trace("W X", SUN3, 1, 0, 0)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_trace_round_trip(data):
    variant = data.draw(st.sampled_from([SUN3, SUN4]))
    m = data.draw(st.integers(0, 4))
    k = data.draw(st.integers(0, m))
    b = data.draw(st.integers(0, 3)) if variant == SUN3 else 0
    configs = list(D.enumerate_configs(variant, m, k, b))
    c = data.draw(st.sampled_from(configs))
    assert D.parse_trace(D.to_trace(c), variant, m, k, b) == c
