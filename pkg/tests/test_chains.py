"""Binary marginal laws and the J/Q insertion chains.

Frozen values come from independent enumeration scripts over permutations
and bit strings run before the module was written.
"""

from fractions import Fraction
from itertools import permutations

import pytest

from findep.analysis import pushforward, tv_distance
from findep.chains import (
    ChainVariant,
    bit_descent_law,
    bit_descent_window_law,
    chain_law,
    color_indicator,
    descent_law,
    descent_window_law,
    initial_law,
    iota_text,
    iota_two_site_statistic,
    j_kernel,
    kernel_equal,
    peak_law,
    peak_window_law,
    q_kernel,
)
from findep.dist import ExactDist
from findep.recurrence import cycle_law
from findep.words import Word

F = Fraction
V1 = ChainVariant.COLORS_ONE_TWO_Q4
V2 = ChainVariant.COLOR_ONE_Q3


def rotations(t):
    return {t[r:] + t[:r] for r in range(len(t))}


# -- target laws ----------------------------------------------------------------


def test_descent_law_3_uniform_over_weight_1_and_2():
    d = descent_law(3)
    assert len(d) == 6
    for s in d.support:
        assert 1 <= sum(s) <= 2
        assert d.prob(s) == F(1, 6)
    assert d.prob((0, 0, 0)) == 0


def test_descent_law_no_full_descent_cycle():
    assert descent_law(4).prob((1, 1, 1, 1)) == 0


def test_peak_law_3_uniform_over_singletons():
    d = peak_law(3)
    assert len(d) == 3
    for s in d.support:
        assert sum(s) == 1
        assert d.prob(s) == F(1, 3)


def test_peak_law_is_hard_core():
    for n in (3, 4, 5, 6):
        for s in peak_law(n).support:
            assert not any(s[i] == 1 and s[(i + 1) % n] == 1 for i in range(n))


def test_peak_law_4_antipodal_weight_2():
    # 4 permutations of S_4 have peaks exactly at one antipodal pair
    d = peak_law(4)
    assert d.prob((1, 0, 1, 0)) == F(4, 24)
    assert d.prob((0, 1, 0, 1)) == F(4, 24)


def test_bit_descent_law_3():
    d = bit_descent_law(3)
    assert d.prob((0, 0, 0)) == F(1, 4)
    for s in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        assert d.prob(s) == F(1, 4)
    assert sum(p for s, p in d.items() if sum(s) >= 2) == 0


def test_bit_descent_is_hard_core():
    for n in (3, 4, 5):
        for s in bit_descent_law(n).support:
            assert not any(s[i] == 1 and s[(i + 1) % n] == 1 for i in range(n))


def test_law_range_guards():
    with pytest.raises(ValueError):
        descent_law(2)
    with pytest.raises(ValueError):
        peak_law(10)
    with pytest.raises(ValueError):
        bit_descent_law(21)


# -- initial laws ----------------------------------------------------------------


def test_initial_laws():
    assert initial_law(V1) == descent_law(3)
    assert initial_law(V2) == peak_law(3)
    assert initial_law(V1).prob((0, 0, 0)) == 0
    assert initial_law(V2).prob((0, 0, 0)) == 0


# -- kernels ---------------------------------------------------------------------


def test_variant_i_row_from_100():
    # From (1,0,0) both rules put mass 1/3 on each rotation class of
    # (1,0,1,0), (1,1,0,0), (1,0,0,0), uniformly within the class.
    for kern in (j_kernel(V1, 3, states=[(1, 0, 0)]), q_kernel(V1, 3, states=[(1, 0, 0)])):
        row = kern.row((1, 0, 0))
        for rep in ((1, 0, 1, 0), (1, 1, 0, 0), (1, 0, 0, 0)):
            cls = rotations(rep)
            mass = sum(row.prob(s) for s in cls)
            assert mass == F(1, 3)
            probs = {row.prob(s) for s in cls}
            assert len(probs) == 1  # uniform within the rotation class


def test_variant_ii_row_from_000():
    for kern in (j_kernel(V2, 3, states=[(0, 0, 0)]), q_kernel(V2, 3, states=[(0, 0, 0)])):
        row = kern.row((0, 0, 0))
        expected = ExactDist.from_weights({s: 1 for s in rotations((1, 0, 0, 0))})
        assert row == expected


def test_variant_ii_j_rule_never_creates_adjacent_ones():
    kern = j_kernel(V2, 5)
    for state in kern.states:
        for succ in kern.row(state).support:
            n = len(succ)
            assert not any(succ[i] == 1 and succ[(i + 1) % n] == 1 for i in range(n))


def test_variant_ii_q_kernel_rejects_adjacent_ones():
    with pytest.raises(ValueError):
        q_kernel(V2, 4, states=[(1, 1, 0, 0)])


def test_kernel_equality_small():
    for variant in (V1, V2):
        for n in (3, 4, 5, 6):
            assert kernel_equal(j_kernel(variant, n), q_kernel(variant, n))


def test_kernels_of_different_variants_differ():
    assert not kernel_equal(j_kernel(V1, 4), j_kernel(V2, 4))


def test_kernel_equal_rejects_mismatched_lengths():
    with pytest.raises(ValueError):
        kernel_equal(j_kernel(V1, 3), j_kernel(V1, 4))


# -- chain laws vs pushforwards ---------------------------------------------------


def test_chain_law_matches_cycle_pushforward():
    for n in (3, 4, 5, 6):
        assert chain_law(V1, n) == pushforward(cycle_law(n, 4), color_indicator({1, 2}))
        assert chain_law(V2, n) == pushforward(cycle_law(n, 3), color_indicator({1}))


def test_cycle_pushforward_matches_targets_small():
    for n in (3, 4, 5):
        assert pushforward(cycle_law(n, 4), color_indicator({1, 2})) == descent_law(n)
        assert pushforward(cycle_law(n, 3), color_indicator({1})) == peak_law(n)
        assert pushforward(cycle_law(n, 4), color_indicator({1})) == bit_descent_law(n)


# -- line windows -----------------------------------------------------------------


def _oracle_linear_descents(n):
    from collections import Counter

    c = Counter()
    for pi in permutations(range(n + 1)):
        c[tuple(int(pi[i] > pi[i + 1]) for i in range(n))] += 1
    return ExactDist.from_weights(c)


def test_descent_window_law_matches_oracle():
    for n in (1, 2, 3, 4):
        assert descent_window_law(n) == _oracle_linear_descents(n)


def test_window_laws_frozen_values():
    assert descent_window_law(1).prob((1,)) == F(1, 2)
    assert descent_window_law(2).prob((1, 1)) == F(1, 6)
    assert peak_window_law(1).prob((1,)) == F(1, 3)
    assert bit_descent_window_law(1).prob((1,)) == F(1, 4)


# -- block-factor statistic ---------------------------------------------------------


def test_iota_two_site_statistic():
    rep = iota_two_site_statistic()
    assert rep.two_site == F(1, 6)
    assert rep.block_factor_two_site == F(1, 4)
    assert rep.single_site == F(1, 2)
    assert rep.two_site != rep.block_factor_two_site


def test_iota_text():
    assert iota_text(Word.parse("1234", 4)) == "12**"


def test_iota_pushforward_example():
    d = pushforward(cycle_law(3, 4), iota_text)
    assert d.prob("12*") == F(1, 12)  # preimages 123 and 124, each 1/24


# -- distances ----------------------------------------------------------------------


def test_tv_descent_vs_peak():
    assert tv_distance(descent_law(3), peak_law(3)) == F(1, 2)
