"""Acceptance gate: every criterion at its stated range and tolerance.

All checks are exact (rational/integer equality) except criterion 13,
whose chi-square decisions run at level alpha = 0.001 with fixed seeds.
One PASS/FAIL line prints per criterion (run with ``pytest -s`` to stream
them).

Criterion 4 is split: the (k, q) = (2, 3) branch holds and passes; the
(1, 4) branch is implemented exactly as stated and fails, because the
stated constant z_circ(1, 4) = 4 is provably not the one under which the
extension-count identity holds (the true factor is 6 on every proper word
of length >= 1; see test_recurrence.py::test_restriction_identity_k1_q4_
window_constant for the identity that does hold). The failure is left red
deliberately rather than weakening the check.
"""

from fractions import Fraction
from itertools import permutations, product

import pytest

from findep.analysis import (
    chi_square_gof,
    k_dependence_counterexample,
    marginalize,
    pushforward,
    symmetry_check,
    verify_k_dependence,
)
from findep.chains import (
    ChainVariant,
    bit_descent_law,
    color_indicator,
    descent_law,
    iota_two_site_statistic,
    j_kernel,
    kernel_equal,
    peak_law,
    q_kernel,
)
from findep.growth import (
    RngStream,
    coupling_kernel,
    eden_sample,
    eden_vs_necklace_kernel_check,
    necklace_sample,
)
from findep.recurrence import (
    b_circ,
    b_circ_mobius,
    b_vec,
    cycle_law,
    line_window_law,
    restriction_sum,
    z_circ,
    z_circ_closed,
)

F = Fraction

ALPHA = 0.001
SAMPLER_SEED = 20260810  # fixed, documented; streams are numbered per case


def _report(criterion: str, passed: bool, detail: str = "") -> bool:
    status = "PASS" if passed else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {criterion}: {status}{suffix}")
    return passed


def _all_words(n, q):
    return product(range(1, q + 1), repeat=n)


def test_criterion_01_partition_closed_form():
    bad = [
        (n, q)
        for q in range(3, 7)
        for n in range(2, 11)
        if z_circ(n, q) != z_circ_closed(n, q)
    ]
    ok = _report("1 partition-closed-form", not bad, "n in [2,10], q in [3,6]")
    assert ok, f"failing (n, q): {bad}"


def test_criterion_02_mobius_equivalence():
    bad = None
    for q in (3, 4):
        for n in range(1, 9):
            for t in _all_words(n, q):
                if b_circ_mobius(t, q) != b_circ(t, q):
                    bad = (t, q)
                    break
    ok = _report("2 mobius-equivalence", bad is None, "every word, n in [1,8], q in {3,4}")
    assert ok, f"first mismatch: {bad}"


def test_criterion_03_law_symmetries():
    bad = []
    for q in (3, 4):
        sigmas = [dict(zip(range(1, q + 1), p)) for p in permutations(range(1, q + 1))]
        for n in range(3, 9):
            d = cycle_law(n, q)
            if not all(symmetry_check(d, "rotation", r=r) for r in range(1, n)):
                bad.append((n, q, "rotation"))
            if not symmetry_check(d, "reflection"):
                bad.append((n, q, "reflection"))
            if not all(symmetry_check(d, "color-permutation", sigma=s) for s in sigmas):
                bad.append((n, q, "color-permutation"))
    ok = _report("3 law-symmetries", not bad, "rotation/reflection/color, n in [3,8]")
    assert ok, f"failing: {bad}"


def test_criterion_04a_restriction_identity_k2_q3():
    bad = None
    for n in range(0, 9):
        for t in _all_words(n, 3):
            if restriction_sum(t, 2, 3) != z_circ(2, 3) * b_vec(t, 3):
                bad = t
                break
        if bad:
            break
    ok = _report("4a restriction-identity (k,q)=(2,3)", bad is None, "every word, n <= 8")
    assert ok, f"first mismatch: {bad}"


def test_criterion_04b_restriction_identity_k1_q4():
    # Implemented exactly as stated: restriction_sum(x, 1, 4) must equal
    # z_circ(1, 4) * b_vec(x, 4) for every word with n <= 8. This is
    # expected to FAIL: the stated constant z_circ(1,4) = 4 is off by the
    # factor 3/2 on every proper word of length >= 1 (the true constant is
    # 6 = q(q-1)/(q-2); the window size 1 is a degenerate case of the
    # inclusion-exclusion step that would otherwise equate the two). The
    # red result is intentional; do not weaken this check.
    bad = None
    for n in range(0, 9):
        for t in _all_words(n, 4):
            if restriction_sum(t, 1, 4) != z_circ(1, 4) * b_vec(t, 4):
                bad = (t, restriction_sum(t, 1, 4), z_circ(1, 4) * b_vec(t, 4))
                break
        if bad:
            break
    ok = _report(
        "4b restriction-identity (k,q)=(1,4)",
        bad is None,
        "as stated; known-unattainable, see ledger" if bad else "every word, n <= 8",
    )
    assert ok, (
        f"identity fails as stated: word {bad[0]} gives extension sum {bad[1]} "
        f"!= {bad[2]} = z_circ(1,4) * b_vec; the factor is 6, not z_circ(1,4) = 4"
    )


def test_criterion_05_window_equality():
    bad = []
    for (k, q) in ((1, 4), (2, 3)):
        for m in range(4, 10):
            lhs = marginalize(cycle_law(m, q), range(1, m - k + 1))
            if lhs != line_window_law(m - k, k, q):
                bad.append((m, k, q))
    ok = _report("5 window-equality", not bad, "m in [4,9], (k,q) in {(1,4),(2,3)}")
    assert ok, f"failing: {bad}"


def test_criterion_06_k_dependence():
    bad = []
    for q, k in ((3, 2), (4, 1)):
        for n in range(5, 10):
            if not verify_k_dependence(cycle_law(n, q), k):
                bad.append((n, q, k))
    sanity = k_dependence_counterexample(cycle_law(5, 3), 1)
    ok = _report(
        "6 k-dependence",
        not bad and sanity is not None,
        f"n in [5,9]; sanity counterexample {sanity}",
    )
    assert ok, f"failing: {bad}; sanity counterexample: {sanity}"


def test_criterion_07_coupling_transport():
    bad = []
    for q in (3, 4):
        for n in range(3, 8):
            kernel = coupling_kernel(n, q)
            if kernel.push(cycle_law(n, q)) != cycle_law(n + 1, q):
                bad.append((n, q, "transport"))
            if not eden_vs_necklace_kernel_check(n, q):
                bad.append((n, q, "eden-step-law"))
    ok = _report("7 coupling-transport", not bad, "n in [3,7], q in {3,4}")
    assert ok, f"failing: {bad}"


def test_criterion_08_two_color_marginal_is_descent_process():
    ind = color_indicator({1, 2})
    bad = [
        n for n in range(3, 9)
        if pushforward(cycle_law(n, 4), ind) != descent_law(n)
    ]
    d3 = descent_law(3)
    uniform = (
        len(d3) == 6
        and all(1 <= sum(s) <= 2 and d3.prob(s) == F(1, 6) for s in d3.support)
    )
    ok = _report("8 descent-marginal", not bad and uniform, "n in [3,8]")
    assert ok, f"failing n: {bad}; n=3 uniform: {uniform}"


def test_criterion_09_one_color_marginal_is_peak_process():
    ind = color_indicator({1})
    bad = [
        n for n in range(3, 9)
        if pushforward(cycle_law(n, 3), ind) != peak_law(n)
    ]
    p3 = peak_law(3)
    uniform = len(p3) == 3 and all(
        sum(s) == 1 and p3.prob(s) == F(1, 3) for s in p3.support
    )
    ok = _report("9 peak-marginal", not bad and uniform, "n in [3,8]")
    assert ok, f"failing n: {bad}; n=3 uniform: {uniform}"


def test_criterion_10_one_of_four_marginal_is_bit_descent_process():
    ind = color_indicator({1})
    bad = [
        n for n in range(3, 10)
        if pushforward(cycle_law(n, 4), ind) != bit_descent_law(n)
    ]
    one_site = marginalize(pushforward(cycle_law(6, 4), ind), {1}).prob((1,))
    ok = _report(
        "10 bit-descent-marginal",
        not bad and one_site == F(1, 4),
        f"n in [3,9]; one-site marginal {one_site}",
    )
    assert ok, f"failing n: {bad}; one-site marginal: {one_site}"


def test_criterion_11_kernel_equality():
    bad = []
    for variant in ChainVariant:
        for n in range(3, 9):
            if not kernel_equal(j_kernel(variant, n), q_kernel(variant, n)):
                bad.append((variant.value, n))
    ok = _report("11 kernel-equality", not bad, "variants (i),(ii), n in [3,8]")
    assert ok, f"failing: {bad}"


def test_criterion_12_block_factor_statistic():
    rep = iota_two_site_statistic()
    ok = (
        rep.two_site == F(1, 6)
        and rep.block_factor_two_site == F(1, 4)
        and rep.two_site != rep.block_factor_two_site
    )
    ok = _report("12 block-factor-statistic", ok, f"{rep.two_site} vs {rep.block_factor_two_site}")
    assert ok, rep


SAMPLER_CASES = [
    ("necklace", necklace_sample, 5, 3),
    ("necklace", necklace_sample, 6, 3),
    ("necklace", necklace_sample, 7, 3),
    ("necklace", necklace_sample, 5, 4),
    ("necklace", necklace_sample, 6, 4),
    ("eden", eden_sample, 5, 3),
    ("eden", eden_sample, 6, 3),
    ("eden", eden_sample, 7, 3),
    ("eden", eden_sample, 5, 4),
    ("eden", eden_sample, 6, 4),
]


@pytest.mark.parametrize("name,sampler,n,q", SAMPLER_CASES)
def test_criterion_13_sampler_fidelity(name, sampler, n, q):
    stream = SAMPLER_CASES.index((name, sampler, n, q))
    rng = RngStream(SAMPLER_SEED, stream)
    counts: dict = {}
    for _ in range(100_000):
        w = sampler(n, q, rng)
        counts[w] = counts.get(w, 0) + 1
    report = chi_square_gof(counts, cycle_law(n, q), alpha=ALPHA)
    _report(
        f"13 sampler-fidelity {name} n={n} q={q}",
        report.passed,
        f"stat={report.statistic:.1f} dof={report.dof} p={report.p_value:.4f}",
    )
    assert report.passed, report
