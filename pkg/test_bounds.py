"""
Tests for the energy lower bounds, sufficient conditions, verdicts and the
coverage classifier.
"""

import math

import numpy as np
import pytest

from bounds import (BOUND_KEYS, CoverageLabel, InapplicableBoundError,
                    InconsistentSpectrumError, LemmaDomainError, NotApplicableError, Verdict,
                    amgm_variance_gap, avg_degree_threshold, bipartite_margin, bound_amgm,
                    bound_avgdeg_log, bound_bipartite, bound_chromatic3, bound_conjugate,
                    bound_conjugate_exact, bound_lemma22, bound_log, bound_variance,
                    build_report, chromatic3_margin, classify, cond_avgdeg_gap,
                    cond_chromatic3, cond_degree_gap, cond_density, cond_golden,
                    cond_lambda711, conjecture1_check, conjecture2_check, golden_margin,
                    lambda711_margin, lemma22_margin, lemma34_derivative_roots, lemma34_f,
                    lemma35_margin, lemma36_margin, lemma36_polynomial, quantity_C)
from graph_core import (complete, complete_bipartite, cycle, degree_profile, path, paw)
from spectra import eigenvalues, exact_determinant

PHI = (1 + math.sqrt(5)) / 2


def test_log_and_amgm_bounds():
    """Log and AM-GM bounds on P4, K3 and K4."""
    print("Testing log and AM-GM bounds...")
    assert abs(bound_log(4, PHI, 1) - (3 + PHI - math.log(PHI))) < 1e-12, "P4 log bound"
    assert abs(bound_log(3, 2.0, 2) - 4.0) < 1e-12, "K3 log bound is tight"
    assert abs(bound_log(4, 3.0, 3) - 6.0) < 1e-12, "K4 log bound is tight"

    assert abs(bound_amgm(4, PHI, 1) - (PHI + 3 * PHI ** (-1 / 3))) < 1e-12, "P4 AM-GM bound"
    assert abs(bound_amgm(3, 2.0, 2) - 4.0) < 1e-12, "K3 AM-GM bound is tight"
    assert bound_amgm(4, PHI, 1) >= bound_log(4, PHI, 1), "AM-GM dominates the log bound"

    with pytest.raises(InapplicableBoundError):
        bound_log(3, 1.414, 0)
    with pytest.raises(InapplicableBoundError):
        bound_amgm(3, 1.414, 0)
    print("✓ Log and AM-GM bound tests passed")


def test_variance_bound():
    """Quantity C and the variance-refined bound."""
    print("Testing variance bound...")
    assert abs(quantity_C(4, 3, PHI, PHI, 1) - 0.9318) < 1e-3, "C(P4) is about 0.9318"
    assert abs(quantity_C(3, 3, 2.0, 1.0, 2) - 1.0) < 1e-12, "C(K3) = 1"
    assert abs(bound_variance(4, 3, PHI, PHI, 1) - 4.4137) < 1e-3, "P4 variance bound"
    assert bound_variance(4, 3, PHI, PHI, 1) <= 2 * math.sqrt(5) + 1e-8, "P4 variance bound is valid"
    assert bound_variance(4, 6, 3.0, 1.0, 3) <= 6 + 1e-8, "K4 variance bound is valid"
    assert bound_variance(4, 3, PHI, PHI, 1) >= bound_amgm(4, PHI, 1), "Variance dominates AM-GM"

    with pytest.raises(InconsistentSpectrumError):
        quantity_C(4, 3, 3.0, 1.0, 1)       # mu1^2 = 9 > 2m = 6
    with pytest.raises(InapplicableBoundError):
        bound_variance(4, 3, PHI, PHI, 0)
    print("✓ Variance bound tests passed")


def test_conjugate_bounds():
    """Conjugate-refined bound and its relation to the golden condition."""
    print("Testing conjugate bounds...")
    p4 = bound_conjugate(4, 3, PHI, PHI, 1)
    assert p4 <= 2 * math.sqrt(5) + 1e-8, "P4 conjugate bound is valid"
    assert bound_conjugate(4, 3, PHI, PHI, 1, keep_log_det=True) >= p4 - 1e-12, \
        "Keeping ln|det| never weakens the bound (|det| >= 1)"
    assert bound_conjugate(4, 6, 3.0, 1.0, 3) <= 6 + 1e-8, "K4 conjugate bound is valid"

    margin = golden_margin(4, 3, PHI, PHI, 1.5)
    assert abs((p4 - 4.5) - margin) < 1e-12, "Conjugate bound minus target is the golden margin"

    exact = bound_conjugate_exact(4, 3, PHI, PHI, 1)
    assert exact <= bound_variance(4, 3, PHI, PHI, 1) + 1e-12, "Exact-denominator chain <= variance bound"

    # C(C6) is about 1.19
    with pytest.raises(InapplicableBoundError):
        bound_conjugate(6, 6, 2.0, 2.0, 4)
    print("✓ Conjugate bound tests passed")


def test_class_bounds():
    """Average-degree, eigenvalue-sum, bipartite and chromatic-3 bounds."""
    print("Testing class bounds...")
    assert abs(bound_avgdeg_log(4, 3.0) - (6 - math.log(3))) < 1e-12, "n - 1 + d - ln d"
    with pytest.raises(InapplicableBoundError):
        bound_avgdeg_log(4, 0.5)

    k4 = eigenvalues(complete(4))
    assert bound_lemma22(4, 6, 3, k4.lambda1) <= k4.energy + 1e-8, "Eigenvalue-sum bound on K4"
    with pytest.raises(InapplicableBoundError):
        bound_lemma22(9, 36, 8, 8.0)

    c6 = eigenvalues(cycle(6))
    assert bound_bipartite(6, c6.lambda1, 4) <= c6.energy + 1e-8, "Bipartite bound on C6"
    assert abs(bound_bipartite(6, 2.0, 4) - (4 + 4 + math.log(4) - 2 * math.log(2))) < 1e-12, \
        "Bipartite bound formula"

    c5 = eigenvalues(cycle(5))
    assert bound_chromatic3(5, c5.lambda1, 2) <= c5.energy + 1e-8, "Chromatic-3 bound on C5"
    with pytest.raises(InapplicableBoundError):
        bound_chromatic3(5, 1.5, 2)
    print("✓ Class bound tests passed")


def test_chromatic3_bound_on_odd_cycles():
    """Odd cycles have lambda1 = 2 up to rounding; the bound must still apply."""
    print("Testing chromatic-3 bound at lambda1 = 2...")
    for g, det in ((complete(3), 2), (cycle(5), 2), (cycle(7), 2)):
        spectrum = eigenvalues(g)
        value = bound_chromatic3(g.order, spectrum.lambda1, det)
        assert value <= spectrum.energy + 1e-8, f"Chromatic-3 bound holds on n={g.order}"
        assert abs(value - bound_chromatic3(g.order, 2.0, det)) < 1e-9, "Matches lambda1 = 2 exactly"
    assert bound_chromatic3(5, 2.0 - 1e-15, 2) > 0, "Rounding below 2 is accepted"

    report = build_report(cycle(5))
    assert report.bounds["chromatic3"] is not None, "C5 report carries the chromatic-3 bound"
    assert "chromatic3" not in report.inapplicable, "and no inapplicability reason"
    print("✓ Chromatic-3 odd cycle tests passed")


def test_margins_and_helpers():
    """Margins and constants used by the coverage conditions."""
    print("Testing margins...")
    assert abs(avg_degree_threshold(11) - 3.20) < 0.01, "11 - 2 ln 11 - 3 = 3.20"
    assert abs(avg_degree_threshold(12) - 4.03) < 0.01, "12 - 2 ln 12 - 3 = 4.03"
    assert abs(bipartite_margin(7.11) - 2.19) < 0.01, "lambda - 2 ln lambda - 1 at 7.11"
    assert chromatic3_margin(10.0) > 0, "Chromatic-3 margin is positive at lambda1 = 10"
    assert abs(chromatic3_margin(10.0) - (5 - 2 * math.log(10) - 1 + math.log(2))) < 1e-12, \
        "Chromatic-3 margin uses -1 + ln 2"
    assert lambda711_margin(11, 20) == 0, "Eigenvalue-sum excess vanishes at n = 11"
    assert lambda711_margin(12, 30) > 0, "and is positive above"

    assert amgm_variance_gap([2.0, 2.0, 2.0]) == pytest.approx(0.0, abs=1e-12), "Equal values give zero gap"
    assert amgm_variance_gap([1.0, 4.0, 9.0]) >= 0, "Refined AM-GM gap is non-negative"
    with pytest.raises(ValueError):
        amgm_variance_gap([1.0, 0.0])
    print("✓ Margin tests passed")


def test_lemma_functions():
    """Lemma margins, the monotone function and their domains."""
    print("Testing lemma functions...")
    assert abs(lemma22_margin(1.0)) < 1e-12, "Margin vanishes at 1"
    assert abs(lemma22_margin(4.5) - 0.52) < 0.01, "Margin at 4.5 is about 0.52"
    assert abs(lemma22_margin(7.11) - 0.0004) < 0.0005, "Margin at 7.11 is about 0.0004"
    grid = np.linspace(0.001, 7.11, 1000)
    assert np.all(lemma22_margin(grid) >= -1e-12), "Margin is non-negative on (0, 7.11]"
    with pytest.raises(LemmaDomainError):
        lemma22_margin(7.2)
    with pytest.raises(LemmaDomainError):
        lemma22_margin(0.0)

    assert abs(lemma35_margin(13.0) - 0.092) < 0.001, "Margin at 13 is about 0.092"
    assert lemma36_margin(13.0) >= 0, "Square-root margin at 13"
    assert lemma36_polynomial(13.0) >= 0, "Squared form at 13"
    assert lemma35_margin(1e6) > 100, "Grows like 2 sqrt(x)"
    assert 0.5 < lemma36_margin(1e6) < 1, "Tends to 1 from below"
    with pytest.raises(LemmaDomainError):
        lemma35_margin(12.0)

    x = np.linspace(3.0, 103.0, 2000)
    values = lemma34_f(x, 5.0, 3.0, 2.0)
    assert np.all(np.diff(values) <= 1e-9), "f is non-increasing on [c, c + 100]"
    assert all(root <= 3.0 for root in lemma34_derivative_roots(3.0)), "Critical points lie below c"
    assert lemma34_derivative_roots(1.0) == (), "No critical points for 4c^2 - 12c + 1 < 0"
    with pytest.raises(LemmaDomainError):
        lemma34_f(1.0, 0.0, -1.0, 0.0)
    print("✓ Lemma function tests passed")


def test_conditions():
    """Sufficient conditions on the listed examples."""
    print("Testing conditions...")
    assert not cond_golden(4, 6, 3.0, 1.0, 3.0), "K4 fails the golden condition"
    assert cond_golden(5, 4, 1.0, 1.0, 1.0), "mu1 = 1 makes the right side zero"

    assert cond_lambda711(eigenvalues(path(5)).lambda1, 5), "P5 has lambda1 < 2"
    assert not cond_lambda711(8.0, 9), "K9 has lambda1 = 8"
    assert not cond_lambda711(PHI, 4), "Order below 5"

    assert cond_density(6, 6), "C6 is sparse"
    assert not cond_density(8, 28), "K8 is dense"
    assert cond_density(7, 18), "18 <= 2.574 * 7"

    assert cond_avgdeg_gap(15, 6.0), "n = 15, d = 6"
    assert not cond_avgdeg_gap(5, 4.0), "K5"

    assert cond_chromatic3(3, 2.0, 5), "C5"
    assert not cond_chromatic3(3, 8.0, 12), "lambda1 in the gap below n = 19"
    assert cond_chromatic3(3, 8.0, 20), "lambda1 in the gap at n = 20"
    assert not cond_chromatic3(4, 2.0, 5), "chromatic number 4"

    assert cond_degree_gap(1, 3.0), "delta = 1 < 3 - ln 3"
    assert not cond_degree_gap(3, 3.0), "Regular graphs have no degree gap"
    print("✓ Condition tests passed")


def test_verdicts():
    """Conjecture checks on the small examples."""
    print("Testing verdicts...")
    p4_energy = 2 * math.sqrt(5)
    assert conjecture1_check(p4_energy, 2, 1, True) is Verdict.PASS, "P4 passes Delta + delta"
    assert conjecture1_check(6.0, 3, 3, True) is Verdict.PASS, "K4 is tight"
    assert conjecture1_check(2.83, 2, 0, False) is Verdict.NOT_APPLICABLE, "P3 is singular"

    assert conjecture2_check(p4_energy, 4, 1.5, True) is Verdict.FAIL, "P4 is an exception"
    assert conjecture2_check(eigenvalues(paw()).energy, 4, 2.0, True) is Verdict.FAIL, \
        "The paw is an exception"
    assert conjecture2_check(6.0, 4, 3.0, True) is Verdict.PASS, "K4 is tight"
    assert conjecture2_check(6.0 - 5e-9, 4, 3.0, True) is Verdict.PASS, "Tolerance is 1e-8"
    assert conjecture2_check(4.0, 4, 1.0, True) is Verdict.PASS, "2K2 is tight"
    print("✓ Verdict tests passed")


def _classify(g):
    return classify(g, eigenvalues(g), exact_determinant(g), degree_profile(g))


def test_classify():
    """Coverage labels."""
    print("Testing classify...")
    c6 = _classify(cycle(6))
    for label in (CoverageLabel.REGULAR, CoverageLabel.LAMBDA711, CoverageLabel.DENSITY2574,
                  CoverageLabel.BIPARTITE, CoverageLabel.PLANAR):
        assert label in c6, f"C6 should be labelled {label.value}"

    p6 = _classify(path(6))
    for label in (CoverageLabel.LAMBDA711, CoverageLabel.DENSITY2574,
                  CoverageLabel.BIPARTITE, CoverageLabel.PLANAR):
        assert label in p6, f"P6 should be labelled {label.value}"
    assert CoverageLabel.REGULAR not in p6, "P6 is not regular"

    k12 = _classify(complete(12))
    assert CoverageLabel.REGULAR in k12, "K12 is regular"
    assert CoverageLabel.LAMBDA711 not in k12, "lambda1(K12) = 11"
    assert CoverageLabel.UNCOVERED not in k12, "Uncovered only appears alone"

    labels = list(CoverageLabel)
    assert c6 == sorted(c6, key=labels.index), "Labels come in declaration order"

    with pytest.raises(NotApplicableError):
        _classify(path(5))     # singular
    with pytest.raises(NotApplicableError):
        _classify(path(4))     # order below 5
    print("✓ Classify tests passed")


def test_build_report():
    """Full reports and their JSON form."""
    print("Testing build_report...")
    report = build_report(path(4))
    assert report.conjecture2 is Verdict.FAIL, "P4 fails the average-degree form"
    assert abs(report.conjecture2_margin + 0.0279) < 1e-4, "Margin is about -0.0279"
    assert report.conjecture1 is Verdict.PASS, "P4 passes Delta + delta"
    assert report.coverage == [], "No coverage below order 5"

    k4 = build_report(complete(4))
    assert k4.conjecture2 is Verdict.PASS and abs(k4.conjecture2_margin) <= 1e-8, "K4 is tight"
    assert k4.det == -3, "det(K4) = -3"

    p3 = build_report(path(3))
    assert not p3.nonsingular, "P3 is singular"
    assert p3.conjecture1 is Verdict.NOT_APPLICABLE and p3.conjecture2 is Verdict.NOT_APPLICABLE, \
        "Singular graphs get no verdict"
    assert all(p3.bounds[key] is None for key in BOUND_KEYS), "No bounds for singular graphs"

    data = build_report(cycle(6)).to_dict()
    for key in ("n", "m", "avg_degree", "det", "energy", "bounds", "verdicts", "coverage"):
        assert key in data, f"JSON report has {key}"
    assert data["det"] == "-4" and isinstance(data["det"], str), "Determinant is a decimal string"
    assert set(data["bounds"]) == set(BOUND_KEYS), "Every bound key is present"
    assert data["bounds"]["chromatic3"] is None, "C6 is bipartite"
    assert data["bounds"]["bipartite"] is not None, "C6 gets the bipartite bound"
    assert "Bipartite" in data["coverage"] and "Regular" in data["coverage"], "C6 coverage"
    assert data["bounds"]["conjugate"] is None, "C(C6) > 1"

    c5 = build_report(cycle(5))
    assert c5.bounds["chromatic3"] is not None, "C5 gets the chromatic-3 bound"
    assert all(value <= c5.energy + 1e-8 for value in c5.bounds.values() if value is not None), \
        "Every applicable bound holds on C5"

    star = build_report(complete_bipartite(1, 3))
    assert not star.nonsingular, "Stars are singular"
    print("✓ build_report tests passed")


if __name__ == "__main__":
    print("=" * 60)
    print("Running Bounds Tests")
    print("=" * 60)
    print()

    try:
        test_log_and_amgm_bounds()
        test_variance_bound()
        test_conjugate_bounds()
        test_class_bounds()
        test_chromatic3_bound_on_odd_cycles()
        test_margins_and_helpers()
        test_lemma_functions()
        test_conditions()
        test_verdicts()
        test_classify()
        test_build_report()

        print()
        print("=" * 60)
        print("All tests passed! ✓")
        print("=" * 60)

    except AssertionError as e:
        print(f"\n✗ Test failed: {e}")
        raise
    except Exception as e:
        print(f"\n✗ Unexpected error: {e}")
        raise
