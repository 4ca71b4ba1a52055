"""
Tests for the verify property suite.
"""

import numpy as np
import pytest

import bounds
from property_checks import (SuiteSettings, build_corpus, check_bounds, check_closed_forms,
                             check_composition, check_graph_structure, check_lemma22_grid,
                             check_lemma34_monotone, check_lemma35_36_grid, check_proof_constants,
                             check_spectral_structure, run_property_suite)

SMALL = SuiteSettings(grid_points=2000, exhaustive_order=6, random_graphs=20,
                      random_min_order=7, random_max_order=9, composition_pairs=10,
                      lemma34_draws=20, seed=1)


def _sign_bug(n, m, mu1, mu2, absdet):
    return mu1 - (n - 1) * bounds.quantity_C(n, m, mu1, mu2, absdet)


def test_lemma_checks():
    """Grid and constant checks pass."""
    print("Testing lemma checks...")
    assert check_proof_constants().passed, "Quoted constants"
    assert check_lemma22_grid(100000).passed, "Per-eigenvalue margin on 10^5 points"
    assert check_lemma35_36_grid(100000).passed, "Large-order margins on 10^5 points"
    result = check_lemma34_monotone(100, 10000, np.random.default_rng(42))
    assert result.passed and result.checked == 100, "100 monotonicity draws"
    print("✓ Lemma check tests passed")


def test_corpus_checks():
    """Bound and spectral checks on a small exhaustive corpus."""
    print("Testing corpus checks...")
    records = build_corpus(SMALL, np.random.default_rng(SMALL.seed))
    assert len(records) == 1 + 2 + 4 + 11 + 34 + 156 + 20, "Exhaustive orders plus random graphs"
    assert all(r.chi is not None for r in records[:208]), "Chromatic numbers on the exhaustive part"

    for result in check_bounds(records):
        assert result.passed, f"{result.name}: {result.detail}"
    assert check_spectral_structure(records).passed, "Structural spectral properties"
    assert check_graph_structure(records).passed, "Bipartite and planar structure"
    assert check_closed_forms().passed, "Closed-form spectra"
    assert check_composition(10, np.random.default_rng(3)).passed, "Composition"
    print("✓ Corpus check tests passed")


def test_injected_bug_detected():
    """A sign error in the variance bound breaks dominance."""
    print("Testing mutation detection...")
    records = build_corpus(SMALL, np.random.default_rng(SMALL.seed))
    results = {r.name: r for r in check_bounds(records, variance_bound=_sign_bug)}
    assert not results["dominance variance >= amgm >= log"].passed, "Dominance fails"
    print("✓ Mutation tests passed")


def test_run_property_suite():
    """Whole suite with small settings."""
    print("Testing full suite...")
    results = run_property_suite(SMALL)
    failed = [f"{r.name}: {r.detail}" for r in results if not r.passed]
    assert not failed, f"Failing properties: {failed}"
    assert len({r.name for r in results}) == len(results), "Property names are unique"

    with pytest.raises(ValueError):
        run_property_suite(SuiteSettings(grid_points=0))
    with pytest.raises(ValueError):
        run_property_suite(SuiteSettings(random_min_order=10, random_max_order=9))
    print("✓ Full suite tests passed")


if __name__ == "__main__":
    print("=" * 60)
    print("Running Property Check Tests")
    print("=" * 60)
    print()

    try:
        test_lemma_checks()
        test_corpus_checks()
        test_injected_bug_detected()
        test_run_property_suite()

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
