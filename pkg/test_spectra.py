"""
Tests for eigenvalues, energy, exact determinants and characteristic polynomials.
"""

import math

import numpy as np
import pytest

from graph_core import (Graph, UnsupportedOrderError, complete, cycle, disjoint_union, path, paw,
                        random_graph)
from spectra import (CharPoly, Spectrum, SpectrumError, char_poly, eigenvalues,
                     eigenvalues_batch, energy, exact_determinant, is_nonsingular,
                     spectrum_is_symmetric)


def test_eigenvalues_closed_forms():
    """Path, complete and cycle spectra."""
    print("Testing eigenvalues...")
    p4 = eigenvalues(path(4))
    want = sorted((2 * math.cos(k * math.pi / 5) for k in range(1, 5)), reverse=True)
    assert np.allclose(p4.eigenvalues, want, atol=1e-10), "P4 spectrum is 2cos(k pi / 5)"
    assert abs(p4.energy - 2 * math.sqrt(5)) < 1e-9, "E(P4) = 2 sqrt 5"

    k4 = eigenvalues(complete(4))
    assert np.allclose(k4.eigenvalues, [3, -1, -1, -1], atol=1e-10), "K4 spectrum"
    assert abs(k4.energy - 6) < 1e-10, "E(K4) = 6"
    assert abs(k4.mu1 - 3) < 1e-10 and abs(k4.mu2 - 1) < 1e-10, "K4 mu1 = 3, mu2 = 1"

    c5 = eigenvalues(cycle(5))
    want = sorted((2 * math.cos(2 * math.pi * k / 5) for k in range(5)), reverse=True)
    assert np.allclose(c5.eigenvalues, want, atol=1e-10), "C5 spectrum is 2cos(2 pi k / 5)"
    assert abs(c5.energy - 6.47213595) < 1e-6, "E(C5) is about 6.47214"

    for n in range(1, 31):
        want = sorted((2 * math.cos(k * math.pi / (n + 1)) for k in range(1, n + 1)), reverse=True)
        assert np.allclose(eigenvalues(path(n)).eigenvalues, want, atol=1e-9), f"P{n} closed form"
    print("✓ Eigenvalue tests passed")


def test_spectrum_fields():
    """mu1, mu2 and the single-vertex case."""
    print("Testing spectrum fields...")
    k1 = eigenvalues(Graph(1, (0,)))
    assert k1.energy == 0 and k1.mu1 == 0 and k1.mu2 == 0, "K1 has energy 0 and mu2 = 0"

    p4 = eigenvalues(path(4))
    assert abs(p4.mu1 - p4.mu2) < 1e-10, "Bipartite graphs have mu1 = mu2"

    s = Spectrum.from_eigenvalues([-1.0, 2.0, -1.0])
    assert s.eigenvalues == (2.0, -1.0, -1.0), "Eigenvalues are sorted descending"
    assert s.mu1 == 2.0 and s.mu2 == 1.0, "mu2 is max(lambda_2, -lambda_n)"

    with pytest.raises(SpectrumError):
        Spectrum.from_eigenvalues([1.0, float("nan")])
    print("✓ Spectrum field tests passed")


def test_energy_values():
    """Graph energy for the small examples."""
    print("Testing energy...")
    assert abs(energy(path(4)) - 4.47213595) < 1e-8, "E(P4) is about 4.47214"
    assert abs(energy(paw()) - 4.9624) < 1e-4, "E(paw) is about 4.9624"
    assert energy(Graph(1, (0,))) == 0, "E(K1) = 0"

    g1, g2 = path(4), cycle(5)
    assert abs(energy(disjoint_union(g1, g2)) - energy(g1) - energy(g2)) < 1e-9, \
        "Energy adds over components"
    print("✓ Energy tests passed")


def test_eigenvalues_batch():
    """Stacked eigensolves agree with single solves."""
    print("Testing batched eigenvalues...")
    rng = np.random.default_rng(5)
    graphs = [random_graph(int(rng.integers(1, 9)), 0.5, rng) for _ in range(40)]
    batch = eigenvalues_batch(graphs)
    for g, spectrum in zip(graphs, batch):
        single = eigenvalues(g)
        assert np.allclose(spectrum.eigenvalues, single.eigenvalues, atol=1e-10), \
            "Batched and single spectra agree"
    assert eigenvalues_batch([]) == [], "Empty batch"
    print("✓ Batched eigenvalue tests passed")


def test_symmetry():
    """Bipartite spectra are symmetric about zero."""
    print("Testing spectrum symmetry...")
    assert spectrum_is_symmetric(eigenvalues(cycle(6))), "C6 spectrum is symmetric"
    assert spectrum_is_symmetric(eigenvalues(path(7))), "P7 spectrum is symmetric"
    assert not spectrum_is_symmetric(eigenvalues(complete(3))), "K3 spectrum is not symmetric"
    print("✓ Symmetry tests passed")


def test_exact_determinant():
    """Bareiss determinants against known values."""
    print("Testing exact determinant...")
    assert exact_determinant(path(4)).value == 1, "det(P4) = 1"
    assert exact_determinant(complete(4)).value == -3, "det(K4) = -3"
    assert exact_determinant(path(3)).is_singular, "P3 is singular"
    assert exact_determinant(cycle(4)).value == 0, "C4 is singular"
    assert exact_determinant(cycle(5)).value == 2, "det(C5) = 2"
    assert exact_determinant(cycle(6)).value == -4, "det(C6) = -4"
    assert exact_determinant(Graph(1, (0,))).value == 0, "K1 is singular"

    for n in range(2, 13):
        assert exact_determinant(complete(n)).value == (-1) ** (n - 1) * (n - 1), \
            f"det(K{n}) = (-1)^(n-1) (n-1)"

    # a pivot swap is needed on the first step
    assert exact_determinant(Graph.from_edges(2, [(0, 1)])).value == -1, "det(K2) = -1"

    rng = np.random.default_rng(9)
    for _ in range(30):
        g = random_graph(int(rng.integers(2, 11)), 0.5, rng)
        det = exact_determinant(g).value
        numeric = np.linalg.det(g.adjacency_matrix())
        assert abs(numeric - det) <= 1e-6 * max(1, abs(det)), "Exact and floating determinants agree"

    assert is_nonsingular(path(4)) and not is_nonsingular(path(3)), "Non-singularity from det"
    assert is_nonsingular(complete(4)), "K4 is non-singular"
    print("✓ Exact determinant tests passed")


def test_char_poly():
    """Faddeev-LeVerrier coefficients."""
    print("Testing characteristic polynomial...")
    assert char_poly(complete(3)).coefficients == (1, 0, -3, -2), "K3: x^3 - 3x - 2"
    assert char_poly(path(2)).coefficients == (1, 0, -1), "P2: x^2 - 1"
    assert char_poly(path(4)).coefficients == (1, 0, -3, 0, 1), "P4: x^4 - 3x^2 + 1"

    k4 = char_poly(complete(4))
    assert k4.evaluate(3) == 0 and k4.evaluate(-1) == 0, "K4 eigenvalues are roots"
    assert k4.degree == 4, "Degree equals the order"

    rng = np.random.default_rng(13)
    for _ in range(20):
        g = random_graph(int(rng.integers(1, 10)), 0.5, rng)
        poly = char_poly(g)
        n = g.order
        assert poly.coefficients[-1] == (-1) ** n * exact_determinant(g).value, \
            "Constant term is (-1)^n det A"
        assert poly.coefficients[2 if n >= 2 else 0] == (-g.size if n >= 2 else 1), \
            "Second coefficient is -m"

    assert CharPoly((1, -2, 1)).evaluate(1) == 0, "(x - 1)^2 vanishes at 1"
    with pytest.raises(UnsupportedOrderError):
        char_poly(path(33))
    print("✓ Characteristic polynomial tests passed")


if __name__ == "__main__":
    print("=" * 60)
    print("Running Spectra Tests")
    print("=" * 60)
    print()

    try:
        test_eigenvalues_closed_forms()
        test_spectrum_fields()
        test_energy_values()
        test_eigenvalues_batch()
        test_symmetry()
        test_exact_determinant()
        test_char_poly()

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
