"""
Property Checks
Batch suite run by `analyze.py verify`: lemma grids, quoted constants, bound
validity and dominance, structural spectral properties and the composition
property for disjoint unions.
"""

import math
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

import bounds
from graph_core import (EXACT_LIMIT, DegreeProfile, Graph, chromatic_number, cycle,
                        degree_profile, disjoint_union, is_bipartite, is_planar,
                        is_regular, path, random_graph)
from enumeration import generate_all
from spectra import (ExactDet, Spectrum, eigenvalues, eigenvalues_batch,
                     exact_determinant, spectrum_is_symmetric)


@dataclass
class SuiteSettings:
    """Sizes of the verify suite (see analysis_config.yaml)."""

    grid_points: int = 100000
    exhaustive_order: int = 8
    random_graphs: int = 1000
    random_min_order: int = 9
    random_max_order: int = 14
    edge_probability: float = 0.5
    composition_pairs: int = 200
    lemma34_draws: int = 100
    seed: int = 42

    def validate(self):
        if self.grid_points < 1:
            raise ValueError("grid_points must be at least 1")
        if not 1 <= self.exhaustive_order <= 10:
            raise ValueError("exhaustive_order must be between 1 and 10")
        if self.random_graphs < 0 or self.composition_pairs < 0 or self.lemma34_draws < 0:
            raise ValueError("sample counts must be non-negative")
        if not 1 <= self.random_min_order <= self.random_max_order <= 62:
            raise ValueError("random orders must satisfy 1 <= min <= max <= 62")
        if not 0.0 <= self.edge_probability <= 1.0:
            raise ValueError("edge_probability must be between 0 and 1")


@dataclass
class PropertyResult:
    name: str
    passed: bool
    checked: int
    detail: str = ""


@dataclass
class GraphRecord:
    graph: Graph
    profile: DegreeProfile
    spectrum: Spectrum
    det: ExactDet
    chi: Optional[int] = None


def _result(name: str, failures: List[str], checked: int) -> PropertyResult:
    detail = "; ".join(failures[:3])
    if len(failures) > 3:
        detail += f"; ... {len(failures) - 3} more"
    return PropertyResult(name, not failures, checked, detail)


def _non_increasing(values: np.ndarray, tol: float) -> bool:
    return bool(np.all(np.diff(values) <= tol))


def _non_decreasing(values: np.ndarray, tol: float) -> bool:
    return bool(np.all(np.diff(values) >= -tol))


# ---------------------------------------------------------------------------
# Lemma grids and constants
# ---------------------------------------------------------------------------

def check_lemma22_grid(points: int) -> PropertyResult:
    grid = np.linspace(0.001, bounds.LAMBDA_THRESHOLD, points)
    margins = bounds.lemma22_margin(grid)
    margins = np.atleast_1d(margins)
    bad = grid[margins < -1e-12]
    failures = [f"x={x:.6f}" for x in bad]
    return _result("per-eigenvalue margin >= 0 on (0.001, 7.11]", failures, points)


# below this c, f' has both roots above c and f rises on a short interval
LEMMA34_MIN_C = (3 - 2 * math.sqrt(2)) / 2


def check_lemma34_monotone(draws: int, points: int, rng: np.random.Generator) -> PropertyResult:
    failures = []
    for _ in range(draws):
        b = rng.uniform(-50, 50)
        c = rng.uniform(0, 10)
        d = rng.uniform(0, 10)
        # small c: f' vanishes only below x = 1/2, so test from 1
        lower = c if c >= LEMMA34_MIN_C else 1.0
        grid = np.linspace(lower, c + 100, min(points, 10000))
        values = np.atleast_1d(bounds.lemma34_f(grid, b, c, d))
        if not _non_increasing(values, 1e-9):
            failures.append(f"b={b:.3f} c={c:.3f} d={d:.3f}")
        if c >= LEMMA34_MIN_C and any(root > c + 1e-12
                                      for root in bounds.lemma34_derivative_roots(c)):
            failures.append(f"derivative root above c={c:.3f}")
    return _result("golden-condition function non-increasing on [c, c+100]", failures, draws)


def check_lemma35_36_grid(points: int) -> PropertyResult:
    grid = np.linspace(bounds.LEMMA_MIN_X, 1e4, points)
    failures = []
    for name, func in (("lemma35_margin", bounds.lemma35_margin),
                       ("lemma36_margin", bounds.lemma36_margin),
                       ("lemma36_polynomial", bounds.lemma36_polynomial)):
        values = np.atleast_1d(func(grid))
        if np.any(values < -1e-12):
            failures.append(f"{name} negative at x={grid[values < -1e-12][0]:.4f}")
    return _result("large-order margins >= 0 on [13, 10^4]", failures, 3 * points)


def check_helper_monotonicity(points: int) -> PropertyResult:
    failures = []
    grid = np.linspace(1.0, 100.0, min(points, 10000))
    if not _non_decreasing(bounds.x_minus_log(grid), 1e-12):
        failures.append("x - ln x not increasing on [1, 100]")
    if not _non_decreasing(bounds.sqrt_minus_log_sqrt(grid), 1e-12):
        failures.append("sqrt(x) - ln sqrt(x) not increasing on [1, 100]")
    above_two = np.linspace(2.0 + 1e-6, 100.0, min(points, 10000))
    if not _non_decreasing(above_two - 2 * np.log(above_two) - 1, 1e-12):
        failures.append("x - 2 ln x - 1 not increasing on (2, 100]")
    return _result("monotone helper functions", failures, 3)


def check_proof_constants() -> PropertyResult:
    """Numeric constants quoted in the proofs, to the precision they are quoted."""
    checks = [
        ("lemma22_margin(1) = 0", bounds.lemma22_margin(1.0), 0.0, 1e-12),
        ("lemma22_margin(4.5) = 0.52", bounds.lemma22_margin(4.5), 0.52, 0.01),
        ("lemma22_margin(7.11) = 0.0004", bounds.lemma22_margin(7.11), 0.0004, 0.0005),
        ("7.11 - ln 7.11 = 5.1485", float(bounds.x_minus_log(7.11)), 5.1485, 1e-4),
        ("threshold(11) = 3.20", bounds.avg_degree_threshold(11), 3.20, 0.01),
        ("threshold(12) = 4.03", bounds.avg_degree_threshold(12), 4.03, 0.01),
        ("bipartite margin(7.11) = 2.19", bounds.bipartite_margin(7.11), 2.19, 0.01),
    ]
    failures = [f"{name}: got {value:.6f}" for name, value, want, tol in checks
                if abs(value - want) > tol]
    if bounds.chromatic3_margin(10.0) <= 0:
        failures.append("chromatic-3 margin not positive at lambda1 = 10")
    if bounds.avg_degree_threshold(19) < 10:
        failures.append("n - 2 ln n - 3 < 10 at n = 19")
    if bounds.avg_degree_threshold(15) < 6:
        failures.append("n - 2 ln n - 3 < 6 at n = 15")
    if not 6 - 12 / 14 < 5.148:
        failures.append("planar average degree bound not below 5.148 at n = 14")
    return _result("constants quoted in the proofs", failures, len(checks) + 4)


def check_amgm_refinement(draws: int, rng: np.random.Generator) -> PropertyResult:
    failures = []
    for _ in range(draws):
        size = int(rng.integers(1, 20))
        values = rng.uniform(1e-3, 10.0, size)
        gap = bounds.amgm_variance_gap(values)
        if gap < -1e-12:
            failures.append(f"gap {gap:.3e} for {size} values")
    return _result("refined AM-GM (variance over 2 max)", failures, draws)


# ---------------------------------------------------------------------------
# Graph corpus checks
# ---------------------------------------------------------------------------

def build_corpus(settings: SuiteSettings, rng: np.random.Generator) -> List[GraphRecord]:
    """
    Every graph of order <= exhaustive_order plus random graphs of larger
    order. Chromatic numbers are computed for the exhaustive part only.
    """
    graphs: List[Graph] = []
    for n in range(1, settings.exhaustive_order + 1):
        graphs.extend(generate_all(n))
    exhaustive = len(graphs)
    for _ in range(settings.random_graphs):
        n = int(rng.integers(settings.random_min_order, settings.random_max_order + 1))
        graphs.append(random_graph(n, settings.edge_probability, rng))

    records = []
    for idx, (g, spectrum) in enumerate(zip(graphs, eigenvalues_batch(graphs))):
        chi = chromatic_number(g) if idx < exhaustive and g.order <= EXACT_LIMIT else None
        records.append(GraphRecord(g, degree_profile(g), spectrum, exact_determinant(g), chi))
    return records


def check_bounds(records: List[GraphRecord],
                 variance_bound: Optional[Callable] = None) -> List[PropertyResult]:
    """
    Validity (every applicable bound <= energy + 1e-8) and the dominance
    chain variance >= amgm >= log on non-singular graphs.
    """
    validity, dominance, identity, golden = [], [], [], []
    variance_bound = variance_bound or bounds.bound_variance
    checked = 0
    for rec in records:
        if rec.det.is_singular:
            continue
        checked += 1
        n, m = rec.profile.order, rec.profile.size
        s, absdet = rec.spectrum, rec.det.absolute
        avg = rec.profile.avg_degree_float
        label = f"n={n} m={m} rows={rec.graph.rows}"

        values = {
            "log": bounds.bound_log(n, s.lambda1, absdet),
            "amgm": bounds.bound_amgm(n, s.lambda1, absdet),
            "variance": variance_bound(n, m, s.mu1, s.mu2, absdet),
            "conjugate_exact": bounds.bound_conjugate_exact(n, m, s.mu1, s.mu2, absdet),
            "avgdeg_log": bounds.bound_avgdeg_log(n, avg),
        }
        c = bounds.quantity_C(n, m, s.mu1, s.mu2, absdet)
        if c <= 1:
            values["conjugate"] = bounds.bound_conjugate(n, m, s.mu1, s.mu2, absdet)
            values["conjugate_log_det"] = bounds.bound_conjugate(
                n, m, s.mu1, s.mu2, absdet, keep_log_det=True)
        if s.lambda1 <= bounds.LAMBDA_THRESHOLD:
            values["lemma22"] = bounds.bound_lemma22(n, m, absdet, s.lambda1)
        if is_bipartite(rec.graph):
            values["bipartite"] = bounds.bound_bipartite(n, s.lambda1, absdet)
        if rec.chi == 3:
            values["chromatic3"] = bounds.bound_chromatic3(n, s.lambda1, absdet)

        for name, value in values.items():
            if value > s.energy + bounds.ENERGY_TOLERANCE:
                validity.append(f"{name} {value:.10f} > energy {s.energy:.10f} ({label})")
        if not (values["variance"] >= values["amgm"] - bounds.DOMINANCE_SLACK
                and values["amgm"] >= values["log"] - bounds.DOMINANCE_SLACK):
            dominance.append(label)
        if abs(bounds.bound_variance(n, m, s.mu1, s.mu2, absdet) - (s.mu1 + (n - 1) * c)) > 1e-12:
            identity.append(label)

        margin = bounds.golden_margin(n, m, s.mu1, s.mu2, avg)
        via_lemma = bounds.lemma34_f(s.mu1, 2 * m - n + 1, s.mu2, avg) / (2 * s.mu2 + 1)
        if abs(margin - via_lemma) > 1e-9:
            golden.append(f"golden margin mismatch ({label})")
        if margin >= bounds.CONDITION_TOLERANCE and s.energy < n - 1 + avg - bounds.ENERGY_TOLERANCE:
            golden.append(f"golden condition without conjecture ({label})")
        if c <= 1 and abs(margin) > 1e-7:
            by_bound = values["conjugate"] >= n - 1 + avg
            if by_bound != (margin > 0):
                golden.append(f"conjugate bound disagrees with golden condition ({label})")

    return [
        _result("bounds are lower bounds on energy", validity, checked),
        _result("dominance variance >= amgm >= log", dominance, checked),
        _result("variance bound = mu1 + (n-1) C", identity, checked),
        _result("golden condition consistency", golden, checked),
    ]


def check_spectral_structure(records: List[GraphRecord]) -> PropertyResult:
    """Regular divisibility, bipartite symmetry, Hoffman, Yuan, lambda1 >= d."""
    failures = []
    for rec in records:
        g, s, det = rec.graph, rec.spectrum, rec.det
        n, m = rec.profile.order, rec.profile.size
        label = f"n={n} rows={g.rows}"
        k = is_regular(g)
        if k is not None and k >= 1 and det.value % k != 0:
            failures.append(f"{k}-regular with det {det.value} ({label})")
        if is_bipartite(g) and not spectrum_is_symmetric(s, 1e-9):
            failures.append(f"bipartite spectrum not symmetric ({label})")
        if rec.chi == 3 and s.lambda_n > -s.lambda1 / 2 + 1e-8:
            failures.append(f"Hoffman bound fails ({label})")
        if rec.profile.min_degree >= 1 and s.lambda1 ** 2 > 2 * m - n + 1 + 1e-8:
            failures.append(f"lambda1^2 > 2m - n + 1 ({label})")
        if s.lambda1 < rec.profile.avg_degree_float - 1e-10:
            failures.append(f"lambda1 < average degree ({label})")
        if n <= 10 and abs(s.product() - det.value) > 1e-6 * max(1, abs(det.value)):
            failures.append(f"eigenvalue product {s.product():.6f} != det {det.value} ({label})")
    return _result("structural spectral properties", failures, len(records))


def check_graph_structure(records: List[GraphRecord], max_order: int = 8) -> PropertyResult:
    """Bipartite iff chi <= 2 (m >= 1), and planar implies m <= 3n - 6."""
    failures = []
    checked = 0
    for rec in records:
        g, n, m = rec.graph, rec.profile.order, rec.profile.size
        if n > max_order or rec.chi is None:
            continue
        checked += 1
        if m >= 1 and is_bipartite(g) != (rec.chi <= 2):
            failures.append(f"bipartite/chromatic mismatch rows={g.rows}")
        if n >= 3 and is_planar(g) and m > 3 * n - 6:
            failures.append(f"planar with m > 3n - 6 rows={g.rows}")
    return _result("bipartite/chromatic and planar edge bound", failures, checked)


def check_closed_forms(max_order: int = 30) -> PropertyResult:
    failures = []
    for n in range(1, max_order + 1):
        want = np.sort(2 * np.cos(np.arange(1, n + 1) * np.pi / (n + 1)))[::-1]
        got = np.asarray(eigenvalues(path(n)).eigenvalues)
        if np.max(np.abs(got - want)) > 1e-9:
            failures.append(f"path P_{n}")
    for n in range(3, max_order + 1):
        want = np.sort(2 * np.cos(2 * np.pi * np.arange(n) / n))[::-1]
        got = np.asarray(eigenvalues(cycle(n)).eigenvalues)
        if np.max(np.abs(got - want)) > 1e-9:
            failures.append(f"cycle C_{n}")
    return _result("path and cycle spectra match closed forms", failures, 2 * max_order - 2)


def check_composition(pairs: int, rng: np.random.Generator,
                      min_order: int = 2, max_order: int = 7) -> PropertyResult:
    """
    Disjoint unions of non-singular graphs that satisfy the average-degree
    conjecture satisfy it too, and energy adds over components.
    """
    def passing_graph() -> Graph:
        while True:
            n = int(rng.integers(min_order, max_order + 1))
            g = random_graph(n, 0.5, rng)
            det = exact_determinant(g)
            if det.is_singular:
                continue
            profile = degree_profile(g)
            if bounds.conjecture2_check(eigenvalues(g).energy, n, profile.avg_degree_float,
                                        True) is bounds.Verdict.PASS:
                return g

    failures = []
    for _ in range(pairs):
        g1, g2 = passing_graph(), passing_graph()
        union = disjoint_union(g1, g2)
        e1, e2 = eigenvalues(g1).energy, eigenvalues(g2).energy
        e = eigenvalues(union).energy
        if abs(e - (e1 + e2)) > 1e-9:
            failures.append(f"energy not additive for rows {g1.rows} + {g2.rows}")
        profile = degree_profile(union)
        verdict = bounds.conjecture2_check(e, union.order, profile.avg_degree_float,
                                           not exact_determinant(union).is_singular)
        if verdict is not bounds.Verdict.PASS:
            failures.append(f"union fails for rows {g1.rows} + {g2.rows}")
    return _result("disjoint unions keep the conjecture", failures, pairs)


def run_property_suite(settings: SuiteSettings,
                       variance_bound: Optional[Callable] = None) -> List[PropertyResult]:
    """
    Run every property check.

    Args:
        settings: Suite sizes
        variance_bound: Implementation of the variance bound under test
            (defaults to bounds.bound_variance, looked up at call time)

    Returns:
        One PropertyResult per property, in a fixed order
    """
    settings.validate()
    rng = np.random.default_rng(settings.seed)
    results = [
        check_proof_constants(),
        check_lemma22_grid(settings.grid_points),
        check_lemma34_monotone(settings.lemma34_draws, settings.grid_points, rng),
        check_lemma35_36_grid(settings.grid_points),
        check_helper_monotonicity(settings.grid_points),
        check_amgm_refinement(max(settings.lemma34_draws, 1), rng),
        check_closed_forms(),
    ]
    records = build_corpus(settings, rng)
    results.extend(check_bounds(records, variance_bound))
    results.append(check_spectral_structure(records))
    results.append(check_graph_structure(records))
    results.append(check_composition(settings.composition_pairs, rng))
    return results
