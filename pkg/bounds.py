"""
Energy Bounds
Lower bounds for the energy of non-singular graphs, the sufficient conditions
for the n - 1 + average degree conjecture, and the coverage classifier.

All bound formulas take scalars (n, m, mu1, mu2, |det A|) so they can be
probed away from real spectra; build_report assembles everything for a graph.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from graph_core import (EXACT_LIMIT, DegreeProfile, Graph, chromatic_number,
                        degree_profile, is_bipartite, is_planar, is_regular,
                        to_graph6)
from spectra import ExactDet, Spectrum, eigenvalues, exact_determinant


ENERGY_TOLERANCE = 1e-8         # slack on every energy comparison
DOMINANCE_SLACK = 1e-9
CONDITION_TOLERANCE = 1e-9
LAMBDA_THRESHOLD = 7.11
DENSITY_RATIO = 2.574
CHROMATIC_LAMBDA_CEILING = 10.0
CHROMATIC_MIN_ORDER = 19
MIN_CONJECTURE_ORDER = 5
LEMMA_MIN_X = 13.0


class InapplicableBoundError(ValueError):
    """The bound's hypothesis does not hold for these inputs."""


class InconsistentSpectrumError(ValueError):
    """The inputs cannot come from a real adjacency spectrum."""


class LemmaDomainError(ValueError):
    """Argument outside the domain on which a lemma is stated."""


class NotApplicableError(ValueError):
    """Classification requested for a singular graph or one of order < 5."""


class CoverageLabel(Enum):
    """Sufficient conditions that certify the conjecture for a graph."""

    REGULAR = "Regular"
    LAMBDA711 = "Lambda711"
    DENSITY2574 = "Density2574"
    BIPARTITE = "Bipartite"
    AVG_DEG_GAP = "AvgDegGap"
    PLANAR = "Planar"
    CHROMATIC3 = "Chromatic3"
    GOLDEN_CONDITION = "GoldenCondition"
    C_GE_ONE = "CgeOne"
    UNCOVERED = "Uncovered"


class Verdict(Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not-applicable"


# ---------------------------------------------------------------------------
# Bound formulas
# ---------------------------------------------------------------------------

def _require_nonsingular(absdet) -> None:
    if absdet < 1:
        raise InapplicableBoundError("bound requires a non-singular graph (|det A| >= 1)")


def bound_log(n: int, lambda1: float, absdet: int) -> float:
    """
    Log bound from x >= ln x + 1 applied to |lambda_2|..|lambda_n|:
    n - 1 + lambda1 + ln|det A| - ln lambda1.
    """
    _require_nonsingular(absdet)
    if lambda1 <= 0:
        raise InapplicableBoundError("lambda1 must be positive")
    return n - 1 + lambda1 + math.log(absdet) - math.log(lambda1)


def bound_amgm(n: int, lambda1: float, absdet: int) -> float:
    """
    AM-GM bound: lambda1 + (n-1) (|det A| / lambda1)^(1/(n-1)).

    Always at least bound_log for the same inputs.
    """
    _require_nonsingular(absdet)
    if lambda1 <= 0:
        raise InapplicableBoundError("lambda1 must be positive")
    if n < 2:
        raise InapplicableBoundError("bound needs n >= 2")
    return lambda1 + (n - 1) * _geometric_rest(n, lambda1, absdet)


def _geometric_rest(n: int, mu1: float, absdet: int) -> float:
    """Geometric mean of |lambda_2|..|lambda_n|, computed in log space."""
    return math.exp((math.log(absdet) - math.log(mu1)) / (n - 1))


def _variance_inputs(n: int, m: int, mu1: float, mu2: float, absdet: int,
                     tolerance: float = 1e-10) -> Tuple[float, float]:
    _require_nonsingular(absdet)
    if n < 2:
        raise InapplicableBoundError("bound needs n >= 2")
    if not mu1 >= mu2 > 0:
        raise InapplicableBoundError(f"need mu1 >= mu2 > 0, got mu1={mu1}, mu2={mu2}")
    rest = 2 * m - mu1 ** 2
    if rest < -tolerance * max(1.0, 2 * m):
        raise InconsistentSpectrumError(
            f"2m - mu1^2 = {rest:.3e} is negative; mu1 cannot exceed sqrt(2m)")
    return _geometric_rest(n, mu1, absdet), max(rest, 0.0)


def quantity_C(n: int, m: int, mu1: float, mu2: float, absdet: int) -> float:
    """
    C = sqrt(mu2^2 + 2 mu2 g + (2m - mu1^2)/(n-1)) - mu2 with g the geometric
    mean of the non-principal absolute eigenvalues. C >= 1 certifies the
    conjecture directly.
    """
    g, rest = _variance_inputs(n, m, mu1, mu2, absdet)
    return math.sqrt(mu2 ** 2 + 2 * mu2 * g + rest / (n - 1)) - mu2


def bound_variance(n: int, m: int, mu1: float, mu2: float, absdet: int) -> float:
    """
    Variance-refined AM-GM bound: mu1 + (n-1) C.

    Args:
        n: Order
        m: Size
        mu1: Largest absolute eigenvalue
        mu2: Second largest absolute eigenvalue
        absdet: |det A|, at least 1

    Returns:
        The bound value
    """
    return mu1 + (n - 1) * quantity_C(n, m, mu1, mu2, absdet)


def bound_conjugate(n: int, m: int, mu1: float, mu2: float, absdet: int,
                    keep_log_det: bool = False) -> float:
    """
    Conjugate-refined bound for C <= 1.

    The default is the closed form
        n - 1 + mu1 + (2m - mu1^2 - n + 1 - 2 mu2 ln mu1) / (1 + 2 mu2),
    whose comparison with n - 1 + d is exactly the golden condition.
    keep_log_det=True keeps the 2 mu2 ln|det A| term in the numerator, which
    is never weaker.

    Raises:
        InapplicableBoundError: C > 1 (mu1 + n - 1 is the bound then)
    """
    c = quantity_C(n, m, mu1, mu2, absdet)
    if c > 1 + CONDITION_TOLERANCE:
        raise InapplicableBoundError(f"conjugate bound needs C <= 1, got C = {c:.6f}")
    log_det = math.log(absdet) if keep_log_det else 0.0
    numerator = (2 * mu2 * (n - 1) + 2 * mu2 * (log_det - math.log(mu1))
                 + 2 * m - mu1 ** 2)
    return mu1 + numerator / (1 + 2 * mu2)


def bound_conjugate_exact(n: int, m: int, mu1: float, mu2: float, absdet: int) -> float:
    """Same chain before the denominator C + 2 mu2 is widened to 1 + 2 mu2."""
    c = quantity_C(n, m, mu1, mu2, absdet)
    numerator = (2 * mu2 * (n - 1) + 2 * mu2 * (math.log(absdet) - math.log(mu1))
                 + 2 * m - mu1 ** 2)
    return mu1 + numerator / (c + 2 * mu2)


def bound_avgdeg_log(n: int, avg_degree: float) -> float:
    """n - 1 + d - ln d (lambda1 replaced by the smaller average degree)."""
    if avg_degree < 1:
        raise InapplicableBoundError("average degree below 1 implies an isolated vertex")
    return n - 1 + avg_degree - math.log(avg_degree)


def bound_lemma22(n: int, m: int, absdet: int, lambda1: float) -> float:
    """
    10n/11 + (9/11) ln|det A| + 2m/11, the sum of the per-eigenvalue inequality
    over all eigenvalues; only valid when lambda1 <= 7.11.
    """
    _require_nonsingular(absdet)
    if lambda1 > LAMBDA_THRESHOLD:
        raise InapplicableBoundError(f"needs lambda1 <= {LAMBDA_THRESHOLD}")
    return 10 * n / 11 + 9 * math.log(absdet) / 11 + 2 * m / 11


def bound_bipartite(n: int, lambda1: float, absdet: int) -> float:
    """n - 2 + 2 lambda1 + ln|det A| - 2 ln lambda1 (bipartite graphs only)."""
    _require_nonsingular(absdet)
    if lambda1 <= 0:
        raise InapplicableBoundError("lambda1 must be positive")
    return n - 2 + 2 * lambda1 + math.log(absdet) - 2 * math.log(lambda1)


def bound_chromatic3(n: int, lambda1: float, absdet: int) -> float:
    """
    1.5 lambda1 + n - 2 + ln|det A| - ln lambda1 - ln(lambda1 / 2) for graphs
    with chromatic number 3, where Hoffman gives lambda_n <= -lambda1/2.
    """
    _require_nonsingular(absdet)
    if lambda1 < 2 - CONDITION_TOLERANCE:
        raise InapplicableBoundError("needs lambda1 >= 2 (an odd cycle is present)")
    return (1.5 * lambda1 + n - 2 + math.log(absdet)
            - math.log(lambda1) - math.log(lambda1 / 2))


# ---------------------------------------------------------------------------
# Margins and helper functions
# ---------------------------------------------------------------------------

def avg_degree_threshold(n: int) -> float:
    """n - 2 ln n - 3."""
    return n - 2 * math.log(n) - 3


def golden_margin(n: int, m: int, mu1: float, mu2: float, avg_degree: float) -> float:
    """Left side minus right side of the golden condition."""
    if mu1 <= 0:
        raise ValueError("mu1 must be positive")
    lhs = (mu1 - avg_degree) + (2 * m - n + 1 - mu1 ** 2) / (2 * mu2 + 1)
    rhs = 2 * mu2 / (2 * mu2 + 1) * math.log(mu1)
    return lhs - rhs


def lambda711_margin(n: int, m: int) -> float:
    """(n - 11)(2m - n) / (11 n)."""
    return (n - 11) * (2 * m - n) / (11 * n)


def bipartite_margin(lambda1: float) -> float:
    return lambda1 - 2 * math.log(lambda1) - 1


def chromatic3_margin(lambda1: float) -> float:
    # -1 + ln 2 is about -0.307
    return lambda1 / 2 - 2 * math.log(lambda1) - 1 + math.log(2)


def x_minus_log(x):
    return x - np.log(x)


def sqrt_minus_log_sqrt(x):
    return np.sqrt(x) - np.log(np.sqrt(x))


def amgm_variance_gap(values: Sequence[float]) -> float:
    """
    (AM - GM) - (mean of squares - AM^2) / (2 max) for positive reals.

    The refined AM-GM inequality says this is never negative.
    """
    x = np.asarray(values, dtype=float)
    if x.size == 0 or np.any(x <= 0):
        raise ValueError("values must be a non-empty list of positive reals")
    am = x.mean()
    gm = math.exp(np.log(x).mean())
    variance = (x ** 2).mean() - am ** 2
    return (am - gm) - variance / (2 * x.max())


# ---------------------------------------------------------------------------
# Lemmas
# ---------------------------------------------------------------------------

def lemma22_margin(x):
    """
    x - 10/11 - (9/11) ln x - x^2/11 for 0 < x <= 7.11 (scalar or array).

    Zero at x = 1, about 0.52 at x = 4.5 and 0.0004 at x = 7.11.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0) or np.any(arr > LAMBDA_THRESHOLD):
        raise LemmaDomainError(f"lemma22_margin is defined on (0, {LAMBDA_THRESHOLD}]")
    value = arr - 10 / 11 - 9 / 11 * np.log(arr) - arr ** 2 / 11
    return float(value) if value.ndim == 0 else value


def lemma34_f(x, b: float, c: float, d: float):
    """
    f(x) = (2c + 1)(x - d) + (b - x^2) - 2c ln x, non-increasing on [c, inf)
    for c >= (3 - 2 sqrt 2)/2 and on [1, inf) for smaller c >= 0.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0):
        raise LemmaDomainError("lemma34_f needs x > 0")
    if c < 0:
        raise LemmaDomainError("lemma34_f needs c >= 0")
    value = (2 * c + 1) * (arr - d) + (b - arr ** 2) - 2 * c * np.log(arr)
    return float(value) if value.ndim == 0 else value


def lemma34_derivative_roots(c: float) -> Tuple[float, ...]:
    """Real roots of f'(x) = 2c + 1 - 2x - 2c/x, i.e. of 2x^2 - (2c+1)x + 2c."""
    disc = 4 * c ** 2 - 12 * c + 1
    if disc < 0:
        return ()
    root = math.sqrt(disc)
    return ((2 * c + 1 - root) / 4, (2 * c + 1 + root) / 4)


def _check_lemma_domain(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(arr < LEMMA_MIN_X):
        raise LemmaDomainError(f"{name} is defined for x >= {LEMMA_MIN_X:g}")
    return arr


def lemma35_margin(x):
    """2(x - 1)/sqrt(x) - 4 - ln x for x >= 13."""
    arr = _check_lemma_domain(x, "lemma35_margin")
    value = 2 * (arr - 1) / np.sqrt(arr) - 4 - np.log(arr)
    return float(value) if value.ndim == 0 else value


def lemma36_margin(x):
    """(x - 1) sqrt(1 - (2 ln x + 4)/x) - x + ln x + 4 for x >= 13."""
    arr = _check_lemma_domain(x, "lemma36_margin")
    log = np.log(arr)
    value = (arr - 1) * np.sqrt(1 - (2 * log + 4) / arr) - arr + log + 4
    return float(value) if value.ndim == 0 else value


def lemma36_polynomial(x):
    """2x^2 - 7x - 4 - x ln^2 x - 4x ln x - 2 ln x (the squared form of lemma36_margin)."""
    arr = _check_lemma_domain(x, "lemma36_polynomial")
    log = np.log(arr)
    value = 2 * arr ** 2 - 7 * arr - 4 - arr * log ** 2 - 4 * arr * log - 2 * log
    return float(value) if value.ndim == 0 else value


# ---------------------------------------------------------------------------
# Conditions
# ---------------------------------------------------------------------------

def cond_golden(n: int, m: int, mu1: float, mu2: float, avg_degree: float) -> bool:
    return golden_margin(n, m, mu1, mu2, avg_degree) >= -CONDITION_TOLERANCE


def cond_lambda711(lambda1: float, n: int) -> bool:
    return lambda1 <= LAMBDA_THRESHOLD and n >= MIN_CONJECTURE_ORDER


def cond_density(n: int, m: int) -> bool:
    return m <= DENSITY_RATIO * n and n >= MIN_CONJECTURE_ORDER


def cond_avgdeg_gap(n: int, avg_degree: float) -> bool:
    return n >= MIN_CONJECTURE_ORDER and avg_degree <= avg_degree_threshold(n)


def cond_chromatic3(chi: int, lambda1: float, n: int) -> bool:
    inside_gap = LAMBDA_THRESHOLD < lambda1 < CHROMATIC_LAMBDA_CEILING
    return chi == 3 and (not inside_gap or n >= CHROMATIC_MIN_ORDER)


def cond_degree_gap(min_degree: int, avg_degree: float) -> bool:
    """delta < d - ln d, which certifies the Delta + delta conjecture."""
    return avg_degree >= 1 and min_degree < avg_degree - math.log(avg_degree)


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------

def conjecture1_check(energy: float, max_degree: int, min_degree: int,
                      nonsingular: bool) -> Verdict:
    """Energy >= Delta + delta for non-singular graphs."""
    if not nonsingular:
        return Verdict.NOT_APPLICABLE
    return Verdict.PASS if energy >= max_degree + min_degree - ENERGY_TOLERANCE else Verdict.FAIL


def conjecture2_check(energy: float, n: int, avg_degree: float,
                      nonsingular: bool) -> Verdict:
    """
    Energy >= n - 1 + d for non-singular graphs.

    Failures at n = 4 are the two known exceptions; failures at n >= 5 are
    counterexamples.
    """
    if not nonsingular:
        return Verdict.NOT_APPLICABLE
    return Verdict.PASS if energy >= n - 1 + avg_degree - ENERGY_TOLERANCE else Verdict.FAIL


def classify(g: Graph, spectrum: Spectrum, det: ExactDet,
             profile: DegreeProfile) -> List[CoverageLabel]:
    """
    Every sufficient condition whose hypothesis the graph satisfies.

    Cheap predicates run first and the exact chromatic number and planarity
    last; nothing short-circuits. Chromatic3 and Planar are only evaluated
    up to EXACT_LIMIT vertices.

    Returns:
        The labels in declaration order, or [UNCOVERED] if none applies

    Raises:
        NotApplicableError: singular graph or order below 5
    """
    n, m = profile.order, profile.size
    if det.is_singular:
        raise NotApplicableError("classification needs a non-singular graph")
    if n < MIN_CONJECTURE_ORDER:
        raise NotApplicableError(f"classification needs n >= {MIN_CONJECTURE_ORDER}")
    avg = profile.avg_degree_float
    labels = set()

    if is_regular(g) is not None:
        labels.add(CoverageLabel.REGULAR)
    if cond_density(n, m):
        labels.add(CoverageLabel.DENSITY2574)
    if cond_lambda711(spectrum.lambda1, n):
        labels.add(CoverageLabel.LAMBDA711)
    if cond_avgdeg_gap(n, avg):
        labels.add(CoverageLabel.AVG_DEG_GAP)
    if is_bipartite(g):
        labels.add(CoverageLabel.BIPARTITE)
    if cond_golden(n, m, spectrum.mu1, spectrum.mu2, avg):
        labels.add(CoverageLabel.GOLDEN_CONDITION)
    if quantity_C(n, m, spectrum.mu1, spectrum.mu2, det.absolute) >= 1 - CONDITION_TOLERANCE:
        labels.add(CoverageLabel.C_GE_ONE)
    if n <= EXACT_LIMIT:
        if cond_chromatic3(chromatic_number(g), spectrum.lambda1, n):
            labels.add(CoverageLabel.CHROMATIC3)
        if is_planar(g):
            labels.add(CoverageLabel.PLANAR)

    ordered = [label for label in CoverageLabel if label in labels]
    return ordered or [CoverageLabel.UNCOVERED]


# ---------------------------------------------------------------------------
# Full report
# ---------------------------------------------------------------------------

BOUND_KEYS = ("log", "amgm", "variance", "conjugate", "avgdeg_log",
              "lemma22", "bipartite", "chromatic3")


@dataclass
class BoundReport:
    """All bounds, targets, verdicts and coverage labels for one graph."""

    graph_id: str
    n: int
    m: int
    avg_degree: Fraction
    max_degree: int
    min_degree: int
    det: int
    energy: float
    mu1: float
    mu2: float
    eigenvalues: Tuple[float, ...]
    bounds: Dict[str, Optional[float]]
    inapplicable: Dict[str, str]
    quantity_C: Optional[float]
    conjecture1_target: int
    conjecture2_target: float
    conjecture1: Verdict
    conjecture2: Verdict
    conjecture1_certified: bool
    coverage: List[CoverageLabel] = field(default_factory=list)

    @property
    def nonsingular(self) -> bool:
        return self.det != 0

    @property
    def conjecture2_margin(self) -> float:
        return self.energy - self.conjecture2_target

    @property
    def conjecture1_margin(self) -> float:
        return self.energy - self.conjecture1_target

    def to_dict(self) -> Dict:
        """Schema-stable JSON object; the determinant is a decimal string."""
        return {
            "graph6": self.graph_id,
            "n": self.n,
            "m": self.m,
            "avg_degree": round(float(self.avg_degree), 10),
            "avg_degree_exact": str(self.avg_degree),
            "max_degree": self.max_degree,
            "min_degree": self.min_degree,
            "det": str(self.det),
            "singular": not self.nonsingular,
            "energy": round(self.energy, 10),
            "mu1": round(self.mu1, 10),
            "mu2": round(self.mu2, 10),
            "eigenvalues": [round(x, 10) for x in self.eigenvalues],
            "bounds": {key: (None if self.bounds.get(key) is None
                             else round(self.bounds[key], 10)) for key in BOUND_KEYS},
            "quantity_C": None if self.quantity_C is None else round(self.quantity_C, 10),
            "targets": {
                "conjecture1": self.conjecture1_target,
                "conjecture2": round(self.conjecture2_target, 10),
            },
            "margins": {
                "conjecture1": round(self.conjecture1_margin, 10),
                "conjecture2": round(self.conjecture2_margin, 10),
            },
            "verdicts": {
                "conjecture1": self.conjecture1.value,
                "conjecture2": self.conjecture2.value,
                "conjecture1_certified": self.conjecture1_certified,
            },
            "coverage": [label.value for label in self.coverage],
        }


def _try_bound(name: str, func, args, bounds: Dict, inapplicable: Dict) -> None:
    try:
        bounds[name] = func(*args)
    except (InapplicableBoundError, InconsistentSpectrumError) as exc:
        bounds[name] = None
        inapplicable[name] = str(exc)


def build_report(g: Graph, spectrum: Optional[Spectrum] = None,
                 det: Optional[ExactDet] = None) -> BoundReport:
    """
    Compute every quantity for one graph.

    Args:
        g: Graph
        spectrum: Precomputed spectrum (computed if omitted)
        det: Precomputed exact determinant (computed if omitted)

    Returns:
        BoundReport; bounds that do not apply are None with the reason in
        `inapplicable`
    """
    profile = degree_profile(g)
    spectrum = spectrum if spectrum is not None else eigenvalues(g)
    det = det if det is not None else exact_determinant(g)
    n, m = profile.order, profile.size
    avg = profile.avg_degree_float
    absdet = det.absolute
    lam1, mu1, mu2 = spectrum.lambda1, spectrum.mu1, spectrum.mu2
    nonsingular = not det.is_singular

    bounds: Dict[str, Optional[float]] = {key: None for key in BOUND_KEYS}
    inapplicable: Dict[str, str] = {}
    c_value = None
    coverage: List[CoverageLabel] = []
    if nonsingular:
        _try_bound("log", bound_log, (n, lam1, absdet), bounds, inapplicable)
        _try_bound("amgm", bound_amgm, (n, lam1, absdet), bounds, inapplicable)
        _try_bound("variance", bound_variance, (n, m, mu1, mu2, absdet), bounds, inapplicable)
        _try_bound("conjugate", bound_conjugate, (n, m, mu1, mu2, absdet), bounds, inapplicable)
        _try_bound("avgdeg_log", bound_avgdeg_log, (n, avg), bounds, inapplicable)
        _try_bound("lemma22", bound_lemma22, (n, m, absdet, lam1), bounds, inapplicable)
        if is_bipartite(g):
            _try_bound("bipartite", bound_bipartite, (n, lam1, absdet), bounds, inapplicable)
        else:
            inapplicable["bipartite"] = "graph is not bipartite"
        if n <= EXACT_LIMIT and chromatic_number(g) == 3:
            _try_bound("chromatic3", bound_chromatic3, (n, lam1, absdet), bounds, inapplicable)
        else:
            inapplicable["chromatic3"] = "chromatic number is not 3"
        try:
            c_value = quantity_C(n, m, mu1, mu2, absdet)
        except (InapplicableBoundError, InconsistentSpectrumError) as exc:
            inapplicable["quantity_C"] = str(exc)
        if n >= MIN_CONJECTURE_ORDER:
            coverage = classify(g, spectrum, det, profile)
    else:
        for key in BOUND_KEYS:
            inapplicable[key] = "graph is singular"

    return BoundReport(
        graph_id=to_graph6(g),
        n=n,
        m=m,
        avg_degree=profile.avg_degree,
        max_degree=profile.max_degree,
        min_degree=profile.min_degree,
        det=det.value,
        energy=spectrum.energy,
        mu1=mu1,
        mu2=mu2,
        eigenvalues=spectrum.eigenvalues,
        bounds=bounds,
        inapplicable=inapplicable,
        quantity_C=c_value,
        conjecture1_target=profile.max_degree + profile.min_degree,
        conjecture2_target=n - 1 + avg,
        conjecture1=conjecture1_check(spectrum.energy, profile.max_degree,
                                      profile.min_degree, nonsingular),
        conjecture2=conjecture2_check(spectrum.energy, n, avg, nonsingular),
        conjecture1_certified=nonsingular and cond_degree_gap(profile.min_degree, avg),
        coverage=coverage,
    )
