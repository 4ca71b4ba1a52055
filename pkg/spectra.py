"""
Spectra
Adjacency eigenvalues, graph energy, the mu1/mu2 pair, and exact integer
determinants and characteristic polynomials.
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from graph_core import Graph, UnsupportedOrderError


EIGEN_TOLERANCE = 1e-10     # absolute accuracy contract per eigenvalue
CHARPOLY_LIMIT = 32


class SpectrumError(RuntimeError):
    """The eigensolver failed or returned values that break the contract."""


@dataclass(frozen=True)
class Spectrum:
    """
    Adjacency eigenvalues sorted descending, with the derived energy and the
    two largest absolute values mu1 >= mu2.
    """

    eigenvalues: Tuple[float, ...]
    energy: float
    mu1: float
    mu2: float
    tolerance: float = EIGEN_TOLERANCE

    @classmethod
    def from_eigenvalues(cls, values: Sequence[float],
                         tolerance: float = EIGEN_TOLERANCE) -> "Spectrum":
        """
        Build a spectrum from raw eigenvalues in any order.

        mu2 is 0 for a single vertex; otherwise max(lambda_2, -lambda_n).
        """
        ordered = np.sort(np.asarray(values, dtype=float))[::-1]
        if not np.all(np.isfinite(ordered)):
            raise SpectrumError(f"non-finite eigenvalues: {ordered.tolist()}")
        mu1 = float(ordered[0])
        mu2 = float(max(ordered[1], -ordered[-1])) if len(ordered) > 1 else 0.0
        # -lambda_n can exceed lambda_1 by rounding on bipartite spectra
        mu2 = min(mu2, mu1)
        return cls(
            eigenvalues=tuple(float(x) for x in ordered),
            energy=float(np.abs(ordered).sum()),
            mu1=mu1,
            mu2=mu2,
            tolerance=tolerance,
        )

    @property
    def order(self) -> int:
        return len(self.eigenvalues)

    @property
    def lambda1(self) -> float:
        return self.eigenvalues[0]

    @property
    def lambda_n(self) -> float:
        return self.eigenvalues[-1]

    def product(self) -> float:
        return float(np.prod(self.eigenvalues))


@dataclass(frozen=True)
class ExactDet:
    """Exact determinant of the adjacency matrix."""

    value: int

    @property
    def is_singular(self) -> bool:
        return self.value == 0

    @property
    def absolute(self) -> int:
        return abs(self.value)


@dataclass(frozen=True)
class CharPoly:
    """Coefficients of det(xI - A), highest power first (leading 1)."""

    coefficients: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, x):
        """Horner evaluation; exact for integer or Fraction x."""
        result = 0
        for c in self.coefficients:
            result = result * x + c
        return result


def _check_trace(spectrum: Spectrum, g: Graph):
    n = spectrum.order
    values = np.asarray(spectrum.eigenvalues)
    if abs(values.sum()) > n * spectrum.tolerance:
        raise SpectrumError(f"trace identity violated: sum = {values.sum():.3e}")
    if abs((values ** 2).sum() - 2 * g.size) > 2 * n * spectrum.tolerance:
        raise SpectrumError("Frobenius identity violated: sum of squares "
                            f"{(values ** 2).sum():.12f} != 2m = {2 * g.size}")


def eigenvalues(g: Graph) -> Spectrum:
    """
    Compute the adjacency spectrum.

    Args:
        g: Graph

    Returns:
        Spectrum with eigenvalues sorted descending, energy, mu1 and mu2

    Raises:
        SpectrumError: the solver did not converge or the result fails the
            trace / Frobenius identities
    """
    try:
        values = np.linalg.eigvalsh(g.adjacency_matrix(float))
    except np.linalg.LinAlgError as exc:
        raise SpectrumError(f"eigensolver did not converge for n={g.order}: {exc}") from exc
    spectrum = Spectrum.from_eigenvalues(values)
    _check_trace(spectrum, g)
    return spectrum


def eigenvalues_batch(graphs: Sequence[Graph]) -> List[Spectrum]:
    """
    Spectra of many graphs with one stacked eigensolve per order.

    Args:
        graphs: Graphs of any orders

    Returns:
        Spectra in input order
    """
    by_order: Dict[int, List[int]] = {}
    for idx, g in enumerate(graphs):
        by_order.setdefault(g.order, []).append(idx)

    spectra: List[Spectrum] = [None] * len(graphs)
    for n, indices in by_order.items():
        rows = np.array([graphs[i].rows for i in indices], dtype=np.int64)
        stack = ((rows[:, :, None] >> np.arange(n, dtype=np.int64)) & 1).astype(float)
        try:
            values = np.linalg.eigvalsh(stack)
        except np.linalg.LinAlgError as exc:
            raise SpectrumError(f"batched eigensolve failed for n={n}: {exc}") from exc
        for i, vals in zip(indices, values):
            spectrum = Spectrum.from_eigenvalues(vals)
            _check_trace(spectrum, graphs[i])
            spectra[i] = spectrum
    return spectra


def energy(g: Graph) -> float:
    """Graph energy: sum of the absolute eigenvalues."""
    return eigenvalues(g).energy


def spectrum_is_symmetric(spectrum: Spectrum, tol: float = 1e-9) -> bool:
    """True if the multiset of eigenvalues equals its negation within tol."""
    values = np.asarray(spectrum.eigenvalues)
    return bool(np.all(np.abs(values + values[::-1]) <= tol))


def _integer_matrix(g: Graph) -> np.ndarray:
    # object dtype keeps Python integers, so nothing can overflow
    return g.adjacency_matrix(int).astype(object)


def exact_determinant(g: Graph) -> ExactDet:
    """
    Exact determinant by Bareiss fraction-free elimination.

    Every division in the update is exact, so the arithmetic stays in the
    integers throughout; a zero pivot column means the matrix is singular.
    """
    m = _integer_matrix(g)
    n = g.order
    sign = 1
    previous = 1
    for k in range(n - 1):
        if m[k, k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i, k] != 0), None)
            if swap is None:
                return ExactDet(0)
            m[[k, swap]] = m[[swap, k]]
            sign = -sign
        pivot = m[k, k]
        m[k + 1:, k + 1:] = (m[k + 1:, k + 1:] * pivot
                             - np.outer(m[k + 1:, k], m[k, k + 1:])) // previous
        m[k + 1:, k] = 0
        previous = pivot
    return ExactDet(int(sign * m[n - 1, n - 1]))


def is_nonsingular(g: Graph) -> bool:
    """Decided by the exact determinant, never by floating eigenvalues."""
    return not exact_determinant(g).is_singular


def char_poly(g: Graph) -> CharPoly:
    """
    Exact characteristic polynomial det(xI - A) by Faddeev-LeVerrier.

    With M_0 = 0 and c_n = 1:
        M_k = A M_{k-1} + c_{n-k+1} I,   c_{n-k} = -tr(A M_k) / k
    All divisions are exact for integer matrices.
    """
    n = g.order
    if n > CHARPOLY_LIMIT:
        raise UnsupportedOrderError(f"characteristic polynomial is limited to n <= {CHARPOLY_LIMIT}")
    a = _integer_matrix(g)
    identity = np.eye(n, dtype=int).astype(object)
    coefficients = [1]
    m = np.zeros((n, n), dtype=int).astype(object)
    for k in range(1, n + 1):
        m = a.dot(m) + coefficients[-1] * identity
        trace = int(np.trace(a.dot(m)))
        quotient, remainder = divmod(-trace, k)
        if remainder:
            raise ArithmeticError(f"non-integral coefficient at step {k}")
        coefficients.append(quotient)
    return CharPoly(tuple(int(c) for c in coefficients))
