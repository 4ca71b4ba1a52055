"""
Enumeration
Isomorph-free generation of all graphs of a given order, graph6 corpus
ingestion, and exhaustive conjecture scans.

Generation is orderly: a labelled graph is canonical when its upper-triangle
string, read column by column (x(0,1), x(0,2), x(1,2), x(0,3), ...), is the
lexicographic maximum over all relabellings. Deleting the last vertex of a
canonical graph leaves a canonical graph, so extending every canonical graph
of order k-1 by one vertex and keeping only canonical results visits every
isomorphism class exactly once without remembering what was seen.
"""

from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import pandas as pd
from tqdm import tqdm

from bounds import CoverageLabel, Verdict, build_report
from graph_core import Graph, UnsupportedOrderError, from_graph6, to_graph6
from spectra import SpectrumError, eigenvalues_batch, exact_determinant


MAX_GENERATION_ORDER = 10
STANDARD_MAX_ORDER = 9          # larger orders are long runs
CANONICAL_LIMIT = 10
BATCH_SIZE = 512

# Number of non-isomorphic graphs on n vertices
KNOWN_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044,
                8: 12346, 9: 274668, 10: 12005168}


class ScanError(RuntimeError):
    """Analysis of one graph failed; `graph6` names the graph."""

    def __init__(self, graph6: str, message: str):
        super().__init__(f"{graph6}: {message}")
        self.graph6 = graph6


class IngestError(ValueError):
    """Malformed graph6 line in strict mode."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


# ---------------------------------------------------------------------------
# Canonical labelling
# ---------------------------------------------------------------------------

def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _columns(rows: Sequence[int], n: int) -> List[int]:
    """Column values of the identity labelling; column j has j bits, x(0,j) highest."""
    columns = []
    for j in range(1, n):
        value = 0
        for i in range(j):
            value = value << 1 | (rows[i] >> j & 1)
        columns.append(value)
    return columns


def _drop_twins(rows: Sequence[int], candidates: List[int]) -> List[int]:
    """
    Keep one vertex per twin class. Swapping two twins is an automorphism
    that fixes every other vertex, so their subtrees give the same strings.
    """
    kept = []
    for w in candidates:
        if not any((rows[w] & ~(1 << u)) == (rows[u] & ~(1 << w)) for u in kept):
            kept.append(w)
    return kept


def _search(rows: Sequence[int], n: int, depth: int, remaining: int,
            values: List[int], best: List[int], strict: bool) -> bool:
    """
    Depth-first search for the lexicographically largest column string.

    At each position only the remaining vertices with the largest column value
    can lead to the maximum, so those ties are the only branches. `best`
    holds the best columns seen so far (index p-1 for position p).

    In strict mode `best` is the string under test and the search returns
    False as soon as some relabelling beats it.
    """
    if depth == n:
        return True
    if depth == 0:
        candidates = list(range(n))
    else:
        top = max(values[w] for w in _bits(remaining))
        j = depth - 1
        if j < len(best):
            if top < best[j]:
                return True
            if top > best[j]:
                if strict:
                    return False
                del best[j:]
                best.append(top)
        else:
            best.append(top)
        candidates = [w for w in _bits(remaining) if values[w] == top]

    for w in _drop_twins(rows, candidates):
        rest = remaining & ~(1 << w)
        row = rows[w]
        child = list(values)
        for x in _bits(rest):
            child[x] = values[x] << 1 | (row >> x & 1)
        if not _search(rows, n, depth + 1, rest, child, best, strict):
            return False
    return True


def _check_canonical_order(n: int) -> None:
    if n > CANONICAL_LIMIT:
        raise UnsupportedOrderError(
            f"canonical labelling is limited to n <= {CANONICAL_LIMIT}, got {n}")


def canonical_form(g: Graph) -> str:
    """
    Canonical bit string of the isomorphism class: the lexicographically
    largest upper-triangle column string over all vertex permutations.

    Raises:
        UnsupportedOrderError: order above 10
    """
    _check_canonical_order(g.order)
    n = g.order
    best: List[int] = []
    _search(g.rows, n, 0, (1 << n) - 1, [0] * n, best, strict=False)
    return "".join(format(col, f"0{p}b") for p, col in enumerate(best, start=1))


def _is_canonical_rows(rows: Sequence[int], n: int) -> bool:
    return _search(rows, n, 0, (1 << n) - 1, [0] * n, _columns(rows, n), strict=True)


def is_canonical(g: Graph) -> bool:
    """True if no relabelling gives a larger column string than g itself."""
    _check_canonical_order(g.order)
    return _is_canonical_rows(g.rows, g.order)


# ---------------------------------------------------------------------------
# Generation
# ---------------------------------------------------------------------------

def _children(parent: Graph) -> Iterator[Graph]:
    """Canonical one-vertex extensions of a canonical graph, by neighbourhood mask."""
    k = parent.order
    n = k + 1
    parent_columns = _columns(parent.rows, k)
    for mask in range(1 << k):
        # inserting the new vertex right after the first p vertices must not
        # beat column p of the parent
        value = 0
        dominated = False
        for p in range(1, k):
            value = value << 1 | (mask >> (p - 1) & 1)
            if value > parent_columns[p - 1]:
                dominated = True
                break
        if dominated:
            continue
        rows = [row | ((mask >> v & 1) << k) for v, row in enumerate(parent.rows)]
        rows.append(mask)
        if _is_canonical_rows(rows, n):
            yield Graph(n, tuple(rows))


def generate_subtree(root: Graph, n: int) -> Iterator[Graph]:
    """
    All canonical graphs of order n descending from a canonical root.

    Args:
        root: Canonical graph of order at most n
        n: Target order

    Returns:
        Iterator over graphs of order n, in a fixed order
    """
    if root.order == n:
        yield root
        return
    for child in _children(root):
        yield from generate_subtree(child, n)


def generate_all(n: int) -> Iterator[Graph]:
    """
    One representative per isomorphism class of simple graphs on n vertices,
    disconnected graphs included, in a deterministic order.

    Raises:
        UnsupportedOrderError: n outside 1..10
    """
    if not 1 <= n <= MAX_GENERATION_ORDER:
        raise UnsupportedOrderError(
            f"generation supports 1 <= n <= {MAX_GENERATION_ORDER}, got {n}")
    return generate_subtree(Graph(1, (0,)), n)


def generation_roots(n: int, split_order: Optional[int] = None) -> List[Graph]:
    """
    Roots of disjoint generation subtrees covering all graphs of order n.

    The default split level is three below n (at least 1).
    """
    if split_order is None:
        split_order = max(1, n - 3)
    split_order = min(split_order, n)
    return list(generate_all(split_order))


# ---------------------------------------------------------------------------
# Ingestion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IngestDiagnostic:
    line_number: int
    text: str
    message: str


def ingest_graph6(lines: Iterable[str], strict: bool = False,
                  diagnostics: Optional[List[IngestDiagnostic]] = None) -> Iterator[Graph]:
    """
    Stream graphs from graph6 lines; blank lines are skipped.

    Args:
        lines: Lines of text (a file object works)
        strict: Abort on the first malformed line instead of skipping it
        diagnostics: List that receives one IngestDiagnostic per skipped line

    Returns:
        Iterator over decoded graphs

    Raises:
        IngestError: malformed line in strict mode
    """
    for number, line in enumerate(lines, start=1):
        text = line.strip()
        if not text:
            continue
        try:
            graph = from_graph6(text)
        except ValueError as exc:   # Graph6FormatError and invalid orders
            if strict:
                raise IngestError(number, str(exc)) from exc
            if diagnostics is not None:
                diagnostics.append(IngestDiagnostic(number, text, str(exc)))
            continue
        yield graph


# ---------------------------------------------------------------------------
# Scans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    """A non-singular graph whose energy falls below a conjectured target."""

    conjecture: int
    graph6: str
    order: int
    energy: float
    target: float

    @property
    def margin(self) -> float:
        return self.energy - self.target

    @property
    def expected(self) -> bool:
        """Only the order-4 failures of the average-degree form are known exceptions."""
        return self.conjecture == 2 and self.order < 5

    def to_dict(self) -> Dict:
        return {
            "conjecture": self.conjecture,
            "graph6": self.graph6,
            "n": self.order,
            "energy": round(self.energy, 10),
            "target": round(self.target, 10),
            "margin": round(self.margin, 10),
        }


def _empty_histogram() -> Dict[str, int]:
    return {label.value: 0 for label in CoverageLabel}


@dataclass
class EnumerationSummary:
    """Counts, violations and coverage from one scan; merging is order independent."""

    orders: Tuple[int, ...] = ()
    total_graphs: int = 0
    nonsingular_count: int = 0
    conjecture2_violations: List[Violation] = field(default_factory=list)
    conjecture1_violations: List[Violation] = field(default_factory=list)
    coverage_histogram: Dict[str, int] = field(default_factory=_empty_histogram)

    @property
    def order(self) -> Optional[int]:
        """The common order of the scanned graphs, None if mixed or empty."""
        return self.orders[0] if len(self.orders) == 1 else None

    @property
    def unexpected_violations(self) -> List[Violation]:
        return [v for v in self.conjecture2_violations + self.conjecture1_violations
                if not v.expected]

    def add(self, report) -> None:
        """Fold one BoundReport into the summary."""
        self.total_graphs += 1
        if report.n not in self.orders:
            self.orders = tuple(sorted(self.orders + (report.n,)))
        if not report.nonsingular:
            return
        self.nonsingular_count += 1
        if report.conjecture2 is Verdict.FAIL:
            self.conjecture2_violations.append(Violation(
                2, report.graph_id, report.n, report.energy, report.conjecture2_target))
        if report.conjecture1 is Verdict.FAIL:
            self.conjecture1_violations.append(Violation(
                1, report.graph_id, report.n, report.energy, float(report.conjecture1_target)))
        for label in report.coverage:
            self.coverage_histogram[label.value] += 1

    def merge(self, other: "EnumerationSummary") -> "EnumerationSummary":
        merged = EnumerationSummary(
            orders=tuple(sorted(set(self.orders) | set(other.orders))),
            total_graphs=self.total_graphs + other.total_graphs,
            nonsingular_count=self.nonsingular_count + other.nonsingular_count,
            conjecture2_violations=sorted(self.conjecture2_violations + other.conjecture2_violations,
                                          key=lambda v: v.graph6),
            conjecture1_violations=sorted(self.conjecture1_violations + other.conjecture1_violations,
                                          key=lambda v: v.graph6),
            coverage_histogram={key: self.coverage_histogram[key] + other.coverage_histogram[key]
                                for key in self.coverage_histogram},
        )
        return merged

    def to_dict(self) -> Dict:
        return {
            "order": self.order,
            "orders": list(self.orders),
            "total_graphs": self.total_graphs,
            "nonsingular_count": self.nonsingular_count,
            "conjecture2_violations": [v.to_dict() for v in self.conjecture2_violations],
            "conjecture1_violations": [v.to_dict() for v in self.conjecture1_violations],
            "unexpected_violations": len(self.unexpected_violations),
            "coverage_histogram": dict(self.coverage_histogram),
        }

    def violations_frame(self) -> pd.DataFrame:
        records = [v.to_dict() for v in self.conjecture2_violations + self.conjecture1_violations]
        return pd.DataFrame(records, columns=["conjecture", "graph6", "n", "energy",
                                              "target", "margin"])

    def coverage_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"label": list(self.coverage_histogram),
                             "graphs": list(self.coverage_histogram.values())})


def analyze_batch(graphs: Sequence[Graph]) -> EnumerationSummary:
    """
    Analyse a batch of graphs with one stacked eigensolve.

    Raises:
        ScanError: analysis failed for a graph (its graph6 string is attached)
    """
    summary = EnumerationSummary()
    try:
        spectra = eigenvalues_batch(graphs)
    except SpectrumError:
        spectra = [None] * len(graphs)    # retry one by one to name the culprit
    for g, spectrum in zip(graphs, spectra):
        try:
            report = build_report(g, spectrum, exact_determinant(g))
        except Exception as exc:
            raise ScanError(to_graph6(g), f"{type(exc).__name__}: {exc}") from exc
        summary.add(report)
    return summary


def _batched(graphs: Iterable[Graph], size: int = BATCH_SIZE) -> Iterator[List[Graph]]:
    batch: List[Graph] = []
    for g in graphs:
        batch.append(g)
        if len(batch) == size:
            yield batch
            batch = []
    if batch:
        yield batch


def _summarize(graphs: Iterable[Graph]) -> EnumerationSummary:
    summary = EnumerationSummary()
    for batch in _batched(graphs):
        summary = summary.merge(analyze_batch(batch))
    return summary


def _scan_subtree(task: Tuple[str, int]) -> EnumerationSummary:
    root, n = task
    return _summarize(generate_subtree(from_graph6(root), n))


def _scan_chunk(lines: List[str]) -> EnumerationSummary:
    return _summarize(from_graph6(line) for line in lines)


def scan(n: Optional[int] = None, graphs: Optional[Iterable[Graph]] = None,
         workers: int = 1, allow_long: bool = False,
         progress: bool = False) -> EnumerationSummary:
    """
    Check both conjectures and the coverage classifier on every graph.

    Args:
        n: Scan all non-isomorphic graphs of this order
        graphs: Or scan these graphs (an ingested corpus)
        workers: Worker processes; the result does not depend on it
        allow_long: Permit orders above 9
        progress: Show a tqdm progress bar

    Returns:
        EnumerationSummary with violation lists sorted by graph6 string

    Raises:
        UnsupportedOrderError: order out of range or a long run without allow_long
        ScanError: analysis of a graph failed
    """
    if (n is None) == (graphs is None):
        raise ValueError("give exactly one of n or graphs")
    if workers < 1:
        raise ValueError(f"workers must be at least 1, got {workers}")

    summary = EnumerationSummary()
    if n is not None:
        if not 1 <= n <= MAX_GENERATION_ORDER:
            raise UnsupportedOrderError(
                f"scan supports 1 <= n <= {MAX_GENERATION_ORDER}, got {n}")
        if n > STANDARD_MAX_ORDER and not allow_long:
            raise UnsupportedOrderError(
                f"n = {n} is a long run; enable it explicitly (allow_long)")
        if workers == 1:
            bar = tqdm(total=KNOWN_COUNTS[n], disable=not progress, desc=f"n={n}")
            for batch in _batched(generate_all(n)):
                summary = summary.merge(analyze_batch(batch))
                bar.update(len(batch))
            bar.close()
        else:
            tasks = [(to_graph6(root), n) for root in generation_roots(n)]
            with Pool(processes=workers) as pool:
                results = pool.imap_unordered(_scan_subtree, tasks)
                for part in tqdm(results, total=len(tasks), disable=not progress,
                                 desc=f"n={n}"):
                    summary = summary.merge(part)
    else:
        if workers == 1:
            for batch in tqdm(_batched(graphs), disable=not progress, desc="corpus"):
                summary = summary.merge(analyze_batch(batch))
        else:
            chunks = [[to_graph6(g) for g in batch] for batch in _batched(graphs)]
            with Pool(processes=workers) as pool:
                for part in tqdm(pool.imap_unordered(_scan_chunk, chunks),
                                 total=len(chunks), disable=not progress, desc="corpus"):
                    summary = summary.merge(part)

    if n is not None and summary.orders == ():
        summary.orders = (n,)
    return summary


def reverify(violation: Violation, tolerance: float = 1e-10) -> bool:
    """Recompute a reported violation from its graph6 string."""
    report = build_report(from_graph6(violation.graph6))
    verdict = report.conjecture2 if violation.conjecture == 2 else report.conjecture1
    return verdict is Verdict.FAIL and abs(report.energy - violation.energy) <= tolerance
