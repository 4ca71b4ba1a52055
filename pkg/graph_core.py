"""
Graph Core
Simple undirected graphs stored as bit rows, degree statistics, standard
constructions, structural predicates and the graph6 codec.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np


MAX_ORDER = 62          # single-byte graph6 header
EXACT_LIMIT = 16        # chromatic number / planarity are exact up to here
GRAPH6_HEADER = ">>graph6<<"


class Graph6FormatError(ValueError):
    """Malformed graph6 input; `offset` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class UnsupportedOrderError(ValueError):
    """Order outside the range an operation supports."""


class InvalidGraphError(ValueError):
    """Adjacency rows that do not describe a simple undirected graph."""


@dataclass(frozen=True)
class Graph:
    """
    Simple undirected graph on vertices 0..order-1.

    rows[v] is a bit mask of the neighbours of v. Instances are immutable and
    validated on construction (symmetric, loop-free, 1 <= order <= 62).
    """

    order: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        # numpy integers lack bit_length
        object.__setattr__(self, "rows", tuple(int(row) for row in self.rows))
        if not 1 <= self.order <= MAX_ORDER:
            raise UnsupportedOrderError(
                f"order must be between 1 and {MAX_ORDER}, got {self.order}")
        if len(self.rows) != self.order:
            raise InvalidGraphError(
                f"expected {self.order} rows, got {len(self.rows)}")
        full = (1 << self.order) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise InvalidGraphError(f"row {v} has bits beyond the order")
            if row >> v & 1:
                raise InvalidGraphError(f"loop at vertex {v}")
            for u in _bits(row):
                if not self.rows[u] >> v & 1:
                    raise InvalidGraphError(f"edge ({v}, {u}) is not symmetric")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        """
        Build a graph from an edge list.

        Args:
            order: Number of vertices
            edges: Pairs (u, v) with 0 <= u, v < order and u != v

        Returns:
            The graph
        """
        rows = [0] * order
        for u, v in edges:
            if u == v:
                raise InvalidGraphError(f"loop at vertex {u}")
            if not (0 <= u < order and 0 <= v < order):
                raise InvalidGraphError(f"edge ({u}, {v}) outside order {order}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, tuple(rows))

    @property
    def size(self) -> int:
        """Number of edges m."""
        return sum(bin(row).count("1") for row in self.rows) // 2

    def degrees(self) -> List[int]:
        return [bin(row).count("1") for row in self.rows]

    def edges(self) -> List[Tuple[int, int]]:
        """Edges (u, v) with u < v in row-major order."""
        return [(u, v) for u in range(self.order) for v in _bits(self.rows[u]) if u < v]

    def adjacency_matrix(self, dtype=float) -> np.ndarray:
        """Dense 0/1 adjacency matrix A(G)."""
        rows = np.array(self.rows, dtype=np.int64)
        bits = (rows[:, None] >> np.arange(self.order, dtype=np.int64)) & 1
        return bits.astype(dtype)

    def permute(self, perm: Sequence[int]) -> "Graph":
        """
        Relabel vertices: vertex v becomes perm[v].

        Args:
            perm: A permutation of 0..order-1

        Returns:
            The relabelled graph
        """
        if sorted(perm) != list(range(self.order)):
            raise InvalidGraphError("perm is not a permutation of the vertices")
        rows = [0] * self.order
        for v, row in enumerate(self.rows):
            for u in _bits(row):
                rows[int(perm[v])] |= 1 << int(perm[u])
        return Graph(self.order, tuple(rows))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.order))
        g.add_edges_from(self.edges())
        return g


@dataclass(frozen=True)
class DegreeProfile:
    """Edge count and degree statistics of a graph."""

    order: int
    size: int
    max_degree: int
    min_degree: int
    avg_degree: Fraction

    @property
    def avg_degree_float(self) -> float:
        return float(self.avg_degree)


def _bits(mask: int):
    """Yield the positions of the set bits of mask, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

def from_graph6(text: str) -> Graph:
    """
    Decode one graph6 line.

    Args:
        text: ASCII graph6 string, optionally prefixed by '>>graph6<<' and
            surrounded by whitespace

    Returns:
        The decoded graph

    Raises:
        Graph6FormatError: bad header byte, wrong payload length or a byte
            outside the printable graph6 range
    """
    line = text.strip()
    shift = 0
    if line.startswith(GRAPH6_HEADER):
        shift = len(GRAPH6_HEADER)
        line = line[shift:]
    if not line:
        raise Graph6FormatError("empty graph6 string", shift)
    for i, ch in enumerate(line):
        if ord(ch) > 126 or ord(ch) < 63:
            raise Graph6FormatError(f"byte {ch!r} outside graph6 range", shift + i)

    header = ord(line[0]) - 63
    if header == 63:
        raise Graph6FormatError(
            f"multi-byte order header, orders above {MAX_ORDER} are not supported", shift)
    if header < 1:
        raise Graph6FormatError("graph order must be at least 1", shift)

    n = header
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    payload = line[1:]
    if len(payload) < expected:
        raise Graph6FormatError(
            f"truncated payload: expected {expected} bytes, got {len(payload)}",
            shift + 1 + len(payload))
    if len(payload) > expected:
        raise Graph6FormatError(
            f"trailing data: expected {expected} bytes, got {len(payload)}",
            shift + 1 + expected)

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(payload[k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def to_graph6(g: Graph) -> str:
    """
    Encode a graph as graph6: header byte n+63, then the upper triangle in
    column order x(0,1), x(0,2), x(1,2), x(0,3), ... packed six bits per byte.
    """
    n = g.order
    if n > MAX_ORDER:
        raise UnsupportedOrderError(f"graph6 encoding supports n <= {MAX_ORDER}")
    out = [chr(n + 63)]
    value = 0
    count = 0
    for j in range(1, n):
        row = g.rows[j]
        for i in range(j):
            value = value << 1 | (row >> i & 1)
            count += 1
            if count == 6:
                out.append(chr(value + 63))
                value = 0
                count = 0
    if count:
        out.append(chr((value << (6 - count)) + 63))
    return "".join(out)


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def path(n: int) -> Graph:
    """Path P_n on vertices 0-1-...-(n-1)."""
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    """Cycle C_n, n >= 3."""
    if n < 3:
        raise ValueError(f"cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    """Complete graph K_n."""
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def complete_bipartite(a: int, b: int) -> Graph:
    """Complete bipartite graph K_{a,b}; parts are 0..a-1 and a..a+b-1."""
    if a < 0 or b < 0 or a + b < 1:
        raise ValueError(f"invalid part sizes ({a}, {b})")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def paw() -> Graph:
    """Triangle 0-1-2 with pendant vertex 3 attached to 0."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)])


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """
    Erdos-Renyi G(n, p) sample.

    Args:
        n: Order
        p: Edge probability (0-1)
        rng: numpy random generator

    Returns:
        The sampled graph
    """
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    return Graph.from_edges(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Block-diagonal union; vertices of g2 are shifted by g1.order."""
    shift = g1.order
    rows = g1.rows + tuple(row << shift for row in g2.rows)
    return Graph(g1.order + g2.order, rows)


# ---------------------------------------------------------------------------
# Statistics and predicates
# ---------------------------------------------------------------------------

def degree_profile(g: Graph) -> DegreeProfile:
    """m, max/min degree and the exact average degree 2m/n."""
    degrees = g.degrees()
    total = sum(degrees)
    return DegreeProfile(
        order=g.order,
        size=total // 2,
        max_degree=max(degrees),
        min_degree=min(degrees),
        avg_degree=Fraction(total, g.order),
    )


def is_connected(g: Graph) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        reach = 0
        for v in _bits(frontier):
            reach |= g.rows[v]
        frontier = reach & ~seen
        seen |= frontier
    return seen == (1 << g.order) - 1


def is_bipartite(g: Graph) -> bool:
    """Two-colouring by breadth-first layering of every component."""
    colour = [-1] * g.order
    for start in range(g.order):
        if colour[start] != -1:
            continue
        colour[start] = 0
        queue = [start]
        while queue:
            v = queue.pop(0)
            for u in _bits(g.rows[v]):
                if colour[u] == -1:
                    colour[u] = 1 - colour[v]
                    queue.append(u)
                elif colour[u] == colour[v]:
                    return False
    return True


def is_regular(g: Graph) -> Optional[int]:
    """Common degree k if the graph is k-regular, otherwise None."""
    degrees = set(g.degrees())
    return degrees.pop() if len(degrees) == 1 else None


def clique_number(g: Graph) -> int:
    """Exact clique number (Bron-Kerbosch with pivoting on bit sets)."""
    best = 0

    def expand(size: int, candidates: int, excluded: int):
        nonlocal best
        if not candidates:
            if not excluded:
                best = max(best, size)
            return
        if size + bin(candidates).count("1") <= best:
            return
        pivot = max(_bits(candidates | excluded), key=lambda u: bin(g.rows[u] & candidates).count("1"))
        for v in _bits(candidates & ~g.rows[pivot]):
            expand(size + 1, candidates & g.rows[v], excluded & g.rows[v])
            candidates &= ~(1 << v)
            excluded |= 1 << v

    expand(0, (1 << g.order) - 1, 0)
    return best


def greedy_coloring(g: Graph) -> List[int]:
    """
    DSATUR colouring: repeatedly colour the vertex seeing the most distinct
    colours (ties broken by degree, then index) with the smallest free colour.
    """
    n = g.order
    colours = [-1] * n
    degrees = g.degrees()
    for _ in range(n):
        def saturation(v):
            return len({colours[u] for u in _bits(g.rows[v]) if colours[u] >= 0})
        v = max((v for v in range(n) if colours[v] < 0),
                key=lambda v: (saturation(v), degrees[v], -v))
        used = {colours[u] for u in _bits(g.rows[v])}
        c = 0
        while c in used:
            c += 1
        colours[v] = c
    return colours


def _k_colourable(g: Graph, k: int, order: List[int]) -> bool:
    colours = [-1] * g.order

    def assign(idx: int, used: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        forbidden = {colours[u] for u in _bits(g.rows[v])}
        for c in range(used):
            if c not in forbidden:
                colours[v] = c
                if assign(idx + 1, used):
                    return True
        if used < k:
            # a fresh colour is interchangeable with any other unused one
            colours[v] = used
            if assign(idx + 1, used + 1):
                return True
        colours[v] = -1
        return False

    return assign(0, 0)


def chromatic_number(g: Graph) -> int:
    """
    Exact chromatic number by branch and bound.

    The clique number bounds from below and a DSATUR colouring from above;
    every k in between is decided by backtracking.

    Raises:
        UnsupportedOrderError: order above EXACT_LIMIT
    """
    if g.order > EXACT_LIMIT:
        raise UnsupportedOrderError(
            f"exact chromatic number is limited to n <= {EXACT_LIMIT}")
    if g.size == 0:
        return 1
    upper = max(greedy_coloring(g)) + 1
    lower = clique_number(g)
    degrees = g.degrees()
    order = sorted(range(g.order), key=lambda v: (-degrees[v], v))
    for k in range(lower, upper):
        if _k_colourable(g, k, order):
            return k
    return upper


def is_planar(g: Graph) -> bool:
    """
    Exact planarity test.

    Raises:
        UnsupportedOrderError: order above EXACT_LIMIT
    """
    if g.order > EXACT_LIMIT:
        raise UnsupportedOrderError(f"planarity is limited to n <= {EXACT_LIMIT}")
    if g.order >= 3 and g.size > 3 * g.order - 6:
        return False
    planar, _ = nx.check_planarity(g.to_networkx())
    return planar
