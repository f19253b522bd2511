"""
Gaussian graphical models as polynomial ideals.

A graph on vertices ``1..p`` gives, for every non-edge ``{i, j}``, the
cofactor of the symmetric matrix ``Sigma`` with row ``j`` and column ``i``
deleted; its vanishing is ``(Sigma^-1)_ij = 0``. Saturating at the
principal minors extracts the component meeting the positive definite cone.
"""

import hashlib
import logging
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from symbolic.conf import get_setting
from symbolic.exceptions import GraphFormatError, GroebnerBudgetExceeded, RetryBudgetExceeded
from symbolic.groebner import Ideal, contains, krull_dimension, saturate
from symbolic.polyring import PolyRing
from symbolic.toric import ToricOptions, decide_toric

logger = logging.getLogger(__name__)


# =============================================================================
# Graphs
# =============================================================================


@dataclass(frozen=True)
class Graph:
    p: int
    edges: frozenset = frozenset()
    label: str = ""

    def __post_init__(self):
        if self.p < 1:
            raise GraphFormatError(f"a graph needs at least one vertex, got p = {self.p}")
        normalized = set()
        for i, j in self.edges:
            if i == j:
                raise GraphFormatError(f"loop at vertex {i}")
            if not (1 <= i <= self.p and 1 <= j <= self.p):
                raise GraphFormatError(f"edge {i}-{j} outside vertices 1..{self.p}")
            normalized.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(normalized))

    def non_edges(self):
        return [pair for pair in combinations(range(1, self.p + 1), 2) if pair not in self.edges]

    def is_complete(self):
        return not self.non_edges()

    def is_connected(self):
        seen = {1}
        frontier = [1]
        while frontier:
            v = frontier.pop()
            for i, j in self.edges:
                for a, b in ((i, j), (j, i)):
                    if a == v and b not in seen:
                        seen.add(b)
                        frontier.append(b)
        return len(seen) == self.p

    def relabel(self, permutation):
        """``permutation[v - 1]`` is the new name of vertex ``v``."""
        return Graph(
            self.p,
            frozenset((permutation[i - 1], permutation[j - 1]) for i, j in self.edges),
            self.label,
        )

    def inline(self):
        return f"{self.p}:" + ",".join(f"{i}-{j}" for i, j in sorted(self.edges))

    def digest(self):
        return int(hashlib.sha256(self.inline().encode()).hexdigest()[:8], 16)

    @property
    def name(self):
        return self.label or self.inline()


def _edges(pairs):
    return frozenset(pairs)


NAMED_GRAPHS = {
    "path3": Graph(3, _edges([(1, 2), (2, 3)]), "path3"),
    "complete3": Graph(3, _edges([(1, 2), (1, 3), (2, 3)]), "complete3"),
    "diamond": Graph(4, _edges([(1, 2), (1, 3), (1, 4), (2, 3), (3, 4)]), "diamond"),
    "paw": Graph(4, _edges([(1, 2), (1, 3), (1, 4), (2, 3)]), "paw"),
    "cycle": Graph(4, _edges([(1, 2), (2, 3), (3, 4), (1, 4)]), "cycle"),
    "claw": Graph(4, _edges([(1, 2), (1, 3), (1, 4)]), "claw"),
    "path": Graph(4, _edges([(1, 2), (2, 3), (3, 4)]), "path"),
    "diamond_plus_edge": Graph(
        5, _edges([(1, 2), (2, 3), (3, 4), (1, 4), (1, 3), (3, 5)]), "diamond_plus_edge"
    ),
}

SCREEN_TABLE = ("diamond", "paw", "cycle", "claw", "path")


def _vertex(text, where):
    try:
        return int(text)
    except ValueError:
        raise GraphFormatError(f"{where}: expected a vertex number, got {text!r}")


def parse_inline(text, label=""):
    """``p:i-j,k-l,...``; the edge list may be empty."""
    head, sep, body = text.partition(":")
    if not sep:
        raise GraphFormatError(f"inline graph {text!r} lacks the 'p:' prefix")
    p = _vertex(head.strip(), "vertex count")
    edges = []
    for item in filter(None, (part.strip() for part in body.split(","))):
        left, dash, right = item.partition("-")
        if not dash:
            raise GraphFormatError(f"edge {item!r} is not of the form i-j")
        edges.append((_vertex(left, item), _vertex(right, item)))
    return Graph(p, frozenset(edges), label)


def parse_edge_list(text, label=""):
    """``p`` on the first line, then one ``i j`` pair per line; ``#`` comments."""
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    if not lines:
        raise GraphFormatError("empty edge list")
    p = _vertex(lines[0][1], f"line {lines[0][0]}")
    edges = []
    for number, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {number}: expected 'i j', got {line!r}")
        edges.append((_vertex(parts[0], f"line {number}"), _vertex(parts[1], f"line {number}")))
    return Graph(p, frozenset(edges), label)


def load_graph(source):
    """A named graph, an inline ``p:i-j,...`` graph or an edge-list file."""
    if source in NAMED_GRAPHS:
        return NAMED_GRAPHS[source]
    path = Path(source)
    if path.is_file():
        return parse_edge_list(path.read_text(), label=path.stem)
    if ":" in source:
        return parse_inline(source)
    raise GraphFormatError(f"{source!r} is neither a named graph, an inline graph nor a file")


# =============================================================================
# Symmetric matrices and CI ideals
# =============================================================================


class SymMatrixRing:
    """Polynomial ring in the entries ``s_ij = s_ji`` of a symmetric ``p x p`` matrix."""

    def __init__(self, p):
        self.p = p
        separator = "_" if p > 9 else ""
        self.pairs = [(i, j) for i in range(1, p + 1) for j in range(i, p + 1)]
        self.ring = PolyRing(tuple(f"s{i}{separator}{j}" for i, j in self.pairs))
        self._index = {pair: k for k, pair in enumerate(self.pairs)}
        self._minors = {}

    @property
    def ngens(self):
        return self.ring.ngens

    def entry(self, i, j):
        return self.ring.variable(self._index[(min(i, j), max(i, j))])

    def minor(self, rows, cols):
        """Determinant of the submatrix on 1-based ``rows`` and ``cols``, by memoized Laplace expansion."""
        rows, cols = tuple(rows), tuple(cols)
        if len(rows) != len(cols):
            raise ValueError("minor of a non-square submatrix")
        key = (rows, cols)
        if key in self._minors:
            return self._minors[key]
        if not rows:
            result = self.ring.one()
        else:
            result = self.ring.zero()
            head, rest = rows[0], rows[1:]
            for k, c in enumerate(cols):
                term = self.entry(head, c) * self.minor(rest, cols[:k] + cols[k + 1 :])
                result = result + term if k % 2 == 0 else result - term
        self._minors[key] = result
        return result

    def principal_minor(self, subset):
        subset = tuple(sorted(subset))
        return self.minor(subset, subset)

    def principal_subsets(self):
        """Nonempty vertex subsets, smallest first."""
        vertices = range(1, self.p + 1)
        return [s for size in range(1, self.p + 1) for s in combinations(vertices, size)]


def ci_ideal(graph, matrix_ring=None):
    """One cofactor per non-edge ``{i, j}``: delete row ``j`` and column ``i``."""
    matrix_ring = matrix_ring or SymMatrixRing(graph.p)
    if not graph.is_connected():
        logger.warning(f"[CI-IDEAL] graph {graph.name} is not connected")
    vertices = tuple(range(1, graph.p + 1))
    generators = []
    for i, j in graph.non_edges():
        rows = tuple(v for v in vertices if v != j)
        cols = tuple(v for v in vertices if v != i)
        generators.append(matrix_ring.minor(rows, cols))
    if not generators:
        logger.info(f"[CI-IDEAL] {graph.name} is complete, CI ideal is zero")
    return Ideal(matrix_ring.ring, generators)


def vanishing_ideal_candidate(ideal, graph, budget=None, matrix_ring=None):
    """Saturate at every principal minor, smallest first, until a full pass changes nothing."""
    matrix_ring = matrix_ring or SymMatrixRing(graph.p)
    current = ideal
    if current.is_zero():
        return current
    passes = 0
    while True:
        passes += 1
        changed = False
        for subset in matrix_ring.principal_subsets():
            minor = matrix_ring.principal_minor(subset)
            try:
                saturated = saturate(current, minor, budget=budget)
            except GroebnerBudgetExceeded as e:
                raise GroebnerBudgetExceeded(e.pairs, context=f"saturating {graph.name} at minor {subset}")
            if contains(current, saturated):
                continue
            logger.debug(f"[SATURATE] {graph.name}: minor {subset} enlarged the ideal")
            current = Ideal(current.ring, saturated.groebner())
            changed = True
        if not changed:
            logger.info(f"[SATURATE] {graph.name} stable after {passes} passes")
            return current


# =============================================================================
# Screening
# =============================================================================


@dataclass
class ScreenRow:
    label: str
    p: int
    edges: list
    saturated: bool
    seed: int
    dim_ci: int = None
    dim_model: int = None
    lie_dim: int = None
    cartan_dim: int = None
    toral_dim: int = None
    nilpotent_dim: int = None
    status: str = None
    toric: bool = None
    diagnostics: list = field(default_factory=list)

    def table_cells(self):
        def cell(value):
            if value is None:
                return "?"
            if isinstance(value, bool):
                return "yes" if value else "no"
            return str(value)

        return [self.label, cell(self.dim_model), cell(self.lie_dim), cell(self.toral_dim), cell(self.toric)]


def derive_seed(master_seed, graph):
    return (master_seed * 1000003 + graph.digest()) % (2**32)


def screen(graph, saturate_minors=False, seed=None, max_retries=None, budget=None):
    """One table row: model dimension, dim g, dim of a maximal torus, toric or not."""
    seed = get_setting("DEFAULT_SEED") if seed is None else seed
    row = ScreenRow(
        label=graph.name,
        p=graph.p,
        edges=[list(e) for e in sorted(graph.edges)],
        saturated=saturate_minors,
        seed=seed,
    )
    matrix_ring = SymMatrixRing(graph.p)
    ideal = ci_ideal(graph, matrix_ring)
    try:
        row.dim_ci = krull_dimension(ideal, budget=budget)
        if saturate_minors:
            ideal = vanishing_ideal_candidate(ideal, graph, budget=budget, matrix_ring=matrix_ring)
            row.dim_model = krull_dimension(ideal, budget=budget)
        else:
            row.dim_model = row.dim_ci
    except GroebnerBudgetExceeded as e:
        row.diagnostics.append(str(e))
        logger.warning(f"[SCREEN] {graph.name}: {e}")

    try:
        verdict = decide_toric(ideal, ToricOptions(seed=seed, max_retries=max_retries, pair_budget=budget))
    except RetryBudgetExceeded as e:
        row.diagnostics.append(str(e))
        return row
    row.lie_dim = verdict.lie_dim
    row.cartan_dim = verdict.cartan_dim
    row.toral_dim = verdict.toral_dim
    row.nilpotent_dim = verdict.nilpotent_dim
    row.status = verdict.status.value
    row.toric = verdict.is_toric if verdict.status.exit_code != 2 else None
    row.diagnostics.extend(verdict.diagnostics)
    logger.info(
        f"[SCREEN] {graph.name}: dim {row.dim_model}, dim g {row.lie_dim}, "
        f"torus {row.toral_dim}, {row.status}"
    )
    return row


def screen_inline(inline, label, saturate_minors, seed, max_retries=None):
    """Process-pool entry point: graphs travel as inline strings."""
    graph = parse_inline(inline, label)
    return screen(graph, saturate_minors=saturate_minors, seed=seed, max_retries=max_retries)


def format_table(rows):
    header = ["graph", "dim model", "dim Lie algebra", "dim max tori", "toric"]
    body = [row.table_cells() for row in rows]
    widths = [max(len(r[k]) for r in [header] + body) for k in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in [header] + body]
    return "\n".join(lines)

