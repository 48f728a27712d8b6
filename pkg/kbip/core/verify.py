#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Construction-independent verification of edge-colorings of K_{n,n}.

Only the certificate data (n, num_colors, edge -> color) is consulted.
Vertices are numbered 0..n-1 on the top side and n..2n-1 on the bottom side.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, islice
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx
import numpy as np
from networkx.utils import UnionFind
from tqdm import tqdm

from ..config import Config, VerificationError
from .edge_coloring import EdgeColoring, UNCOLORED

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

# Color pairs handed to the worker pool per round
PAIR_BATCH = 512


@dataclass(frozen=True)
class BichromaticWitness:
    """A cycle of K_{n,n} using exactly the two colors, edges in cycle order as (top, bottom)."""

    colors: Tuple[int, int]
    edges: Tuple[Edge, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {"colors": list(self.colors), "edges": [list(e) for e in self.edges]}


@dataclass
class VerificationReport:
    """
    Outcome of the properness and acyclicity checks.

    acyclic is None when the coloring is improper and the pair scan was not run.
    """

    n: int
    num_colors: int
    proper: bool
    proper_violations: List[Tuple[str, int, int]] = field(default_factory=list)
    acyclic: Optional[bool] = None
    bichromatic_witness: Optional[BichromaticWitness] = None
    pairs_checked: int = 0

    @property
    def ok(self) -> bool:
        return self.proper and bool(self.acyclic)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "num_colors": self.num_colors,
            "proper": self.proper,
            "proper_violations": [list(v) for v in self.proper_violations],
            "acyclic": self.acyclic,
            "pairs_checked": self.pairs_checked,
            "bichromatic_witness": self.bichromatic_witness.to_dict() if self.bichromatic_witness else None,
        }


@dataclass
class LowerBoundResult:
    n: int
    colors: int
    exists: bool
    witness: Optional[EdgeColoring] = None
    nodes_explored: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "colors": self.colors,
            "exists": self.exists,
            "nodes_explored": self.nodes_explored,
            "witness": self.witness.to_certificate() if self.witness is not None else None,
        }


def _clashes(array: np.ndarray) -> List[Tuple[int, int]]:
    ordered = np.sort(array, axis=1)
    rows, cols = np.nonzero(ordered[:, 1:] == ordered[:, :-1])
    return sorted({(int(r), int(ordered[r, c])) for r, c in zip(rows, cols)})


def check_proper(c: EdgeColoring) -> VerificationReport:
    """
    Check that no vertex sees a color twice.

    Returns:
        Report with proper set and clashes listed as (side, vertex, color)

    Raises:
        VerificationError: If some edge is uncolored
    """
    if not c.is_total():
        missing = c.n * c.n - c.edge_count
        error_msg = f"Coloring is not total: {missing} edge(s) uncolored"
        logger.debug(error_msg)
        raise VerificationError(error_msg)

    violations = [("top", u, color) for u, color in _clashes(c.colors)]
    violations += [("bottom", v, color) for v, color in _clashes(c.colors.T)]
    if violations:
        logger.debug(f"Improper coloring: {len(violations)} clash(es), first {violations[0]}")
    return VerificationReport(n=c.n, num_colors=c.num_colors, proper=not violations,
                              proper_violations=violations)


def _edges_by_color(c: EdgeColoring) -> Dict[int, np.ndarray]:
    """Flat edge indices per color, for colors used at least twice."""
    flat = c.colors.ravel()
    order = np.argsort(flat, kind="stable")
    used, starts, counts = np.unique(flat[order], return_index=True, return_counts=True)
    return {int(color): order[start:start + count]
            for color, start, count in zip(used, starts, counts) if count >= 2}


def _pair_rank(i: int, j: int, k: int) -> int:
    """1-based position of (i, j) among the pairs of range(k) in lexicographic order."""
    return i * (2 * k - i - 1) // 2 + (j - i)


def _trace_witness(forest: Dict[int, List[int]], start: int, target: int) -> List[int]:
    # Path start -> target in a forest of maximum degree 2
    path = [start]
    previous = None
    current = start
    while current != target:
        step = next(v for v in forest[current] if v != previous)
        previous, current = current, step
        path.append(current)
    return path


def _pair_cycle(n: int, first: np.ndarray, second: np.ndarray,
                pair: Tuple[int, int]) -> Optional[BichromaticWitness]:
    """Union-find scan of the two color classes; witness for the first closing edge."""
    union = UnionFind()
    forest: Dict[int, List[int]] = {}
    for flat in np.concatenate([first, second]).tolist():
        u, v = divmod(flat, n)
        top, bottom = u, n + v
        if union[top] == union[bottom]:
            path = _trace_witness(forest, bottom, top)
            nodes = path + [bottom]
            edges = []
            for x, y in zip(nodes, nodes[1:]):
                edges.append((x, y - n) if x < n else (y, x - n))
            return BichromaticWitness(colors=pair, edges=tuple(edges))
        union.union(top, bottom)
        forest.setdefault(top, []).append(bottom)
        forest.setdefault(bottom, []).append(top)
    return None


def check_acyclic(c: EdgeColoring, threads: Optional[int] = None,
                  show_progress: bool = False) -> VerificationReport:
    """
    Scan every unordered color pair for a bichromatic cycle.

    Pairs are taken in lexicographic order; the reported witness belongs to
    the first failing pair and pairs_checked counts pairs up to it. Pairs
    where a color has fewer than two edges cannot close a cycle and are
    counted without being scanned.

    Raises:
        VerificationError: If the coloring is not total and proper
    """
    report = check_proper(c)
    if not report.proper:
        raise VerificationError("Acyclicity is only defined for proper colorings")

    n, k = c.n, c.num_colors
    classes = _edges_by_color(c)
    total = k * (k - 1) // 2
    workers = Config.get_thread_count(threads)
    active = sorted(classes)
    pairs = combinations(active, 2)

    def scan(pair):
        i, j = pair
        return _pair_cycle(n, classes[i], classes[j], pair)

    witness = None
    scanned = len(active) * (len(active) - 1) // 2
    with ThreadPoolExecutor(max_workers=workers) as executor, \
            tqdm(total=scanned, desc="Color pairs", disable=not show_progress) as bar:
        while witness is None:
            batch = list(islice(pairs, PAIR_BATCH))
            if not batch:
                break
            for result in executor.map(scan, batch):
                bar.update(1)
                if result is not None:
                    witness = result
                    break

    report.acyclic = witness is None
    report.bichromatic_witness = witness
    report.pairs_checked = total if witness is None else _pair_rank(*witness.colors, k)
    if witness is not None:
        logger.debug(f"Bichromatic cycle of length {len(witness.edges)} on colors {witness.colors}")
    return report


def verify_coloring(c: EdgeColoring, threads: Optional[int] = None,
                    show_progress: bool = False) -> VerificationReport:
    """Properness, then acyclicity when the coloring is proper."""
    report = check_proper(c)
    if not report.proper:
        return report
    return check_acyclic(c, threads=threads, show_progress=show_progress)


def witness_is_cycle(c: EdgeColoring, witness: BichromaticWitness) -> bool:
    """True iff the witness is a simple closed cycle of c alternating its two colors."""
    edges = witness.edges
    if len(edges) < 4 or len(edges) % 2 or len(set(edges)) != len(edges):
        return False
    graph = nx.Graph()
    for u, v in edges:
        if not (0 <= u < c.n and 0 <= v < c.n):
            return False
        graph.add_edge(("top", u), ("bottom", v), color=c.color(u, v))
    if {d["color"] for _, _, d in graph.edges(data=True)} != set(witness.colors):
        return False
    if any(deg != 2 for _, deg in graph.degree()) or not nx.is_connected(graph):
        return False
    for node in graph.nodes:
        if len({graph.edges[node, other]["color"] for other in graph.neighbors(node)}) != 2:
            return False
    return True


class _Search:
    """Backtracking over edges in row-major order with row 0 fixed to colors 0..n-1."""

    def __init__(self, n: int, k: int):
        self.n = n
        self.k = k
        self.colors = np.full((n, n), UNCOLORED, dtype=np.int32)
        # row_at[u][c]: bottom vertex joined to top u by color c; col_at[v][c] likewise
        self.row_at = [[-1] * k for _ in range(n)]
        self.col_at = [[-1] * k for _ in range(n)]
        self.nodes = 0

    def place(self, u: int, v: int, color: int):
        self.colors[u, v] = color
        self.row_at[u][color] = v
        self.col_at[v][color] = u

    def remove(self, u: int, v: int, color: int):
        self.colors[u, v] = UNCOLORED
        self.row_at[u][color] = -1
        self.col_at[v][color] = -1

    def closes_cycle(self, u: int, v: int, color: int) -> bool:
        # After placing (u, v): follow v -other- w -color- z ... back to u
        for other in range(self.k):
            if other == color:
                continue
            bottom = v
            while True:
                top = self.col_at[bottom][other]
                if top < 0:
                    break
                if top == u:
                    return True
                bottom = self.row_at[top][color]
                if bottom < 0:
                    break
        return False

    def run(self) -> bool:
        for v in range(self.n):
            self.place(0, v, v)
        edges = [(u, v) for u in range(1, self.n) for v in range(self.n)]
        return self._extend(edges, 0, self.n - 1)

    def _extend(self, edges, index: int, highest: int) -> bool:
        if index == len(edges):
            return True
        u, v = edges[index]
        for color in range(min(self.k, highest + 2)):
            if self.row_at[u][color] >= 0 or self.col_at[v][color] >= 0:
                continue
            self.nodes += 1
            self.place(u, v, color)
            if not self.closes_cycle(u, v, color) and \
                    self._extend(edges, index + 1, max(highest, color)):
                return True
            self.remove(u, v, color)
        return False


def exhaustive_lower_bound(n: int, k: int) -> LowerBoundResult:
    """
    Decide whether K_{n,n} has an acyclic proper coloring with at most k colors.

    Colors are interchangeable, so row 0 is fixed to 0..n-1 and a color above
    every used one is only tried as the next unused id.

    Raises:
        VerificationError: If n exceeds Config.LOWER_BOUND_MAX_N
    """
    max_n = Config.get_instance().LOWER_BOUND_MAX_N
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise VerificationError(f"n must be a positive integer, got {n!r}")
    if n > max_n:
        error_msg = (f"Exhaustive search is limited to n <= {max_n}; "
                     f"the space grows like k^(n^2) and n={n} is out of reach")
        logger.debug(error_msg)
        raise VerificationError(error_msg)
    if k < n:
        logger.debug(f"k={k} < n={n}: no proper coloring")
        return LowerBoundResult(n=n, colors=k, exists=False)

    search = _Search(n, k)
    found = search.run()
    witness = None
    if found:
        witness = EdgeColoring(n=n, num_colors=k, colors=search.colors, construction="search")
    logger.debug(f"Lower bound search n={n}, k={k}: exists={found}, {search.nodes} nodes")
    return LowerBoundResult(n=n, colors=k, exists=found, witness=witness, nodes_explored=search.nodes)
