"""Canonical labeling and isomorphism-free enumeration of small graphs.

canonical_form uses individualization-refinement: the vertex partition is
refined (starting from degrees) until equitable, then every vertex of the
first non-singleton cell is individualized in turn; each discrete leaf gives
an ordering, and the ordering with the smallest relabeled adjacency wins.
Twin vertices in the branching cell are interchangeable, so only one per twin
class is tried.
"""
import itertools
import logging
import random
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from src.errors import SizeGuardError
from src.graph import Graph, iter_bits, mask_of
from src.graph6 import to_graph6

logger = logging.getLogger(__name__)

Cells = List[List[int]]


def _refine(graph: Graph, cells: Cells) -> Cells:
    while True:
        masks = [mask_of(cell) for cell in cells]
        refined: Cells = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            signature = {
                v: tuple((graph.adj[v] & m).bit_count() for m in masks) for v in cell
            }
            keys = sorted(set(signature.values()))
            if len(keys) > 1:
                changed = True
            for key in keys:
                refined.append([v for v in cell if signature[v] == key])
        cells = refined
        if not changed:
            return cells


def _relabeled_rows(graph: Graph, order: List[int]) -> Tuple[int, ...]:
    position = {v: i for i, v in enumerate(order)}
    rows = []
    for v in order:
        row = 0
        for w in iter_bits(graph.adj[v]):
            row |= 1 << position[w]
        rows.append(row)
    return tuple(rows)


def _twin_representatives(graph: Graph, cell: List[int]) -> List[int]:
    reps: List[int] = []
    for v in cell:
        if not any(
            graph.adj[v] & ~(1 << r) == graph.adj[r] & ~(1 << v) for r in reps
        ):
            reps.append(v)
    return reps


def _search(graph: Graph, cells: Cells, best: list) -> None:
    cells = _refine(graph, cells)
    target = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
    if target is None:
        rows = _relabeled_rows(graph, [cell[0] for cell in cells])
        if best[0] is None or rows < best[0]:
            best[0] = rows
        return
    cell = cells[target]
    for v in _twin_representatives(graph, cell):
        rest = [w for w in cell if w != v]
        _search(graph, cells[:target] + [[v], rest] + cells[target + 1:], best)


def canonical_form(graph: Graph) -> Graph:
    """The same labeled graph for every member of an isomorphism class."""
    if graph.n <= 1:
        return graph
    best: list = [None]
    _search(graph, [list(range(graph.n))], best)
    return Graph(graph.n, best[0])


def canonical_key(graph: Graph) -> str:
    """graph6 of the canonical form; the memo and dedup key."""
    return to_graph6(canonical_form(graph))


def are_isomorphic_bruteforce(g1: Graph, g2: Graph) -> bool:
    """Explicit search for an adjacency-preserving bijection."""
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    for perm in itertools.permutations(range(g1.n)):
        if g1.relabel(perm) == g2:
            return True
    return False


def enumerate_graphs_bruteforce(n: int) -> Iterator[Graph]:
    """All 2^(n(n-1)/2) edge masks deduplicated by canonical form."""
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    seen = set()
    for mask in range(1 << len(pairs)):
        adj = [0] * n
        for k, (i, j) in enumerate(pairs):
            if (mask >> k) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        canon = canonical_form(Graph(n, tuple(adj)))
        if canon.adj not in seen:
            seen.add(canon.adj)
            yield canon


_CLASS_CACHE: Dict[int, List[Graph]] = {0: [Graph(0, ())]}


def _classes(n: int) -> List[Graph]:
    if n in _CLASS_CACHE:
        return _CLASS_CACHE[n]
    found: Dict[Tuple[int, ...], Graph] = {}
    for base in _classes(n - 1):
        for nbhd in range(1 << (n - 1)):
            adj = list(base.adj) + [nbhd]
            for w in iter_bits(nbhd):
                adj[w] |= 1 << (n - 1)
            canon = canonical_form(Graph(n, tuple(adj)))
            found.setdefault(canon.adj, canon)
    classes = [found[key] for key in sorted(found)]
    logger.debug("enumerated %d isomorphism classes on %d vertices", len(classes), n)
    _CLASS_CACHE[n] = classes
    return classes


def enumerate_graphs(n: int, max_vertices: int = 8) -> Iterator[Graph]:
    """One canonical representative per isomorphism class on n vertices.

    Classes on n vertices are grown from the classes on n-1 vertices by
    adding a last vertex with every possible neighbourhood.
    """
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    if n > max_vertices:
        raise SizeGuardError("enumeration", "vertices", n, max_vertices)
    yield from _classes(n)


def enumerate_up_to(max_n: int, min_n: int = 0, max_vertices: int = 8,
                    source: Optional[Iterable[Graph]] = None) -> Iterator[Graph]:
    """Classes for every n in min_n..max_n, or the graphs of an external stream."""
    if source is not None:
        for graph in source:
            if min_n <= graph.n <= max_n:
                yield graph
        return
    for n in range(min_n, max_n + 1):
        yield from enumerate_graphs(n, max_vertices)


def random_graph(n: int, density: float, rng: random.Random) -> Graph:
    """Erdős–Rényi G(n, p) drawn from a caller-owned seeded generator."""
    adj = [0] * n
    for j in range(1, n):
        for i in range(j):
            if rng.random() < density:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(n, tuple(adj))


def random_relabeling(graph: Graph, rng: random.Random) -> Graph:
    perm = list(range(graph.n))
    rng.shuffle(perm)
    return graph.relabel(perm)


def random_subset(n: int, rng: random.Random) -> int:
    return rng.getrandbits(n) if n else 0
