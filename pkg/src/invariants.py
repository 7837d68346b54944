"""The invariant phi by four independent algorithms, the companion psi, and chi_3.

All evaluators return exact Dyadic values. The exponential ones refuse to run
above their size guards (see GuardsConfig) instead of running for hours.

    phi(G) = 2^{-3n} sum_{E' in E} (-2)^{|E'|} chi_3(G|E')                 direct
           = 2^{-3n} sum_{U: G|U Eulerian} (-1)^{cut(U)} 2^{|U|}            eulerian
           = 2^{-3n} (-1)^{|E|} sum_{E'} (-2)^{|E'|} 3^{c(G|E')}             components
           = -phi(G - uv) + 1/4 phi(G / uv)                                  delcont
    psi(G) = 2^{-2n} sum_U (-1/2)^{n-|U|} 2^{corank A(G|U)}
"""
import logging
import threading
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from src.canonical import canonical_key
from src.config import PHI_EVALUATOR_NAMES, GuardsConfig
from src.dyadic import MINUS_ONE_EIGHTH, ONE, ONE_QUARTER, THREE_EIGHTHS, Dyadic
from src.errors import InvalidVertexError, SizeGuardError
from src.gf2 import corank_of_rows
from src.graph import Edge, Graph, iter_bits

logger = logging.getLogger(__name__)

DEFAULT_GUARDS = GuardsConfig()


# ----------------------------------------------------------------------
# chi_3
# ----------------------------------------------------------------------
def _bfs_order(adj: Sequence[int], component: int) -> List[int]:
    start = max(iter_bits(component), key=lambda v: (adj[v].bit_count(), -v))
    order = [start]
    seen = 1 << start
    i = 0
    while i < len(order):
        v = order[i]
        fresh = sorted(iter_bits(adj[v] & ~seen), key=lambda w: (-adj[w].bit_count(), w))
        for w in fresh:
            seen |= 1 << w
            order.append(w)
        i += 1
    return order


def _count_colorings(adj: Sequence[int], order: List[int], classes: List[int], i: int) -> int:
    if i == len(order):
        return 1
    v = order[i]
    bit = 1 << v
    row = adj[v]
    count = 0
    for c in range(3):
        if not row & classes[c]:
            classes[c] |= bit
            count += _count_colorings(adj, order, classes, i + 1)
            classes[c] ^= bit
    return count


def _components_of(adj: Sequence[int], full: int) -> List[int]:
    remaining = full
    out = []
    while remaining:
        comp = frontier = remaining & -remaining
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= adj[v]
            frontier = reach & ~comp
            comp |= frontier
        out.append(comp)
        remaining &= ~comp
    return out


def _chi3_rows(adj: Sequence[int], n: int) -> int:
    total = 1
    for comp in _components_of(adj, (1 << n) - 1):
        if comp & (comp - 1) == 0:
            total *= 3
            continue
        # The first two BFS vertices are adjacent: fix their colours, count the rest.
        order = _bfs_order(adj, comp)
        classes = [1 << order[0], 1 << order[1], 0]
        total *= 6 * _count_colorings(adj, order, classes, 2)
        if total == 0:
            return 0
    return total


def chi3(graph: Graph) -> int:
    """Number of proper vertex colourings with three colours."""
    return _chi3_rows(graph.adj, graph.n)


def chi3_inclusion_exclusion(graph: Graph) -> int:
    """sum_{E'} (-1)^{|E'|} 3^{c(G|E')}; the 2^|E| test oracle for chi3."""
    edges = graph.edges()
    total = 0
    for mask, adj in _spanning_rows(graph.n, edges):
        c = len(_components_of(adj, (1 << graph.n) - 1))
        total += (-1) ** mask.bit_count() * 3 ** c
    return total


def _spanning_rows(n: int, edges: Sequence[Edge]) -> Iterable[Tuple[int, List[int]]]:
    """(mask, adjacency rows) of every spanning subgraph, masks over `edges`."""
    for mask in range(1 << len(edges)):
        adj = [0] * n
        for k in iter_bits(mask):
            u, v = edges[k]
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        yield mask, adj


# ----------------------------------------------------------------------
# phi, four ways
# ----------------------------------------------------------------------
def phi_direct(graph: Graph, guards: GuardsConfig = DEFAULT_GUARDS) -> Dyadic:
    edges = graph.edges()
    if len(edges) > guards.direct_max_edges:
        raise SizeGuardError("direct", "edges", len(edges), guards.direct_max_edges)
    total = 0
    for mask, adj in _spanning_rows(graph.n, edges):
        total += (-2) ** mask.bit_count() * _chi3_rows(adj, graph.n)
    return Dyadic(total, -3 * graph.n)


def phi_dashed(graph: Graph, dashed: Iterable[Edge],
               guards: GuardsConfig = DEFAULT_GUARDS) -> Dyadic:
    """phi with the edges in `dashed` drawn dashed: only E' containing them count."""
    dashed_set = {tuple(sorted(pair)) for pair in dashed}
    for u, v in dashed_set:
        if not graph.has_edge(u, v):
            raise InvalidVertexError(f"dashed pair ({u}, {v}) is not an edge of the graph")
    free = [e for e in graph.edges() if e not in dashed_set]
    if len(free) > guards.direct_max_edges:
        raise SizeGuardError("direct", "edges", len(free), guards.direct_max_edges)
    base = [0] * graph.n
    for u, v in dashed_set:
        base[u] |= 1 << v
        base[v] |= 1 << u
    total = 0
    for mask, adj in _spanning_rows(graph.n, free):
        rows = [a | b for a, b in zip(adj, base)]
        total += (-2) ** (mask.bit_count() + len(dashed_set)) * _chi3_rows(rows, graph.n)
    return Dyadic(total, -3 * graph.n)


def phi_eulerian(graph: Graph, guards: GuardsConfig = DEFAULT_GUARDS) -> Dyadic:
    n = graph.n
    if n > guards.eulerian_max_vertices:
        raise SizeGuardError("eulerian", "vertices", n, guards.eulerian_max_vertices)
    adj = graph.adj
    total = 0
    for U in range(1 << n):
        cut = 0
        for v in iter_bits(U):
            row = adj[v]
            if (row & U).bit_count() & 1:
                break
            cut += (row & ~U).bit_count()
        else:
            term = 1 << U.bit_count()
            total += -term if cut & 1 else term
    return Dyadic(total, -3 * n)


def phi_components(graph: Graph, guards: GuardsConfig = DEFAULT_GUARDS) -> Dyadic:
    edges = graph.edges()
    if len(edges) > guards.components_max_edges:
        raise SizeGuardError("components", "edges", len(edges), guards.components_max_edges)
    full = (1 << graph.n) - 1
    total = 0
    for mask, adj in _spanning_rows(graph.n, edges):
        total += (-2) ** mask.bit_count() * 3 ** len(_components_of(adj, full))
    if len(edges) % 2:
        total = -total
    return Dyadic(total, -3 * graph.n)


class EvalCache:
    """Canonical graph6 key -> phi value; entries never change once written.

    With max_entries set, the oldest entries are evicted first. The default
    cache is unbounded: each worker process owns one and it lives only as long
    as a sweep.
    """

    def __init__(self, max_entries: Optional[int] = None):
        if max_entries is not None and max_entries < 1:
            raise ValueError(f"max_entries must be positive, got {max_entries}")
        self.max_entries = max_entries
        self._values: Dict[str, Dyadic] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: str) -> Optional[Dyadic]:
        with self._lock:
            value = self._values.get(key)
            if value is None:
                self.misses += 1
            else:
                self.hits += 1
            return value

    def put(self, key: str, value: Dyadic) -> Dyadic:
        with self._lock:
            if key in self._values:
                return self._values[key]
            if self.max_entries is not None and len(self._values) >= self.max_entries:
                # dicts keep insertion order
                del self._values[next(iter(self._values))]
            self._values[key] = value
            return value

    def __len__(self) -> int:
        return len(self._values)

    def __contains__(self, key: str) -> bool:
        return key in self._values

    def clear(self) -> None:
        with self._lock:
            self._values.clear()
            self.hits = self.misses = 0


DEFAULT_CACHE = EvalCache()


def _strip_fringe(graph: Graph) -> Tuple[Graph, Dyadic]:
    """Remove isolated vertices (x 3/8) and leaves (x -1/8) until none remain."""
    factor = ONE
    while graph.n:
        isolated = graph.isolated()
        if isolated:
            factor = factor * THREE_EIGHTHS ** len(isolated)
            graph = graph.remove_vertices(sum(1 << v for v in isolated))
            continue
        leaves = graph.leaves()
        if not leaves:
            break
        factor = factor * MINUS_ONE_EIGHTH
        graph = graph.remove_vertices(1 << leaves[0])
    return graph, factor


def _pick_edge(graph: Graph) -> Edge:
    degrees = graph.degrees()
    return max(graph.edges(), key=lambda e: (degrees[e[0]] + degrees[e[1]], -e[0], -e[1]))


def _delcont(graph: Graph, cache: EvalCache) -> Dyadic:
    graph, factor = _strip_fringe(graph)
    if graph.n == 0:
        return factor
    components = graph.components()
    if len(components) > 1:
        value = factor
        for comp in components:
            value = value * _delcont(graph.induced_subgraph(comp), cache)
        return value
    key = canonical_key(graph)
    value = cache.get(key)
    if value is None:
        u, v = _pick_edge(graph)
        value = -_delcont(graph.delete_edge(u, v), cache) \
            + ONE_QUARTER * _delcont(graph.contract_sd(u, v), cache)
        value = cache.put(key, value)
    return factor * value


def phi_delcont(graph: Graph, cache: Optional[EvalCache] = None,
                guards: GuardsConfig = DEFAULT_GUARDS) -> Dyadic:
    """phi by memoized deletion-contraction with leaf and isolated-vertex stripping.

    The guard applies to the core left after stripping, so trees and forests of
    any size up to the Graph cap are accepted.
    """
    core, factor = _strip_fringe(graph)
    if core.n > guards.delcont_max_core_vertices:
        raise SizeGuardError("delcont", "core_vertices", core.n, guards.delcont_max_core_vertices)
    if core.n == 0:
        return factor
    return factor * _delcont(core, DEFAULT_CACHE if cache is None else cache)


# ----------------------------------------------------------------------
# psi
# ----------------------------------------------------------------------
def psi(graph: Graph, guards: GuardsConfig = DEFAULT_GUARDS) -> Dyadic:
    n = graph.n
    if n > guards.psi_max_vertices:
        raise SizeGuardError("psi", "vertices", n, guards.psi_max_vertices)
    adj = graph.adj
    total = 0
    for U in range(1 << n):
        k = U.bit_count()
        corank = corank_of_rows([adj[v] & U for v in iter_bits(U)], k)
        term = 1 << (corank + k)
        total += -term if (n - k) & 1 else term
    return Dyadic(total, -3 * n)


# ----------------------------------------------------------------------
# Registry and bound
# ----------------------------------------------------------------------
Evaluator = Callable[..., Dyadic]

EVALUATORS: Dict[str, Evaluator] = {
    "direct": phi_direct,
    "eulerian": phi_eulerian,
    "components": phi_components,
    "delcont": phi_delcont,
    "psi": psi,
}

PHI_EVALUATORS = PHI_EVALUATOR_NAMES


def evaluate(graph: Graph, name: str = "eulerian",
             guards: GuardsConfig = DEFAULT_GUARDS) -> Dyadic:
    try:
        evaluator = EVALUATORS[name]
    except KeyError:
        raise ValueError(f"unknown evaluator {name!r}; choose from {sorted(EVALUATORS)}")
    return evaluator(graph, guards=guards)


def is_discrete(graph: Graph) -> bool:
    """True for N_n, the graphs on which the extremal bound is attained."""
    return graph.edge_count == 0


def bound_for(n: int) -> Dyadic:
    """(3/8)^n, attained exactly on the discrete graph N_n."""
    return THREE_EIGHTHS ** n


@dataclass
class BoundReport:
    """Outcome of the extremal-bound check on one graph."""
    value: Dyadic
    bound: Dyadic
    nonzero: bool
    within_bound: bool
    tight: bool

    @property
    def ok(self) -> bool:
        return self.nonzero and self.within_bound


def check_bound(graph: Graph, guards: GuardsConfig = DEFAULT_GUARDS) -> BoundReport:
    """phi(G) != 0 and |phi(G)| <= (3/8)^n; a violation is reported, not raised."""
    value = phi_eulerian(graph, guards)
    bound = bound_for(graph.n)
    report = BoundReport(
        value=value,
        bound=bound,
        nonzero=bool(value),
        within_bound=abs(value) <= bound,
        tight=abs(value) == bound,
    )
    if not report.ok:
        logger.warning("extremal bound violated: n=%d phi=%s bound=%s", graph.n, value, bound)
    return report
