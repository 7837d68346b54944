"""Labeled simple graphs with bitset adjacency rows.

Vertices are 0..n-1 and adj[v] is the neighbour set of v as an int bitset.
Vertex sets (VertexSet) are plain int masks over the same indices; edge sets
are iterables of (u, v) pairs. Graphs are immutable: every surgery returns a
new Graph.
"""
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple

from src.errors import InvalidVertexError

MAX_VERTICES = 32

VertexSet = int
Edge = Tuple[int, int]


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> VertexSet:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _compress(mask: int, position: dict) -> int:
    out = 0
    for v in iter_bits(mask):
        p = position.get(v)
        if p is not None:
            out |= 1 << p
    return out


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on at most 32 vertices."""
    n: int
    adj: Tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise InvalidVertexError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise InvalidVertexError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise InvalidVertexError(f"row {v} has neighbours outside 0..{self.n - 1}")
            if (row >> v) & 1:
                raise InvalidVertexError(f"loop at vertex {v}")
            for w in iter_bits(row):
                if not (self.adj[w] >> v) & 1:
                    raise InvalidVertexError(f"asymmetric adjacency between {v} and {w}")

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------
    @property
    def vertex_mask(self) -> VertexSet:
        return (1 << self.n) - 1

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.adj[v].bit_count()

    def degrees(self) -> List[int]:
        return [row.bit_count() for row in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool((self.adj[u] >> v) & 1)

    def edges(self) -> List[Edge]:
        """Edges (u, v) with u < v, sorted."""
        out = []
        for u, row in enumerate(self.adj):
            for v in iter_bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def leaves(self) -> List[int]:
        return [v for v, row in enumerate(self.adj) if row.bit_count() == 1]

    def isolated(self) -> List[int]:
        return [v for v, row in enumerate(self.adj) if row == 0]

    def is_eulerian(self) -> bool:
        """Every degree even; connectivity is not required."""
        return all(row.bit_count() % 2 == 0 for row in self.adj)

    def cut_size(self, U: VertexSet) -> int:
        """Number of edges with exactly one endpoint in U."""
        self._check_subset(U)
        outside = self.vertex_mask & ~U
        return sum((self.adj[v] & outside).bit_count() for v in iter_bits(U))

    def components(self) -> List[VertexSet]:
        """Connected components as vertex masks, ordered by smallest vertex."""
        remaining = self.vertex_mask
        out = []
        while remaining:
            seed = remaining & -remaining
            comp = seed
            frontier = seed
            while frontier:
                reach = 0
                for v in iter_bits(frontier):
                    reach |= self.adj[v]
                frontier = reach & ~comp
                comp |= frontier
            out.append(comp)
            remaining &= ~comp
        return out

    def component_count(self) -> int:
        return len(self.components())

    # ------------------------------------------------------------------
    # Surgery
    # ------------------------------------------------------------------
    def add_edge(self, u: int, v: int) -> "Graph":
        self._check_pair(u, v)
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, tuple(adj))

    def delete_edge(self, u: int, v: int) -> "Graph":
        self._check_pair(u, v)
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, tuple(adj))

    def set_edge(self, u: int, v: int, present: bool) -> "Graph":
        return self.add_edge(u, v) if present else self.delete_edge(u, v)

    def induced_subgraph(self, U: VertexSet) -> "Graph":
        """G|_U with vertices relabeled 0..|U|-1 in increasing order."""
        self._check_subset(U)
        kept = list(iter_bits(U))
        position = {v: i for i, v in enumerate(kept)}
        return Graph(len(kept), tuple(_compress(self.adj[v] & U, position) for v in kept))

    def remove_vertices(self, U: VertexSet) -> "Graph":
        return self.induced_subgraph(self.vertex_mask & ~U)

    def spanning_subgraph(self, edges: Iterable[Edge]) -> "Graph":
        """Same vertex set, edge set exactly `edges` (each must be an edge of G)."""
        adj = [0] * self.n
        for u, v in edges:
            if not self.has_edge(u, v):
                raise InvalidVertexError(f"({u}, {v}) is not an edge of the graph")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(self.n, tuple(adj))

    def pivot(self, u: int, v: int) -> "Graph":
        """Replace N(u) minus v by (N(u) xor N(v)) minus {u, v}.

        N(v) and the u-v adjacency are unchanged; so is every edge not at u.
        """
        self._check_pair(u, v)
        uv = 1 << u | 1 << v
        keep = self.adj[u] & (1 << v)
        new_nu = ((self.adj[u] ^ self.adj[v]) & ~uv) | keep
        adj = list(self.adj)
        old_nu = self.adj[u] & ~uv
        for w in iter_bits(old_nu & ~new_nu):
            adj[w] &= ~(1 << u)
        for w in iter_bits(new_nu & ~old_nu & ~uv):
            adj[w] |= 1 << u
        adj[u] = new_nu
        return Graph(self.n, tuple(adj))

    def contract_sd(self, u: int, v: int) -> "Graph":
        """Delete u and v; append one vertex adjacent to (N(u) xor N(v)) minus {u, v}.

        Defined whether or not uv is an edge. Remaining vertices keep their
        relative order; the new vertex is last.
        """
        self._check_pair(u, v)
        uv = 1 << u | 1 << v
        merged = (self.adj[u] ^ self.adj[v]) & ~uv
        rest = self.remove_vertices(uv)
        kept = [w for w in range(self.n) if not (uv >> w) & 1]
        position = {w: i for i, w in enumerate(kept)}
        return attach(rest, [_compress(merged, position)])

    def disjoint_union(self, other: "Graph") -> "Graph":
        if self.n + other.n > MAX_VERTICES:
            raise InvalidVertexError(
                f"disjoint union would have {self.n + other.n} vertices (cap {MAX_VERTICES})"
            )
        return Graph(self.n + other.n, self.adj + tuple(row << self.n for row in other.adj))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Isomorphic copy in which old vertex i becomes perm[i]."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidVertexError(f"{list(perm)} is not a permutation of 0..{self.n - 1}")
        adj = [0] * self.n
        for v, row in enumerate(self.adj):
            adj[perm[v]] = mask_of(perm[w] for w in iter_bits(row))
        return Graph(self.n, tuple(adj))

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------
    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InvalidVertexError(f"vertex {v} outside 0..{self.n - 1}")

    def _check_pair(self, u: int, v: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise InvalidVertexError(f"operation needs two distinct vertices, got {u} twice")

    def _check_subset(self, U: VertexSet) -> None:
        if U < 0 or U & ~self.vertex_mask:
            raise InvalidVertexError(f"vertex set {bin(U)} is not a subset of 0..{self.n - 1}")

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# ----------------------------------------------------------------------
# Constructors
# ----------------------------------------------------------------------
def from_edges(n: int, edges: Iterable[Edge]) -> Graph:
    adj = [0] * n
    for u, v in edges:
        if u == v:
            raise InvalidVertexError(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidVertexError(f"edge ({u}, {v}) outside 0..{n - 1}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def empty(n: int) -> Graph:
    """The discrete graph N_n."""
    return Graph(n, (0,) * n)


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def path(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidVertexError("a simple cycle needs at least 3 vertices")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(k: int) -> Graph:
    """K_{1,k}: centre 0, leaves 1..k."""
    return from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def attach(host: Graph, neighborhoods: Sequence[VertexSet]) -> Graph:
    """Append new vertices host.n, host.n+1, ... with the given host neighbourhoods.

    The new vertices are pairwise non-adjacent; relation builders add or
    resolve their mutual pairs afterwards.
    """
    n = host.n + len(neighborhoods)
    if n > MAX_VERTICES:
        raise InvalidVertexError(f"attaching would give {n} vertices (cap {MAX_VERTICES})")
    adj = list(host.adj) + [0] * len(neighborhoods)
    for i, nbhd in enumerate(neighborhoods):
        if nbhd < 0 or nbhd & ~host.vertex_mask:
            raise InvalidVertexError(f"neighbourhood {bin(nbhd)} leaves the host")
        new = host.n + i
        adj[new] = nbhd
        for w in iter_bits(nbhd):
            adj[w] |= 1 << new
    return Graph(n, tuple(adj))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    return g1.disjoint_union(g2)
