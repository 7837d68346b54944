"""Formal sums of graphs and exact checkers for the identities phi satisfies.

A dashed pair in a drawing stands for (graph with the edge) - (graph without
it); several dashed pairs expand multiplicatively. Relation sides are built by
attaching a few explicit vertices to a host graph with prescribed host
neighbourhoods, resolving dashed pairs among them, and evaluating linearly.
Attachment sets may overlap; each explicit vertex has exactly the given host
neighbourhood and no other adjacency beyond the drawn pairs.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from src.canonical import canonical_form
from src.config import GuardsConfig
from src.dyadic import ONE_HALF, ONE_QUARTER, THREE_EIGHTHS, ZERO, Dyadic
from src.errors import InvalidVertexError
from src.graph import Edge, Graph, VertexSet, attach
from src.graph6 import to_graph6
from src.invariants import DEFAULT_GUARDS, phi_eulerian

logger = logging.getLogger(__name__)

Coefficient = Union[Dyadic, int]
GraphEvaluator = Callable[..., Dyadic]


@dataclass
class FormalSum:
    """Integer/dyadic-weighted combination of graphs; evaluation is linear."""
    terms: List[Tuple[Dyadic, Graph]] = field(default_factory=list)

    @classmethod
    def of(cls, graph: Graph, coefficient: Coefficient = 1) -> "FormalSum":
        return cls([(Dyadic._coerce(coefficient), graph)])

    def __add__(self, other: "FormalSum") -> "FormalSum":
        return FormalSum(self.terms + other.terms)

    def __neg__(self) -> "FormalSum":
        return FormalSum([(-c, g) for c, g in self.terms])

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def scale(self, coefficient: Coefficient) -> "FormalSum":
        c = Dyadic._coerce(coefficient)
        return FormalSum([(c * k, g) for k, g in self.terms])

    __rmul__ = scale

    def __len__(self) -> int:
        return len(self.terms)

    def canonicalize(self) -> "FormalSum":
        """Merge isomorphic terms and drop zero coefficients."""
        merged: Dict[str, Tuple[Dyadic, Graph]] = {}
        for coefficient, graph in self.terms:
            canon = canonical_form(graph)
            key = f"{canon.n}:{to_graph6(canon)}"
            previous = merged.get(key, (ZERO, canon))[0]
            merged[key] = (previous + coefficient, canon)
        return FormalSum([merged[k] for k in sorted(merged) if merged[k][0]])

    def is_zero(self) -> bool:
        return not self.canonicalize().terms

    def evaluate(self, evaluator: GraphEvaluator = phi_eulerian,
                 guards: GuardsConfig = DEFAULT_GUARDS) -> Dyadic:
        return eval_sum(self, evaluator, guards)


def _normalize_pairs(graph: Graph, dashed: Iterable[Edge]) -> List[Edge]:
    pairs: List[Edge] = []
    for u, v in dashed:
        if u == v:
            raise InvalidVertexError(f"dashed pair needs two distinct vertices, got ({u}, {v})")
        graph._check_vertex(u)
        graph._check_vertex(v)
        pair = (min(u, v), max(u, v))
        if pair not in pairs:
            pairs.append(pair)
    return pairs


def expand_dashed(graph: Graph, dashed: Iterable[Edge]) -> FormalSum:
    """2^k terms, one per present/absent resolution, signed (-1)^{#absent}."""
    pairs = _normalize_pairs(graph, dashed)
    k = len(pairs)
    terms = []
    for mask in range(1 << k):
        g = graph
        absent = 0
        for i, (u, v) in enumerate(pairs):
            present = bool((mask >> i) & 1)
            g = g.set_edge(u, v, present)
            absent += not present
        terms.append((Dyadic(-1 if absent % 2 else 1), g))
    return FormalSum(terms)


def expand_dashed_sum(total: FormalSum, dashed: Iterable[Edge]) -> FormalSum:
    """Apply expand_dashed to every term of a formal sum."""
    dashed = list(dashed)
    out = FormalSum()
    for coefficient, graph in total.terms:
        out = out + expand_dashed(graph, dashed).scale(coefficient)
    return out


def eval_sum(total: FormalSum, evaluator: GraphEvaluator = phi_eulerian,
             guards: GuardsConfig = DEFAULT_GUARDS) -> Dyadic:
    value = ZERO
    for coefficient, graph in total.terms:
        value = value + coefficient * evaluator(graph, guards=guards)
    return value


# ----------------------------------------------------------------------
# Relation sides
# ----------------------------------------------------------------------
def _explicit(host: Graph, neighborhoods: Sequence[VertexSet],
              solid: Sequence[Edge] = (), dashed: Sequence[Edge] = ()) -> FormalSum:
    """Host plus explicit vertices; pairs are indices among the explicit vertices."""
    g = attach(host, neighborhoods)
    base = host.n
    for i, j in solid:
        g = g.add_edge(base + i, base + j)
    return expand_dashed(g, [(base + i, base + j) for i, j in dashed])


Sides = Tuple[FormalSum, FormalSum]


def four_t_sides(graph: Graph, u: int, v: int) -> Sides:
    """G with uv dashed on the left, the pivoted graph with uv dashed on the right."""
    graph._check_pair(u, v)
    return expand_dashed(graph, [(u, v)]), expand_dashed(graph.pivot(u, v), [(u, v)])


def triangle_sides(host: Graph, x: VertexSet, y: VertexSet, z: VertexSet) -> Sides:
    lhs = _explicit(host, [x, y, z], dashed=[(0, 1), (0, 2), (1, 2)])
    rhs = _explicit(host, [x ^ y, y ^ z], dashed=[(0, 1)]).scale(ONE_HALF)
    return lhs, rhs


def six_t_sides(host: Graph, x: VertexSet, y: VertexSet, z: VertexSet, variant: int) -> Sides:
    """Both graph 6T relations.

    Left: v1~x, v2~y, v3~z with v1v2 and v2v3 dashed; v1v3 absent (variant 1)
    or present (variant 2). Right: 1/2 [u1~y, u2~x^y^z] minus 1/2 [u1~x^y,
    u2~y^z] with u1u2 present (variant 1) or absent (variant 2).
    """
    if variant not in (1, 2):
        raise ValueError(f"6T variant must be 1 or 2, got {variant}")
    lhs = _explicit(host, [x, y, z], solid=[(0, 2)] if variant == 2 else [],
                    dashed=[(0, 1), (1, 2)])
    first = _explicit(host, [y, x ^ y ^ z])
    second = _explicit(host, [x ^ y, y ^ z], solid=[(0, 1)] if variant == 1 else [])
    return lhs, first.scale(ONE_HALF) - second.scale(ONE_HALF)


def delcont_var_sides(host: Graph, u_set: VertexSet, v_set: VertexSet, w_set: VertexSet) -> Sides:
    """v1~u, v2~v joined by an edge, m~w with m-v1 and m-v2 dashed."""
    lhs = _explicit(host, [u_set, v_set, w_set], solid=[(0, 1)], dashed=[(2, 0), (2, 1)])
    deleted = _explicit(host, [u_set, v_set, w_set], dashed=[(2, 0), (2, 1)])
    contracted = _explicit(host, [w_set, u_set ^ v_set], dashed=[(0, 1)])
    return lhs, -deleted - contracted.scale(ONE_HALF)


# ----------------------------------------------------------------------
# Checkers
# ----------------------------------------------------------------------
@dataclass
class Verdict:
    """Exact comparison of two evaluated sides."""
    holds: bool
    lhs: Dyadic
    rhs: Dyadic

    def __bool__(self) -> bool:
        return self.holds

    def as_dict(self) -> dict:
        return {"lhs": str(self.lhs), "rhs": str(self.rhs)}


def _compare(sides: Sides, evaluator: GraphEvaluator, guards: GuardsConfig) -> Verdict:
    lhs = eval_sum(sides[0], evaluator, guards)
    rhs = eval_sum(sides[1], evaluator, guards)
    return Verdict(lhs == rhs, lhs, rhs)


def check_delcont(graph: Graph, u: int, v: int, evaluator: GraphEvaluator = phi_eulerian,
                  guards: GuardsConfig = DEFAULT_GUARDS) -> Verdict:
    """phi(G) + phi(G - uv) - 1/4 phi(G / uv) = 0 for an edge uv."""
    if not graph.has_edge(u, v):
        raise InvalidVertexError(f"({u}, {v}) is not an edge")
    lhs = evaluator(graph, guards=guards)
    rhs = -evaluator(graph.delete_edge(u, v), guards=guards) \
        + ONE_QUARTER * evaluator(graph.contract_sd(u, v), guards=guards)
    return Verdict(lhs == rhs, lhs, rhs)


def check_4t(graph: Graph, u: int, v: int, evaluator: GraphEvaluator = phi_eulerian,
             guards: GuardsConfig = DEFAULT_GUARDS) -> Verdict:
    return _compare(four_t_sides(graph, u, v), evaluator, guards)


def check_triangle(host: Graph, x: VertexSet, y: VertexSet, z: VertexSet,
                   evaluator: GraphEvaluator = phi_eulerian,
                   guards: GuardsConfig = DEFAULT_GUARDS) -> Verdict:
    return _compare(triangle_sides(host, x, y, z), evaluator, guards)


def check_6t(host: Graph, x: VertexSet, y: VertexSet, z: VertexSet, variant: int,
             evaluator: GraphEvaluator = phi_eulerian,
             guards: GuardsConfig = DEFAULT_GUARDS) -> Verdict:
    return _compare(six_t_sides(host, x, y, z, variant), evaluator, guards)


def check_delcont_var(host: Graph, u_set: VertexSet, v_set: VertexSet, w_set: VertexSet,
                      evaluator: GraphEvaluator = phi_eulerian,
                      guards: GuardsConfig = DEFAULT_GUARDS) -> Verdict:
    return _compare(delcont_var_sides(host, u_set, v_set, w_set), evaluator, guards)


def check_leaf_deletion(graph: Graph, leaf: Optional[int] = None,
                        evaluator: GraphEvaluator = phi_eulerian,
                        guards: GuardsConfig = DEFAULT_GUARDS) -> Verdict:
    """phi(G) = (3/8 - 1/2) phi(G - leaf)."""
    leaves = graph.leaves()
    if leaf is None:
        if not leaves:
            raise InvalidVertexError("graph has no leaf")
        leaf = leaves[0]
    elif leaf not in leaves:
        raise InvalidVertexError(f"vertex {leaf} is not a leaf")
    lhs = evaluator(graph, guards=guards)
    rhs = (THREE_EIGHTHS - ONE_HALF) * evaluator(graph.remove_vertices(1 << leaf), guards=guards)
    return Verdict(lhs == rhs, lhs, rhs)


def check_multiplicativity(g1: Graph, g2: Graph, evaluator: GraphEvaluator = phi_eulerian,
                           guards: GuardsConfig = DEFAULT_GUARDS) -> Verdict:
    lhs = evaluator(g1.disjoint_union(g2), guards=guards)
    rhs = evaluator(g1, guards=guards) * evaluator(g2, guards=guards)
    return Verdict(lhs == rhs, lhs, rhs)


def symbolic_cancellation(host: Graph, x: VertexSet, y: VertexSet, z: VertexSet) -> bool:
    """(6T2 L - R) - (6T1 L - R) - (triangle L - R) cancels term by term."""
    l2, r2 = six_t_sides(host, x, y, z, 2)
    l1, r1 = six_t_sides(host, x, y, z, 1)
    lt, rt = triangle_sides(host, x, y, z)
    return ((l2 - r2) - (l1 - r1) - (lt - rt)).is_zero()
