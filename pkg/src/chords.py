"""Chord diagrams and the sl(2) weight system at c = 3/8.

A diagram of order n is a fixed-point-free involution `pairing` on the points
0..2n-1 of an oriented circle. Diagrams are considered up to rotation only;
reflections are not quotiented.

The weight-system value is computed with the 2-dimensional representation of
sl(2): every chord carries a basis element X at one endpoint and its dual X'
(with respect to the Killing form) at the other, and the trace of the matrix
product around the circle is summed over all assignments. The Casimir acts by
3/8 on this representation, so w(D) = trace / 2.
"""
import logging
import string
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.config import GuardsConfig
from src.dyadic import Dyadic
from src.errors import InvalidChordError, SizeGuardError
from src.graph import Graph, from_edges

logger = logging.getLogger(__name__)

DEFAULT_GUARDS = GuardsConfig()
_LETTERS = string.ascii_lowercase


@dataclass(frozen=True)
class ChordDiagram:
    """Perfect matching on 2n circularly ordered points."""
    pairing: Tuple[int, ...]

    def __post_init__(self):
        m = len(self.pairing)
        if m % 2:
            raise InvalidChordError(f"odd number of points: {m}")
        for i, j in enumerate(self.pairing):
            if not 0 <= j < m or j == i or self.pairing[j] != i:
                raise InvalidChordError(f"pairing {self.pairing} is not a fixed-point-free involution")

    # ------------------------------------------------------------------
    # Construction and encodings
    # ------------------------------------------------------------------
    @classmethod
    def from_chords(cls, chords: Sequence[Tuple[int, int]]) -> "ChordDiagram":
        pairing = [-1] * (2 * len(chords))
        for a, b in chords:
            if not (0 <= a < len(pairing) and 0 <= b < len(pairing)) or pairing[a] != -1 or pairing[b] != -1:
                raise InvalidChordError(f"chords {list(chords)} do not form a perfect matching")
            pairing[a], pairing[b] = b, a
        return cls(tuple(pairing))

    @classmethod
    def from_pairing(cls, pairing: Sequence[int]) -> "ChordDiagram":
        return cls(tuple(pairing))

    @classmethod
    def from_word(cls, text: str) -> "ChordDiagram":
        """Parse a double-occurrence word such as "abab" (crossing pair)."""
        word = text.strip()
        positions: Dict[str, List[int]] = {}
        for i, ch in enumerate(word):
            positions.setdefault(ch, []).append(i)
        bad = sorted(ch for ch, pos in positions.items() if len(pos) != 2)
        if bad:
            raise InvalidChordError(f"letters {bad} do not occur exactly twice in {text!r}")
        return cls.from_chords([tuple(pos) for pos in positions.values()])

    @classmethod
    def empty(cls) -> "ChordDiagram":
        return cls(())

    @property
    def order(self) -> int:
        return len(self.pairing) // 2

    @property
    def word(self) -> Tuple[int, ...]:
        """Chord labels around the circle, numbered by first occurrence."""
        labels: Dict[int, int] = {}
        out = []
        for i, j in enumerate(self.pairing):
            key = min(i, j)
            if key not in labels:
                labels[key] = len(labels)
            out.append(labels[key])
        return tuple(out)

    def to_word(self) -> str:
        if self.order > len(_LETTERS):
            raise InvalidChordError(f"{self.order} chords exceed the {len(_LETTERS)}-letter encoding")
        return "".join(_LETTERS[c] for c in self.word)

    def chords(self) -> List[Tuple[int, int]]:
        """Endpoint pairs (a, b), a < b, in order of first endpoint (= word label)."""
        return [(i, j) for i, j in enumerate(self.pairing) if i < j]

    def __str__(self) -> str:
        return self.to_word()

    # ------------------------------------------------------------------
    # Surgery
    # ------------------------------------------------------------------
    def rotate(self, k: int) -> "ChordDiagram":
        m = len(self.pairing)
        if m == 0:
            return self
        pairing = [0] * m
        for i, j in enumerate(self.pairing):
            pairing[(i + k) % m] = (j + k) % m
        return ChordDiagram(tuple(pairing))

    def delete_chord(self, chord: int) -> "ChordDiagram":
        self._check_chord(chord)
        a, b = self.chords()[chord]
        kept = [i for i in range(len(self.pairing)) if i not in (a, b)]
        position = {p: i for i, p in enumerate(kept)}
        return ChordDiagram(tuple(position[self.pairing[p]] for p in kept))

    def leaves(self) -> List[int]:
        """Chords that cross exactly one other chord."""
        return intersection_graph(self).leaves()

    def _check_chord(self, chord: int) -> None:
        if not 0 <= chord < self.order:
            raise InvalidChordError(f"chord {chord} outside 0..{self.order - 1}")


def intersection_graph(diagram: ChordDiagram) -> Graph:
    """Vertices are chords (word labels); edges join interlacing chords."""
    chords = diagram.chords()
    edges = []
    for i, (a1, b1) in enumerate(chords):
        for j in range(i + 1, len(chords)):
            a2, b2 = chords[j]
            if a1 < a2 < b1 < b2:
                edges.append((i, j))
    return from_edges(len(chords), edges)


def product(d1: ChordDiagram, d2: ChordDiagram) -> ChordDiagram:
    """Break both circles after their last point and join D1's points then D2's."""
    shift = len(d1.pairing)
    return ChordDiagram(d1.pairing + tuple(j + shift for j in d2.pairing))


def product_at(d1: ChordDiagram, d2: ChordDiagram, break1: int, break2: int) -> ChordDiagram:
    """Product with the circles broken after points break1 and break2."""
    return product(d1.rotate(-(break1 + 1)), d2.rotate(-(break2 + 1)))


def canonical_rotation(diagram: ChordDiagram) -> ChordDiagram:
    """The rotation with the lexicographically smallest word."""
    m = len(diagram.pairing)
    if m == 0:
        return diagram
    best = min(range(m), key=lambda k: diagram.rotate(k).word)
    return diagram.rotate(best)


def _pairings(points: List[int]) -> Iterator[List[Tuple[int, int]]]:
    if not points:
        yield []
        return
    first = points[0]
    for idx in range(1, len(points)):
        rest = points[1:idx] + points[idx + 1:]
        for tail in _pairings(rest):
            yield [(first, points[idx])] + tail


def enumerate_diagrams(n: int, guards: GuardsConfig = DEFAULT_GUARDS) -> Iterator[ChordDiagram]:
    """One representative per rotation class among all (2n-1)!! pairings."""
    if n > guards.diagrams_max_chords:
        raise SizeGuardError("diagrams", "chords", n, guards.diagrams_max_chords)
    seen: Dict[Tuple[int, ...], ChordDiagram] = {}
    for chords in _pairings(list(range(2 * n))):
        canon = canonical_rotation(ChordDiagram.from_chords(chords))
        seen.setdefault(canon.word, canon)
    for key in sorted(seen):
        yield seen[key]


# ----------------------------------------------------------------------
# The 2-dimensional representation
# ----------------------------------------------------------------------
def _as_tuple(matrix: np.ndarray) -> Tuple[int, int, int, int]:
    return tuple(int(x) for x in matrix.flatten())


@dataclass(frozen=True, eq=False)
class Rep2Basis:
    """E, F, H of sl(2) on C^2 with Killing-dual partners and weights.

    Killing form B(x, y) = 4 tr(xy): the dual of E is F/4, of F is E/4, of H
    is H/8. Each entry is (name, X, dual partner X', log2 of the weight).
    """
    E: np.ndarray = field(default_factory=lambda: np.array([[0, 1], [0, 0]], dtype=np.int64))
    F: np.ndarray = field(default_factory=lambda: np.array([[0, 0], [1, 0]], dtype=np.int64))
    H: np.ndarray = field(default_factory=lambda: np.array([[1, 0], [0, -1]], dtype=np.int64))

    def pairs(self) -> List[Tuple[str, np.ndarray, np.ndarray, int]]:
        return [
            ("E", self.E, self.F, -2),
            ("F", self.F, self.E, -2),
            ("H", self.H, self.H, -3),
        ]

    def casimir(self) -> Tuple[Dyadic, Dyadic, Dyadic, Dyadic]:
        """sum_i w_i X_i X_i' as exact entries (row-major)."""
        entries = [Dyadic(0)] * 4
        for _, x, dual, log_weight in self.pairs():
            product_ = _as_tuple(x @ dual)
            entries = [e + Dyadic(p, log_weight) for e, p in zip(entries, product_)]
        return tuple(entries)

    def casimir_check(self) -> bool:
        """The weighted Casimir equals 3/8 times the identity."""
        three_eighths = Dyadic(3, -3)
        return self.casimir() == (three_eighths, Dyadic(0), Dyadic(0), three_eighths)


REP2 = Rep2Basis()


def _matmul(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, int, int, int]:
    return (
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    )


def sl2_trace_oracle(diagram: ChordDiagram, basis: Rep2Basis = REP2,
                     guards: GuardsConfig = DEFAULT_GUARDS) -> Dyadic:
    """Sum over basis assignments to chords of weight x trace around the circle.

    Assignments are explored depth-first along the circle so that prefixes of
    the matrix product are shared; each chord's basis element is chosen at its
    first endpoint and its dual placed at the second.
    """
    n = diagram.order
    if n > guards.oracle_max_chords:
        raise SizeGuardError("oracle", "chords", n, guards.oracle_max_chords)
    word = diagram.word
    pairs = [(_as_tuple(x), _as_tuple(dual), log_w) for _, x, dual, log_w in basis.pairs()]
    floor = min(log_w for _, _, log_w in pairs)
    assignment: List[Optional[int]] = [None] * n
    total = 0

    def walk(i: int, prod: Tuple[int, ...], shift: int) -> None:
        nonlocal total
        if i == len(word):
            total += (prod[0] + prod[3]) << shift
            return
        chord = word[i]
        chosen = assignment[chord]
        if chosen is None:
            for idx, (x, _, log_w) in enumerate(pairs):
                assignment[chord] = idx
                walk(i + 1, _matmul(prod, x), shift + log_w - floor)
            assignment[chord] = None
        else:
            walk(i + 1, _matmul(prod, pairs[chosen][1]), shift)

    walk(0, (1, 0, 0, 1), 0)
    return Dyadic(total, floor * n)


def w_at_c38(diagram: ChordDiagram, basis: Rep2Basis = REP2,
             guards: GuardsConfig = DEFAULT_GUARDS) -> Dyadic:
    """Value of the sl(2) weight system at c = 3/8: half the representation trace."""
    return sl2_trace_oracle(diagram, basis, guards).halve()


# ----------------------------------------------------------------------
# 4T relations
# ----------------------------------------------------------------------
FOUR_T_SIGNS = (1, -1, 1, -1)


def generate_chord_4t(diagram: ChordDiagram, chord: int, endpoint: int,
                      fixed: Optional[int] = None) -> List[Tuple[int, ChordDiagram]]:
    """The signed 4T quadruple for one endpoint of `chord` sliding along the
    chord whose endpoint immediately follows it on the circle.

    Returns [(+1, D1), (-1, D2), (+1, D3), (-1, D4)]: the moving endpoint just
    before / just after the near endpoint of the fixed chord, then just before
    / just after its far endpoint. The signed sum of any weight system vanishes.
    """
    diagram._check_chord(chord)
    if endpoint not in (0, 1):
        raise InvalidChordError(f"endpoint must be 0 or 1, got {endpoint}")
    m = len(diagram.pairing)
    word = diagram.word
    p = diagram.chords()[chord][endpoint]
    q = (p + 1) % m
    if word[q] == chord:
        raise InvalidChordError(f"chord {chord} cannot slide past its own other endpoint")
    if fixed is not None and word[q] != fixed:
        raise InvalidChordError(f"chord {fixed} has no endpoint adjacent to point {p} of chord {chord}")
    q_far = diagram.pairing[q]

    rest = word[:p] + word[p + 1:]

    def index_in_rest(point: int) -> int:
        return point if point < p else point - 1

    near, far = index_in_rest(q), index_in_rest(q_far)
    slots = (near, near + 1, far, far + 1)
    out = []
    for sign, slot in zip(FOUR_T_SIGNS, slots):
        labels = rest[:slot] + (chord,) + rest[slot:]
        out.append((sign, _from_labels(labels)))
    return out


def generate_all_4t(diagram: ChordDiagram) -> Iterator[Tuple[int, int, List[Tuple[int, ChordDiagram]]]]:
    """Every valid (chord, endpoint) 4T quadruple of the diagram."""
    word = diagram.word
    m = len(word)
    for chord, ends in enumerate(diagram.chords()):
        for endpoint, p in enumerate(ends):
            if word[(p + 1) % m] != chord:
                yield chord, endpoint, generate_chord_4t(diagram, chord, endpoint)


def _from_labels(labels: Sequence[int]) -> ChordDiagram:
    positions: Dict[int, List[int]] = {}
    for i, label in enumerate(labels):
        positions.setdefault(label, []).append(i)
    return ChordDiagram.from_chords([tuple(pos) for pos in positions.values()])
