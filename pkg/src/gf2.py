"""Square matrices over GF(2) with rows stored as int bitsets."""
from dataclasses import dataclass
from typing import Tuple

from src.graph import Graph


@dataclass(frozen=True)
class GF2Matrix:
    """Square GF(2) matrix; bit j of rows[i] is entry (i, j)."""
    order: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.order:
            raise ValueError(f"expected {self.order} rows, got {len(self.rows)}")
        limit = 1 << self.order
        for row in self.rows:
            if row < 0 or row >= limit:
                raise ValueError("row has bits outside the matrix")

    @classmethod
    def zeros(cls, order: int) -> "GF2Matrix":
        return cls(order, (0,) * order)

    @classmethod
    def adjacency(cls, graph: Graph) -> "GF2Matrix":
        """A(G): symmetric, zero diagonal."""
        return cls(graph.n, graph.adj)

    def is_symmetric(self) -> bool:
        return all(
            ((self.rows[i] >> j) & 1) == ((self.rows[j] >> i) & 1)
            for i in range(self.order)
            for j in range(i + 1, self.order)
        )

    def permuted(self, perm) -> "GF2Matrix":
        """Simultaneous row/column permutation: new index perm[i] for old i."""
        rows = [0] * self.order
        for i, row in enumerate(self.rows):
            new_row = 0
            while row:
                low = row & -row
                new_row |= 1 << perm[low.bit_length() - 1]
                row ^= low
            rows[perm[i]] = new_row
        return GF2Matrix(self.order, tuple(rows))

    def rank(self) -> int:
        return gf2_rank(list(self.rows))

    def corank(self) -> int:
        return self.order - self.rank()


def gf2_rank(rows) -> int:
    """Rank over GF(2) by elimination on a private copy of the rows.

    Each surviving row is reduced against the pivots found so far, keyed by
    their leading bit, so the loop touches every row once.
    """
    pivots = {}
    rank = 0
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            pivot = pivots.get(lead)
            if pivot is None:
                pivots[lead] = row
                rank += 1
                break
            row ^= pivot
    return rank


def corank(matrix: GF2Matrix) -> int:
    return matrix.corank()


def corank_of_rows(rows, order: int) -> int:
    """Corank without building a GF2Matrix; used in the psi hot loop."""
    return order - gf2_rank(rows)
