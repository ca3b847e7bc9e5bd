"""Exact linear algebra over the rationals."""
from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction


class SingularMatrixError(ArithmeticError):
    pass


def fraction_free_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by Bareiss elimination (no fractions appear)."""
    m = [list(map(int, r)) for r in rows]
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, n_rows):
            f = m[r][col]
            for c in range(col + 1, n_cols):
                # exact division is guaranteed by Sylvester's identity
                m[r][c] = (p * m[r][c] - f * m[rank][c]) // prev
            m[r][col] = 0
        prev = p
        rank += 1
        if rank == n_rows:
            break
    return rank


class EchelonBasis:
    """Incrementally grown row-reduced basis of a subspace of Q^n."""

    def __init__(self, dimension: int):
        self.dimension = dimension
        self._rows: dict[int, list[Fraction]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vector: Sequence) -> list[Fraction]:
        v = [Fraction(x) for x in vector]
        for pivot, row in self._rows.items():
            f = v[pivot]
            if f:
                for c in range(self.dimension):
                    if row[c]:
                        v[c] -= f * row[c]
        return v

    def contains(self, vector: Sequence) -> bool:
        return not any(self.reduce(vector))

    def add(self, vector: Sequence) -> bool:
        """Add ``vector`` to the span; False when it was already inside."""
        v = self.reduce(vector)
        pivot = next((c for c, x in enumerate(v) if x), None)
        if pivot is None:
            return False
        inv = 1 / v[pivot]
        v = [x * inv for x in v]
        # keep the basis fully reduced so reduce() needs one pass
        for row in self._rows.values():
            f = row[pivot]
            if f:
                for c in range(self.dimension):
                    if v[c]:
                        row[c] -= f * v[c]
        self._rows[pivot] = v
        return True


def invert(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse of a square rational matrix."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError(f"matrix is singular at column {col}")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            f = aug[r][col]
            if r != col and f:
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]
