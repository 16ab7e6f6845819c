"""Linear algebra over a prime field F_q with numpy integer matrices."""

from __future__ import annotations

import logging
from itertools import combinations, product
from typing import Iterator

import numpy as np
from sympy import isprime

logger = logging.getLogger(__name__)


class PrimeField:
    """The field F_q for a prime q; matrices are int64 arrays reduced mod q."""

    def __init__(self, q: int):
        if not isinstance(q, int) or isinstance(q, bool):
            raise TypeError("q must be an integer")
        if not isprime(q):
            raise ValueError(f"q must be prime, got {q}")
        self.q = q
        self._inverse = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self._inverse[a] = pow(a, q - 2, q)

    def __repr__(self) -> str:
        return f"PrimeField({self.q})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(self.q)

    def reduce(self, matrix) -> np.ndarray:
        return np.asarray(matrix, dtype=np.int64) % self.q

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % self.q

    def rref(self, matrix) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form (non-zero rows only) and pivot columns."""
        work = self.reduce(matrix).copy()
        if work.ndim != 2:
            raise ValueError("rref expects a two-dimensional matrix")
        rows, cols = work.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            candidates = np.nonzero(work[r:, c])[0]
            if candidates.size == 0:
                continue
            pivot_row = r + int(candidates[0])
            if pivot_row != r:
                work[[r, pivot_row]] = work[[pivot_row, r]]
            work[r] = (work[r] * self._inverse[work[r, c]]) % self.q
            for other in range(rows):
                if other != r and work[other, c]:
                    work[other] = (work[other] - work[other, c] * work[r]) % self.q
            pivots.append(c)
            r += 1
        return work[:r], pivots

    def rank(self, matrix) -> int:
        matrix = np.asarray(matrix)
        if matrix.size == 0:
            return 0
        return len(self.rref(matrix)[1])

    def nullspace(self, matrix, n_cols: int) -> np.ndarray:
        """Basis (as rows) of {v : M v = 0} in F_q^{n_cols}."""
        if n_cols == 0:
            return np.zeros((0, 0), dtype=np.int64)
        matrix = np.asarray(matrix, dtype=np.int64).reshape(-1, n_cols)
        if matrix.shape[0] == 0:
            return np.eye(n_cols, dtype=np.int64)
        reduced, pivots = self.rref(matrix)
        free = [c for c in range(n_cols) if c not in pivots]
        basis = np.zeros((len(free), n_cols), dtype=np.int64)
        for k, f in enumerate(free):
            basis[k, f] = 1
            for row, pc in enumerate(pivots):
                basis[k, pc] = (-reduced[row, f]) % self.q
        return basis

    def is_invertible(self, matrix) -> bool:
        matrix = np.asarray(matrix)
        rows, cols = matrix.shape
        return rows == cols and self.rank(matrix) == rows

    def subspaces(self, n: int) -> Iterator[np.ndarray]:
        """Every subspace of F_q^n once, as its reduced row echelon basis."""
        for k in range(n + 1):
            for pivots in combinations(range(n), k):
                slots = [
                    (row, col)
                    for row, pc in enumerate(pivots)
                    for col in range(pc + 1, n)
                    if col not in pivots
                ]
                for values in product(range(self.q), repeat=len(slots)):
                    basis = np.zeros((k, n), dtype=np.int64)
                    for row, pc in enumerate(pivots):
                        basis[row, pc] = 1
                    for (row, col), value in zip(slots, values):
                        basis[row, col] = value
                    yield basis

    def reduce_modulo(self, vectors: np.ndarray, basis: np.ndarray, pivots: list[int]) -> np.ndarray:
        """Representatives of ``vectors`` (rows) modulo the row space of an rref ``basis``."""
        result = self.reduce(vectors).copy()
        for row, pc in enumerate(pivots):
            result = (result - np.outer(result[:, pc], basis[row])) % self.q
        return result
