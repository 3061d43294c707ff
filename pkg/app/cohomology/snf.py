"""
Smith normal form of integer matrices.

Entries are kept as python integers inside ``dtype=object`` numpy arrays so
that no arithmetic ever overflows or rounds.
"""

from typing import List, Sequence, Tuple

import numpy as np


def object_matrix(matrix, shape: Tuple[int, int] | None = None) -> np.ndarray:
    """Copy ``matrix`` into a 2-d object array of python ints."""
    arr = np.array(matrix, dtype=object)
    if arr.size == 0:
        if shape is None:
            shape = arr.shape if arr.ndim == 2 else (0, 0)
        return np.zeros(shape, dtype=object)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {arr.shape}")
    out = np.zeros(arr.shape, dtype=object)
    for i in range(arr.shape[0]):
        for j in range(arr.shape[1]):
            out[i, j] = int(arr[i, j])
    return out


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


class SmithNormalForm:
    """
    Smith normal form ``D = left @ M @ right`` by repeated euclidean steps.

    The inverses of both transforms are maintained alongside them, so that
    coordinates can be moved in both directions without a further inversion.

    Parameters
    ----------
    matrix: array, (m, n)
        integer matrix
    """

    def __init__(self, matrix, shape: Tuple[int, int] | None = None):
        self.matrix = object_matrix(matrix, shape)
        m, n = self.matrix.shape
        self.diagonal_form = self.matrix.copy()
        self.left = identity(m)
        self.left_inverse = identity(m)
        self.right = identity(n)
        self.right_inverse = identity(n)
        self._reduce()

    @property
    def num_rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def num_columns(self) -> int:
        return self.matrix.shape[1]

    @property
    def diagonal(self) -> List[int]:
        k = min(self.num_rows, self.num_columns)
        return [int(self.diagonal_form[i, i]) for i in range(k)]

    @property
    def invariant_factors(self) -> List[int]:
        return [d for d in self.diagonal if d != 0]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def _reduce(self):
        A = self.diagonal_form
        m, n = A.shape
        s = 0
        while s < min(m, n):
            pivot = self._smallest_nonzero(s)
            if pivot is None:
                break
            self._swap_rows(s, pivot[0])
            self._swap_columns(s, pivot[1])

            clean = True
            for i in range(s + 1, m):
                if A[i, s] != 0:
                    self._add_row(i, s, -(A[i, s] // A[s, s]))
                    clean = clean and A[i, s] == 0
            for j in range(s + 1, n):
                if A[s, j] != 0:
                    self._add_column(j, s, -(A[s, j] // A[s, s]))
                    clean = clean and A[s, j] == 0
            if not clean:
                continue

            # the pivot must divide everything left in the lower block
            row = self._non_divisible_row(s)
            if row is not None:
                self._add_row(s, row, 1)
                continue
            if A[s, s] < 0:
                self._negate_row(s)
            s += 1

    def _smallest_nonzero(self, s: int):
        A = self.diagonal_form
        best, best_value = None, None
        for i in range(s, A.shape[0]):
            for j in range(s, A.shape[1]):
                value = A[i, j]
                if value != 0 and (best_value is None or abs(value) < best_value):
                    best, best_value = (i, j), abs(value)
        return best

    def _non_divisible_row(self, s: int):
        A = self.diagonal_form
        pivot = A[s, s]
        for i in range(s + 1, A.shape[0]):
            for j in range(s + 1, A.shape[1]):
                if A[i, j] % pivot != 0:
                    return i
        return None

    def _swap_rows(self, i: int, j: int):
        if i == j:
            return
        self.diagonal_form[[i, j]] = self.diagonal_form[[j, i]]
        self.left[[i, j]] = self.left[[j, i]]
        self.left_inverse[:, [i, j]] = self.left_inverse[:, [j, i]]

    def _swap_columns(self, i: int, j: int):
        if i == j:
            return
        self.diagonal_form[:, [i, j]] = self.diagonal_form[:, [j, i]]
        self.right[:, [i, j]] = self.right[:, [j, i]]
        self.right_inverse[[i, j]] = self.right_inverse[[j, i]]

    def _add_row(self, target: int, source: int, k: int):
        """row[target] += k * row[source]"""
        self.diagonal_form[target] += self.diagonal_form[source] * k
        self.left[target] += self.left[source] * k
        self.left_inverse[:, source] -= self.left_inverse[:, target] * k

    def _add_column(self, target: int, source: int, k: int):
        """column[target] += k * column[source]"""
        self.diagonal_form[:, target] += self.diagonal_form[:, source] * k
        self.right[:, target] += self.right[:, source] * k
        self.right_inverse[source] -= self.right_inverse[target] * k

    def _negate_row(self, i: int):
        self.diagonal_form[i] *= -1
        self.left[i] *= -1
        self.left_inverse[:, i] *= -1


def smith_normal_form(matrix) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(D, U, V)`` with ``U @ matrix @ V == D`` and U, V unimodular."""
    snf = SmithNormalForm(matrix)
    return snf.diagonal_form, snf.left, snf.right


def kernel_basis(matrix, shape: Tuple[int, int] | None = None) -> np.ndarray:
    """Columns spanning the integer kernel of ``matrix``."""
    snf = SmithNormalForm(matrix, shape)
    return snf.right[:, snf.rank:]


def integer_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    rows = [[int(x) for x in row] for row in matrix]
    n = len(rows)
    if n == 0:
        return 1
    sign, previous = 1, 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // previous
        previous = rows[k][k]
    return sign * rows[n - 1][n - 1]
