from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from app.cohomology.snf import object_matrix


class SparseMatrix:
    """Integer matrix stored row-wise as ``{row: {column: value}}``."""

    def __init__(self, num_rows: int, num_columns: int, rows=None):
        self.num_rows = num_rows
        self.num_columns = num_columns
        self.rows: Dict[int, Dict[int, int]] = rows if rows is not None else {}

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.num_rows, self.num_columns)

    def __repr__(self):
        return f"SparseMatrix({self.num_rows}x{self.num_columns}, nnz={self.nnz})"

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def add(self, i: int, j: int, value: int) -> None:
        if value == 0:
            return
        row = self.rows.setdefault(i, {})
        total = row.get(j, 0) + value
        if total == 0:
            row.pop(j, None)
            if not row:
                del self.rows[i]
        else:
            row[j] = total

    def get(self, i: int, j: int) -> int:
        return self.rows.get(i, {}).get(j, 0)

    def reduced(self, moduli: Sequence[int]) -> "SparseMatrix":
        """Entries reduced modulo the modulus of their row."""
        out = SparseMatrix(self.num_rows, self.num_columns)
        for i, row in self.rows.items():
            for j, value in row.items():
                out.add(i, j, value % moduli[i])
        return out

    def columns(self) -> Dict[int, Dict[int, int]]:
        cols: Dict[int, Dict[int, int]] = {}
        for i, row in self.rows.items():
            for j, value in row.items():
                cols.setdefault(j, {})[i] = value
        return cols

    def apply(self, vector: Sequence[int], moduli: Sequence[int] | None = None) -> List[int]:
        out = [0] * self.num_rows
        for i, row in self.rows.items():
            total = sum(value * vector[j] for j, value in row.items())
            out[i] = total % moduli[i] if moduli is not None else total
        return out

    def compose(self, other: "SparseMatrix") -> "SparseMatrix":
        """The product ``self @ other``."""
        if self.num_columns != other.num_rows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        out = SparseMatrix(self.num_rows, other.num_columns)
        for i, row in self.rows.items():
            for k, a in row.items():
                for j, b in other.rows.get(k, {}).items():
                    out.add(i, j, a * b)
        return out

    def to_dense(self) -> np.ndarray:
        dense = object_matrix([], (self.num_rows, self.num_columns))
        for i, row in self.rows.items():
            for j, value in row.items():
                dense[i, j] = value
        return dense

    def to_triples(self) -> List[List[int]]:
        return [
            [i, j, self.rows[i][j]]
            for i in sorted(self.rows)
            for j in sorted(self.rows[i])
        ]

    def is_zero_modulo(self, moduli: Sequence[int]) -> bool:
        return all(
            value % moduli[i] == 0 for i, row in self.rows.items() for value in row.values()
        )

    @classmethod
    def from_dense(cls, dense) -> "SparseMatrix":
        dense = object_matrix(dense)
        out = cls(*dense.shape)
        for i in range(dense.shape[0]):
            for j in range(dense.shape[1]):
                out.add(i, j, int(dense[i, j]))
        return out

    @classmethod
    def blocks(
        cls,
        row_offsets: Sequence[int],
        column_offsets: Sequence[int],
        parts: Iterable[Tuple[int, int, "SparseMatrix"]],
    ) -> "SparseMatrix":
        """Assemble a block matrix; offsets carry one extra entry for the total size."""
        out = cls(row_offsets[-1], column_offsets[-1])
        for bi, bj, block in parts:
            for i, row in block.rows.items():
                for j, value in row.items():
                    out.add(row_offsets[bi] + i, column_offsets[bj] + j, value)
        return out

    def scaled(self, factor: int) -> "SparseMatrix":
        out = SparseMatrix(self.num_rows, self.num_columns)
        for i, row in self.rows.items():
            for j, value in row.items():
                out.add(i, j, factor * value)
        return out
