"""
Corner matrices and their orbits under the core groupoid.

A corner matrix of bidegree (m, n) has (m+1) x (n+1) boxes ``F[k][l]`` with
one left side per row, one bottom side per column, trivial top sides in
column 0 and trivial right sides in row m. All its boxes share the
bottom-left vertex, and the core groupoid acts on it entrywise.
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterator, List, Tuple

import app.core.config as cfg
from app.core.double_groupoid import FiniteDoubleGroupoid, core_product
from app.exceptions import DomainError, ResourceLimitError
from app.nerve.cells import NerveCell, block


@dataclass(frozen=True)
class CornerMatrix:
    m: int
    n: int
    entries: Tuple[int, ...]

    def entry(self, k: int, l: int) -> int:
        return self.entries[k * (self.n + 1) + l]

    def to_matrix(self) -> List[List[int]]:
        return [list(self.entries[k * (self.n + 1):(k + 1) * (self.n + 1)]) for k in range(self.m + 1)]


@dataclass(frozen=True)
class CoreOrbit:
    representative: CornerMatrix
    members: FrozenSet[CornerMatrix]

    @property
    def key(self) -> Tuple[int, ...]:
        return min(member.entries for member in self.members)


def gamma(dg: FiniteDoubleGroupoid, matrix: CornerMatrix) -> int:
    return dg.bl(matrix.entry(matrix.m, 0))


def is_corner_matrix(dg: FiniteDoubleGroupoid, matrix: CornerMatrix) -> bool:
    V, H = dg.vertical, dg.horizontal
    m, n = matrix.m, matrix.n
    for k in range(m + 1):
        if not H.is_identity(dg.top[matrix.entry(k, 0)]):
            return False
        for l in range(n + 1):
            a = matrix.entry(k, l)
            if dg.left[a] != dg.left[matrix.entry(k, 0)]:
                return False
            if dg.bottom[a] != dg.bottom[matrix.entry(m, l)]:
                return False
    return all(V.is_identity(dg.right[matrix.entry(m, l)]) for l in range(n + 1))


def core_action(dg: FiniteDoubleGroupoid, e: int, matrix: CornerMatrix) -> CornerMatrix:
    """``E ⇀ F`` entrywise; needs ``tr(E) = γ(F)``."""
    if dg.core.end.get(e) != gamma(dg, matrix):
        raise DomainError(f"core arrow {e} does not end at the anchor of the matrix")
    return CornerMatrix(
        matrix.m, matrix.n, tuple(core_product(dg, e, a) for a in matrix.entries)
    )


def orbit(dg: FiniteDoubleGroupoid, matrix: CornerMatrix) -> CoreOrbit:
    members = frozenset(
        core_action(dg, e, matrix) for e in dg.core.ending_at(gamma(dg, matrix))
    )
    return CoreOrbit(representative=matrix, members=members)


def phi(dg: FiniteDoubleGroupoid, cell: NerveCell) -> CoreOrbit:
    """Staircase composites ``F[k][l]`` of box rows below k and box columns up to l."""
    entries = tuple(
        block(dg, cell, k, cell.m, 0, l)
        for k in range(cell.m + 1)
        for l in range(cell.n + 1)
    )
    return orbit(dg, CornerMatrix(cell.m, cell.n, entries))


def psi(dg: FiniteDoubleGroupoid, value: CoreOrbit | CornerMatrix) -> NerveCell:
    """Inverse of ``phi``: 2x2 composites of neighbouring entries and their inverses."""
    F = value.representative if isinstance(value, CoreOrbit) else value
    m, n = F.m, F.n
    V, H = dg.vertical, dg.horizontal
    if m == 0 and n == 0:
        return NerveCell(0, 0, (dg.tr(F.entry(0, 0)),))
    if m == 0:
        return NerveCell(
            0,
            n,
            tuple(
                H.compose(H.inverse[dg.top[F.entry(0, j - 1)]], dg.top[F.entry(0, j)])
                for j in range(1, n + 1)
            ),
        )
    if n == 0:
        return NerveCell(
            m,
            0,
            tuple(
                V.compose(dg.right[F.entry(i - 1, 0)], V.inverse[dg.right[F.entry(i, 0)]])
                for i in range(1, m + 1)
            ),
        )
    entries = []
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            upper = dg.hcompose(dg.h_inverse[F.entry(i - 1, j - 1)], F.entry(i - 1, j))
            lower = dg.hcompose(
                dg.v_inverse[dg.h_inverse[F.entry(i, j - 1)]], dg.v_inverse[F.entry(i, j)]
            )
            entries.append(dg.vcompose(upper, lower))
    return NerveCell(m, n, tuple(entries))


def corner_matrices(
    dg: FiniteDoubleGroupoid, m: int, n: int, max_count: int | None = None
) -> Iterator[CornerMatrix]:
    """Every corner matrix of bidegree (m, n), bottom row first."""
    cap = max_count if max_count is not None else cfg.MAX_BRUTE_FORCE
    V, H = dg.vertical, dg.horizontal
    width = n + 1
    count = 0

    def bottom_rows() -> Iterator[List[int]]:
        row: List[int] = []

        def extend():
            if len(row) == width:
                yield list(row)
                return
            if row:
                pool = dg.by_left.get(dg.left[row[0]], [])
            else:
                pool = sorted(dg.boxes)
            for a in pool:
                if not V.is_identity(dg.right[a]):
                    continue
                if not row and not H.is_identity(dg.top[a]):
                    continue
                row.append(a)
                yield from extend()
                row.pop()

        yield from extend()

    def upper_rows(bottoms: List[int]) -> Iterator[List[int]]:
        row: List[int] = []

        def extend():
            if len(row) == width:
                yield list(row)
                return
            l = len(row)
            if row:
                pool = dg.by_left_bottom.get((dg.left[row[0]], bottoms[l]), [])
            else:
                pool = sorted(
                    b
                    for x in H.identities
                    for b in dg.by_top.get(x, [])
                    if dg.bottom[b] == bottoms[0]
                )
            for a in pool:
                row.append(a)
                yield from extend()
                row.pop()

        yield from extend()

    def stack(rows: List[List[int]], bottoms: List[int]):
        nonlocal count
        if len(rows) == m + 1:
            count += 1
            if count > cap:
                raise ResourceLimitError(f"more than {cap} corner matrices of bidegree ({m}, {n})")
            yield CornerMatrix(m, n, tuple(a for row in rows for a in row))
            return
        for row in upper_rows(bottoms):
            yield from stack([row] + rows, bottoms)

    for last in bottom_rows():
        yield from stack([last], [dg.bottom[a] for a in last])


def orbits(dg: FiniteDoubleGroupoid, m: int, n: int) -> List[CoreOrbit]:
    """The orbit set of corner matrices, each orbit listed once, sorted by key."""
    seen = set()
    out = []
    for matrix in corner_matrices(dg, m, n):
        if matrix in seen:
            continue
        current = orbit(dg, matrix)
        seen.update(current.members)
        out.append(current)
    return sorted(out, key=lambda o: o.key)
