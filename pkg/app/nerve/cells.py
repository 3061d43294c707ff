"""
The bisimplicial set of composable box matrices.

A cell of bidegree (m, n) sits on a grid of vertices with rows ``0..m``
(top to bottom) and columns ``0..n``. Its entries are

* (0, 0): a point,
* (0, n): composable horizontal arrows ``x_1 .. x_n``,
* (m, 0): composable vertical arrows ``g_1 .. g_m`` (top to bottom),
* (m, n): the boxes of an m x n matrix, row-major.

Every face is a restriction to a sub-grid, so all of them, and the
transports used by the coboundaries, go through ``restrict``.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, List, Sequence, Tuple

import app.core.config as cfg
from app.core.double_groupoid import FiniteDoubleGroupoid
from app.exceptions import DomainError, FaceIndexError, ResourceLimitError
from app.logger import logger
from app.models import Direction


@dataclass(frozen=True)
class NerveCell:
    m: int
    n: int
    entries: Tuple[int, ...]

    @property
    def bidegree(self) -> Tuple[int, int]:
        return (self.m, self.n)

    def box(self, i: int, j: int) -> int:
        """Entry in (0-based) box row i and column j."""
        return self.entries[i * self.n + j]

    def rows(self) -> List[Tuple[int, ...]]:
        return [self.entries[i * self.n:(i + 1) * self.n] for i in range(self.m)]

    def to_matrix(self) -> List[List[int]]:
        if self.m and self.n:
            return [list(row) for row in self.rows()]
        return [list(self.entries)]


def vertex(dg: FiniteDoubleGroupoid, cell: NerveCell, i: int, j: int) -> int:
    m, n = cell.m, cell.n
    V, H = dg.vertical, dg.horizontal
    if m == 0 and n == 0:
        return cell.entries[0]
    if m == 0:
        return H.source[cell.entries[j]] if j < n else H.end[cell.entries[n - 1]]
    if n == 0:
        return V.source[cell.entries[i]] if i < m else V.end[cell.entries[m - 1]]
    a = cell.box(min(i, m - 1), min(j, n - 1))
    if i < m:
        return dg.tl(a) if j < n else dg.tr(a)
    return dg.bl(a) if j < n else dg.br(a)


def h_edge(dg: FiniteDoubleGroupoid, cell: NerveCell, i: int, j: int) -> int:
    """Horizontal arrow on vertex row i between columns j and j+1."""
    if cell.m == 0:
        return cell.entries[j]
    if i < cell.m:
        return dg.top[cell.box(i, j)]
    return dg.bottom[cell.box(cell.m - 1, j)]


def v_edge(dg: FiniteDoubleGroupoid, cell: NerveCell, i: int, j: int) -> int:
    """Vertical arrow on vertex column j between rows i and i+1."""
    if cell.n == 0:
        return cell.entries[i]
    if j < cell.n:
        return dg.left[cell.box(i, j)]
    return dg.right[cell.box(i, cell.n - 1)]


def h_path(dg: FiniteDoubleGroupoid, cell: NerveCell, i: int, j0: int, j1: int) -> int:
    return dg.horizontal.compose_path(
        (h_edge(dg, cell, i, j) for j in range(j0, j1)), at=vertex(dg, cell, i, j0)
    )


def v_path(dg: FiniteDoubleGroupoid, cell: NerveCell, j: int, i0: int, i1: int) -> int:
    return dg.vertical.compose_path(
        (v_edge(dg, cell, i, j) for i in range(i0, i1)), at=vertex(dg, cell, i0, j)
    )


def block(dg: FiniteDoubleGroupoid, cell: NerveCell, i0: int, i1: int, j0: int, j1: int) -> int:
    """
    Composite box of vertex rows ``i0..i1`` and columns ``j0..j1``; an empty
    range in one direction gives an identity box on the corresponding path.
    """
    if i0 == i1 and j0 == j1:
        return dg.theta(vertex(dg, cell, i0, j0))
    if i0 == i1:
        return dg.idd_h[h_path(dg, cell, i0, j0, j1)]
    if j0 == j1:
        return dg.idd_v[v_path(dg, cell, j0, i0, i1)]
    rows = [dg.hcompose_all(cell.box(i, j) for j in range(j0, j1)) for i in range(i0, i1)]
    return dg.vcompose_all(rows)


def restrict(
    dg: FiniteDoubleGroupoid, cell: NerveCell, rows: Sequence[int], columns: Sequence[int]
) -> NerveCell:
    """The cell on the sub-grid of the given (increasing, nonempty) vertex rows and columns."""
    if not rows or not columns:
        raise FaceIndexError("a sub-grid needs at least one vertex row and one vertex column")
    if any(not 0 <= i <= cell.m for i in rows) or any(not 0 <= j <= cell.n for j in columns):
        raise FaceIndexError(f"sub-grid {rows} x {columns} outside a {cell.bidegree} cell")
    m, n = len(rows) - 1, len(columns) - 1
    if m == 0 and n == 0:
        entries = (vertex(dg, cell, rows[0], columns[0]),)
    elif m == 0:
        entries = tuple(
            h_path(dg, cell, rows[0], columns[j], columns[j + 1]) for j in range(n)
        )
    elif n == 0:
        entries = tuple(
            v_path(dg, cell, columns[0], rows[i], rows[i + 1]) for i in range(m)
        )
    else:
        entries = tuple(
            block(dg, cell, rows[i], rows[i + 1], columns[j], columns[j + 1])
            for i in range(m)
            for j in range(n)
        )
    return NerveCell(m, n, entries)


def basepoint(dg: FiniteDoubleGroupoid, cell: NerveCell) -> int:
    """Bottom-left vertex: ``bl(A_{m1})``, ``b(g_m)`` or ``l(x_1)``."""
    return vertex(dg, cell, cell.m, 0)


def transport(
    dg: FiniteDoubleGroupoid, cell: NerveCell, rows: Sequence[int], columns: Sequence[int]
) -> Tuple[int, int]:
    """
    ``(g, x)`` moving the fiber over the basepoint of a sub-grid cell to the
    fiber over the basepoint of ``cell``: act with ``g^-1`` (vertical, down
    column ``columns[0]``) and then with ``x`` (horizontal, along the last row).
    """
    g = v_path(dg, cell, columns[0], rows[-1], cell.m)
    x = h_path(dg, cell, cell.m, 0, columns[0])
    return g, x


def face_grid(cell: NerveCell, direction: Direction, k: int) -> Tuple[List[int], List[int]]:
    rows, columns = list(range(cell.m + 1)), list(range(cell.n + 1))
    if direction is Direction.VERTICAL:
        if cell.m == 0 or not 0 <= k <= cell.m:
            raise FaceIndexError(f"no vertical face {k} on a {cell.bidegree} cell")
        del rows[k]
    else:
        if cell.n == 0 or not 0 <= k <= cell.n:
            raise FaceIndexError(f"no horizontal face {k} on a {cell.bidegree} cell")
        del columns[k]
    return rows, columns


def face(dg: FiniteDoubleGroupoid, cell: NerveCell, direction: Direction, k: int) -> NerveCell:
    """
    Vertical face k deletes vertex row k: the outer faces drop the first or
    last box row and the inner ones compose rows k and k+1. Horizontal faces
    do the same with columns.
    """
    rows, columns = face_grid(cell, direction, k)
    return restrict(dg, cell, rows, columns)


def degeneracy(
    dg: FiniteDoubleGroupoid, cell: NerveCell, direction: Direction, k: int
) -> NerveCell:
    """Repeat vertex row (column) k by inserting a row of ``idd_H`` (column of ``idd_V``) boxes."""
    m, n = cell.m, cell.n
    V, H = dg.vertical, dg.horizontal
    if direction is Direction.VERTICAL:
        if not 0 <= k <= m:
            raise FaceIndexError(f"no vertical degeneracy {k} on a {cell.bidegree} cell")
        if n == 0:
            entries = list(cell.entries) if m else []
            entries.insert(k, V.identity[vertex(dg, cell, k, 0)])
            return NerveCell(m + 1, 0, tuple(entries))
        inserted = [dg.idd_h[h_edge(dg, cell, k, j)] for j in range(n)]
        rows = [list(row) for row in cell.rows()] if m else []
        rows.insert(k, inserted)
        return NerveCell(m + 1, n, tuple(a for row in rows for a in row))

    if not 0 <= k <= n:
        raise FaceIndexError(f"no horizontal degeneracy {k} on a {cell.bidegree} cell")
    if m == 0:
        entries = list(cell.entries) if n else []
        entries.insert(k, H.identity[vertex(dg, cell, 0, k)])
        return NerveCell(0, n + 1, tuple(entries))
    rows = [list(row) for row in cell.rows()] if n else [[] for _ in range(m)]
    for i, row in enumerate(rows):
        row.insert(k, dg.idd_v[v_edge(dg, cell, i, k)])
    return NerveCell(m, n + 1, tuple(a for row in rows for a in row))


def is_degenerate(dg: FiniteDoubleGroupoid, cell: NerveCell) -> bool:
    """In the image of a degeneracy: an identity row, column or edge entry."""
    m, n = cell.m, cell.n
    if m == 0 and n == 0:
        return False
    if m == 0:
        return any(dg.horizontal.is_identity(x) for x in cell.entries)
    if n == 0:
        return any(dg.vertical.is_identity(g) for g in cell.entries)
    if any(all(dg.is_idd_h(a) for a in row) for row in cell.rows()):
        return True
    return any(all(dg.is_idd_v(cell.box(i, j)) for i in range(m)) for j in range(n))


def check_cell(dg: FiniteDoubleGroupoid, cell: NerveCell) -> NerveCell:
    """Raise unless the entries form a composable matrix of the stated bidegree."""
    m, n = cell.m, cell.n
    expected = 1 if m == 0 and n == 0 else (n if m == 0 else (m if n == 0 else m * n))
    if len(cell.entries) != expected:
        raise DomainError(f"a {cell.bidegree} cell needs {expected} entries")
    if m == 0 and n == 0:
        ok = cell.entries[0] in dg.points
    elif m == 0:
        H = dg.horizontal
        ok = all(x in H.source for x in cell.entries) and all(
            H.composable(x, y) for x, y in zip(cell.entries, cell.entries[1:])
        )
    elif n == 0:
        V = dg.vertical
        ok = all(g in V.source for g in cell.entries) and all(
            V.composable(g, h) for g, h in zip(cell.entries, cell.entries[1:])
        )
    else:
        ok = all(a in dg.top for a in cell.entries)
        ok = ok and all(
            dg.right[cell.box(i, j)] == dg.left[cell.box(i, j + 1)]
            for i in range(m)
            for j in range(n - 1)
        )
        ok = ok and all(
            dg.bottom[cell.box(i, j)] == dg.top[cell.box(i + 1, j)]
            for i in range(m - 1)
            for j in range(n)
        )
    if not ok:
        raise DomainError(f"entries {cell.entries} do not form a composable {cell.bidegree} cell")
    return cell


def _box_matrices(dg: FiniteDoubleGroupoid, m: int, n: int) -> Iterator[Tuple[int, ...]]:
    size = m * n
    chosen: List[int] = []

    def candidates(position: int) -> List[int]:
        i, j = divmod(position, n)
        if i == 0 and j == 0:
            return sorted(dg.boxes)
        if i == 0:
            return dg.by_left.get(dg.right[chosen[-1]], [])
        above = chosen[position - n]
        if j == 0:
            return dg.by_top.get(dg.bottom[above], [])
        return dg.by_top_left.get((dg.bottom[above], dg.right[chosen[-1]]), [])

    def extend(position: int):
        if position == size:
            yield tuple(chosen)
            return
        for a in candidates(position):
            chosen.append(a)
            yield from extend(position + 1)
            chosen.pop()

    yield from extend(0)


def iter_cells(dg: FiniteDoubleGroupoid, m: int, n: int) -> Iterator[NerveCell]:
    """Cells of bidegree (m, n) in lexicographic order of their entries."""
    if m == 0:
        for entries in dg.horizontal.composable_tuples(n):
            yield NerveCell(0, n, entries)
    elif n == 0:
        for entries in dg.vertical.composable_tuples(m):
            yield NerveCell(m, 0, entries)
    else:
        for entries in _box_matrices(dg, m, n):
            yield NerveCell(m, n, entries)


def nerve_cells(
    dg: FiniteDoubleGroupoid, m: int, n: int, max_cells: int | None = None
) -> List[NerveCell]:
    cap = max_cells if max_cells is not None else cfg.MAX_CELLS
    if m < 0 or n < 0:
        raise FaceIndexError(f"bidegree ({m}, {n}) is negative")
    if max(m, n) > cfg.MAX_DEGREE:
        raise ResourceLimitError(f"bidegree ({m}, {n}) exceeds MAX_DEGREE={cfg.MAX_DEGREE}")
    cells = []
    for cell in iter_cells(dg, m, n):
        cells.append(cell)
        if len(cells) > cap:
            raise ResourceLimitError(
                f"more than {cap} cells of bidegree ({m}, {n}) in {dg.name}"
            )
    return cells


class Nerve:
    """Cached cell lists of one double groupoid."""

    def __init__(self, dg: FiniteDoubleGroupoid, max_cells: int | None = None):
        self.dg = dg
        self.max_cells = max_cells if max_cells is not None else cfg.MAX_CELLS
        self._cells: Dict[Tuple[int, int], List[NerveCell]] = {}
        self._nondegenerate: Dict[Tuple[int, int], List[NerveCell]] = {}

    def cells(self, m: int, n: int) -> List[NerveCell]:
        if (m, n) not in self._cells:
            self._cells[(m, n)] = nerve_cells(self.dg, m, n, self.max_cells)
            logger.debug(
                "%s: %d cells in bidegree (%d, %d)", self.dg.name, len(self._cells[(m, n)]), m, n
            )
        return self._cells[(m, n)]

    def nondegenerate(self, m: int, n: int) -> List[NerveCell]:
        if (m, n) not in self._nondegenerate:
            self._nondegenerate[(m, n)] = [
                cell for cell in self.cells(m, n) if not is_degenerate(self.dg, cell)
            ]
        return self._nondegenerate[(m, n)]

    def count(self, m: int, n: int) -> int:
        return len(self.cells(m, n))


def diagonal_cells(dg: FiniteDoubleGroupoid, n: int, max_cells: int | None = None) -> List[NerveCell]:
    """The n-simplices of the diagonal simplicial set, i.e. cells of bidegree (n, n)."""
    return nerve_cells(dg, n, n, max_cells)


def diagonal_face(dg: FiniteDoubleGroupoid, cell: NerveCell, k: int) -> NerveCell:
    return face(dg, face(dg, cell, Direction.HORIZONTAL, k), Direction.VERTICAL, k)
