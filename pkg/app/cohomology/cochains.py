"""
Cochain groups ``D^{r,s}`` of a double groupoid with coefficients in a
bundle acted on by V and H, and the two coboundaries.

A cochain of bidegree (r, s) assigns to each cell an element of the fiber
over the cell's bottom-left vertex. Normalized cochains vanish on degenerate
cells, so only the non-degenerate cells carry coordinates. Coordinates are
laid out cell by cell, in nerve order, one per invariant factor of the fiber.
"""

from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

import app.core.config as cfg
from app.cohomology.sparse import SparseMatrix
from app.core.action import DoubleAction
from app.core.bundle import Element, FinAbGroup
from app.core.double_groupoid import FiniteDoubleGroupoid
from app.exceptions import DomainError, ResourceLimitError
from app.logger import logger
from app.models import Direction
from app.nerve.cells import (
    Nerve,
    NerveCell,
    basepoint,
    face_grid,
    is_degenerate,
    restrict,
    transport,
)


class CochainSpace:
    def __init__(
        self,
        dg: FiniteDoubleGroupoid,
        action: DoubleAction,
        r: int,
        s: int,
        normalized: bool = True,
        nerve: Nerve | None = None,
    ):
        self.dg = dg
        self.action = action
        self.r, self.s = r, s
        self.normalized = normalized
        self.nerve = nerve if nerve is not None else Nerve(dg)
        self.lay_out(self.nerve.nondegenerate(r, s) if normalized else self.nerve.cells(r, s))

    def lay_out(self, cells) -> None:
        """One block of coordinates per cell, in the given order."""
        self.cells = list(cells)
        self.index: Dict[NerveCell, int] = {}
        self.offsets: List[int] = []
        self.fibers: List[FinAbGroup] = []
        self.moduli: List[int] = []
        for position, cell in enumerate(self.cells):
            fiber = self.fiber_of(cell)
            self.index[cell] = position
            self.offsets.append(len(self.moduli))
            self.fibers.append(fiber)
            self.moduli.extend(fiber.invariant_factors)
        logger.debug(
            "D^{%d,%d} of %s: %d cells, %d coordinates",
            self.r, self.s, self.dg.name, len(self.cells), len(self.moduli),
        )

    @property
    def bidegree(self) -> Tuple[int, int]:
        return (self.r, self.s)

    @property
    def dimension(self) -> int:
        return len(self.moduli)

    @property
    def group(self) -> FinAbGroup:
        return FinAbGroup.from_cyclic(self.moduli)

    @property
    def order(self) -> int:
        result = 1
        for d in self.moduli:
            result *= d
        return result

    def fiber_of(self, cell: NerveCell) -> FinAbGroup:
        return self.action.bundle.fiber(basepoint(self.dg, cell))

    def zero(self) -> "Cochain":
        return Cochain(self, tuple([0] * self.dimension))

    def reduce(self, vector: Sequence[int]) -> Tuple[int, ...]:
        if len(vector) != self.dimension:
            raise DomainError(
                f"vector of length {len(vector)} is not a cochain of D^{self.bidegree}"
            )
        return tuple(int(v) % d for v, d in zip(vector, self.moduli))

    def cochain(self, vector: Sequence[int]) -> "Cochain":
        return Cochain(self, self.reduce(vector))

    def from_function(self, values: Callable[[NerveCell], Sequence[int]]) -> "Cochain":
        vector: List[int] = []
        for cell, fiber in zip(self.cells, self.fibers):
            vector.extend(fiber.reduce(values(cell)))
        return Cochain(self, tuple(vector))

    def elements(self, cap: int | None = None) -> Iterator["Cochain"]:
        cap = cap if cap is not None else cfg.MAX_GROUP_ENUMERATION
        if self.order > cap:
            raise ResourceLimitError(
                f"D^{self.bidegree} has {self.order} elements, above the enumeration cap {cap}"
            )
        for vector in product(*(range(d) for d in self.moduli)):
            yield Cochain(self, tuple(vector))


@dataclass(frozen=True)
class Cochain:
    space: CochainSpace
    vector: Tuple[int, ...]

    @property
    def bidegree(self) -> Tuple[int, int]:
        return self.space.bidegree

    def value(self, cell: NerveCell) -> Element:
        space = self.space
        position = space.index.get(cell)
        if position is None:
            if space.normalized and is_degenerate(space.dg, cell):
                return space.fiber_of(cell).zero()
            raise DomainError(f"cell {cell} is not in D^{space.bidegree}")
        start = space.offsets[position]
        return tuple(self.vector[start:start + space.fibers[position].rank])

    def __add__(self, other: "Cochain") -> "Cochain":
        return self.space.cochain([a + b for a, b in zip(self.vector, other.vector)])

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self.space.cochain([a - b for a, b in zip(self.vector, other.vector)])

    def __neg__(self) -> "Cochain":
        return self.space.cochain([-a for a in self.vector])

    def is_zero(self) -> bool:
        return not any(self.vector)

    def is_normalized(self) -> bool:
        """Vanishes on every degenerate cell of the unnormalized space."""
        if self.space.normalized:
            return True
        return all(
            not any(self.value(cell))
            for cell in self.space.cells
            if is_degenerate(self.space.dg, cell)
        )


def transported(
    dg: FiniteDoubleGroupoid, action: DoubleAction, cell: NerveCell, rows, columns, value
) -> Element:
    g, x = transport(dg, cell, rows, columns)
    return action.act_h(x, action.act_v(dg.vertical.inverse[g], value))


def _coboundary(alpha: Cochain, target: CochainSpace, direction: Direction) -> Cochain:
    dg, action = target.dg, target.action

    def values(cell: NerveCell) -> Element:
        fiber = target.fiber_of(cell)
        total = fiber.zero()
        count = cell.m if direction is Direction.VERTICAL else cell.n
        for k in range(count + 1):
            rows, columns = face_grid(cell, direction, k)
            sub = restrict(dg, cell, rows, columns)
            term = transported(dg, action, cell, rows, columns, alpha.value(sub))
            total = fiber.add(total, term) if k % 2 == 0 else fiber.sub(total, term)
        return total

    return target.from_function(values)


def coboundary_v(
    dg: FiniteDoubleGroupoid,
    action: DoubleAction,
    alpha: Cochain,
    target: CochainSpace | None = None,
) -> Cochain:
    """``d_V``: alternating sum over the vertical faces of an (r+1, s) cell."""
    r, s = alpha.bidegree
    if target is None:
        target = CochainSpace(dg, action, r + 1, s, alpha.space.normalized, alpha.space.nerve)
    return _coboundary(alpha, target, Direction.VERTICAL)


def coboundary_h(
    dg: FiniteDoubleGroupoid,
    action: DoubleAction,
    alpha: Cochain,
    target: CochainSpace | None = None,
) -> Cochain:
    """``d_H``: alternating sum over the horizontal faces of an (r, s+1) cell."""
    r, s = alpha.bidegree
    if target is None:
        target = CochainSpace(dg, action, r, s + 1, alpha.space.normalized, alpha.space.nerve)
    return _coboundary(alpha, target, Direction.HORIZONTAL)


def _matmul(a: List[List[int]], b: List[List[int]], inner: int) -> List[List[int]]:
    columns = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(columns)] for i in range(len(a))]


class Bicomplex:
    """Cached cochain spaces and coboundary matrices of one (dg, action) pair."""

    def __init__(
        self,
        dg: FiniteDoubleGroupoid,
        action: DoubleAction,
        normalized: bool = True,
        max_cells: int | None = None,
    ):
        self.dg = dg
        self.action = action
        self.normalized = normalized
        self.nerve = Nerve(dg, max_cells)
        self._spaces: Dict[Tuple[int, int], CochainSpace] = {}
        self._matrices: Dict[Tuple[Direction, int, int], SparseMatrix] = {}
        self._transports: Dict[Tuple[int, int], List[List[int]]] = {}

    def space(self, r: int, s: int) -> CochainSpace:
        if (r, s) not in self._spaces:
            self._spaces[(r, s)] = CochainSpace(
                self.dg, self.action, r, s, self.normalized, self.nerve
            )
        return self._spaces[(r, s)]

    def _transport_matrix(self, g: int, x: int) -> List[List[int]]:
        if (g, x) not in self._transports:
            vertical = self.action.vertical.matrices[self.dg.vertical.inverse[g]]
            horizontal = self.action.horizontal.matrices[x]
            self._transports[(g, x)] = _matmul(horizontal, vertical, len(vertical))
        return self._transports[(g, x)]

    def cell_of(self, key) -> NerveCell:
        return key

    def face_key(self, key, rows, columns):
        return restrict(self.dg, key, rows, columns)

    def matrix(self, direction: Direction, r: int, s: int) -> SparseMatrix:
        """Matrix of ``d_V: D^{r,s} -> D^{r+1,s}`` or ``d_H: D^{r,s} -> D^{r,s+1}``."""
        cached = (direction, r, s)
        if cached in self._matrices:
            return self._matrices[cached]
        source = self.space(r, s)
        target = self.space(r + 1, s) if direction is Direction.VERTICAL else self.space(r, s + 1)
        out = SparseMatrix(target.dimension, source.dimension)
        for row_cell, key in enumerate(target.cells):
            row0 = target.offsets[row_cell]
            cell = self.cell_of(key)
            count = cell.m if direction is Direction.VERTICAL else cell.n
            for k in range(count + 1):
                rows, columns = face_grid(cell, direction, k)
                position = source.index.get(self.face_key(key, rows, columns))
                if position is None:
                    continue
                col0 = source.offsets[position]
                g, x = transport(self.dg, cell, rows, columns)
                block = self._transport_matrix(g, x)
                sign = 1 if k % 2 == 0 else -1
                for i, line in enumerate(block):
                    for j, value in enumerate(line):
                        out.add(row0 + i, col0 + j, sign * value)
        self._matrices[cached] = out
        logger.debug(
            "%s coboundary D^{%d,%d}: %s", direction.value, r, s, out
        )
        return out

    def d_v(self, r: int, s: int) -> SparseMatrix:
        return self.matrix(Direction.VERTICAL, r, s)

    def d_h(self, r: int, s: int) -> SparseMatrix:
        return self.matrix(Direction.HORIZONTAL, r, s)

    def apply(self, direction: Direction, alpha: Cochain) -> Cochain:
        r, s = alpha.bidegree
        target = self.space(r + 1, s) if direction is Direction.VERTICAL else self.space(r, s + 1)
        return target.cochain(self.matrix(direction, r, s).apply(alpha.vector))


def cochain_group(
    dg: FiniteDoubleGroupoid,
    action: DoubleAction,
    r: int,
    s: int,
    normalized: bool = True,
) -> CochainSpace:
    """``D^{r,s}`` with its coordinates; ``.group`` is the invariant-factor form."""
    return CochainSpace(dg, action, r, s, normalized)
