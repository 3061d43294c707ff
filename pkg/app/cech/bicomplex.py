"""
The Čech bicomplex of a bisimplicial cover.

``C^{m,n}`` holds families ``(c_lam)`` of sections, ``c_lam(x)`` in the fiber
over the basepoint of ``x`` for every ``x`` in ``V_lam``; coordinates run over
the pairs ``(lam, x)``. Cochains are not normalized. The differentials are
those of the double groupoid with the index restricted along each face:

    (d c)_lam(x) = sum_k (-1)^k  transport_k . c_(lam restricted along face k)(face_k x)
"""

from typing import Dict, Tuple

from app.cech.refinement import BisimplicialCover, Index, index_map, restrict_index
from app.cohomology.cochains import Bicomplex, CochainSpace
from app.cohomology.sparse import SparseMatrix
from app.cohomology.total import TotalComplex
from app.core.action import DoubleAction
from app.core.bundle import FinAbGroup
from app.exceptions import CoverError, ResourceLimitError
from app.logger import logger
from app.nerve.cells import NerveCell, basepoint, restrict

Key = Tuple[Index, NerveCell]


class CechCochainSpace(CochainSpace):
    def __init__(self, cover: BisimplicialCover, action: DoubleAction, r: int, s: int):
        if (r, s) not in cover.sets:
            raise ResourceLimitError(f"the cover stops below level ({r}, {s})")
        self.dg = cover.dg
        self.action = action
        self.r, self.s = r, s
        self.normalized = False
        self.nerve = cover.nerve
        self.cover = cover
        self.lay_out(
            (lam, cell) for lam in cover.indices(r, s) for cell in cover.members(r, s, lam)
        )

    def fiber_of(self, key: Key) -> FinAbGroup:
        return self.action.bundle.fiber(basepoint(self.dg, key[1]))


class CechBicomplex(Bicomplex):
    def __init__(self, cover: BisimplicialCover, action: DoubleAction):
        super().__init__(cover.dg, action, normalized=False)
        self.cover = cover
        self.nerve = cover.nerve

    def space(self, r: int, s: int) -> CechCochainSpace:
        if (r, s) not in self._spaces:
            self._spaces[(r, s)] = CechCochainSpace(self.cover, self.action, r, s)
        return self._spaces[(r, s)]

    def cell_of(self, key: Key) -> NerveCell:
        return key[1]

    def face_key(self, key: Key, rows, columns) -> Key:
        lam, cell = key
        return (
            restrict_index(cell.m, cell.n, lam, rows, columns),
            restrict(self.dg, cell, rows, columns),
        )


def cech_bicomplex(cover: BisimplicialCover, action: DoubleAction) -> CechBicomplex:
    return CechBicomplex(cover, action)


def cech_total(cover: BisimplicialCover, action: DoubleAction) -> TotalComplex:
    return TotalComplex(CechBicomplex(cover, action))


def cech_h1_total(cover: BisimplicialCover, action: DoubleAction) -> FinAbGroup:
    group = cech_total(cover, action).cohomology(1).group
    logger.info("Čech H^1_Tot of %s over %s indices: %s", cover.dg.name,
                sum(len(v) for v in cover.sets.values()), group)
    return group


def restriction_map(
    coarse: CechBicomplex,
    fine: CechBicomplex,
    theta: Dict[Index, Index],
    r: int,
    s: int,
) -> SparseMatrix:
    """``(rho c)_lam'(x) = c_theta(lam')(x)`` from ``C^{r,s}`` of ``coarse`` to that of ``fine``."""
    source, target = coarse.space(r, s), fine.space(r, s)
    out = SparseMatrix(target.dimension, source.dimension)
    for position, (lam, cell) in enumerate(target.cells):
        image = source.index.get((theta[lam], cell))
        if image is None:
            raise CoverError(f"the index {lam} is not sent into a set containing {cell.entries}")
        row0, col0 = target.offsets[position], source.offsets[image]
        for i in range(target.fibers[position].rank):
            out.add(row0 + i, col0 + i, 1)
    return out


def index_theta(fine: BisimplicialCover, maps, r: int, s: int) -> Dict[Index, Index]:
    """Index map of the refinements induced by per-level refinement maps."""
    return {lam: index_map(maps, r, s, lam) for lam in fine.indices(r, s)}

