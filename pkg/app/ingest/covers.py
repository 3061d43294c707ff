from typing import Dict, List

from app.cech.covers import Cover
from app.cech.refinement import BisimplicialCover, Level, bisimplicial_refinement, levels_up_to, vertex_cover
from app.core.double_groupoid import FiniteDoubleGroupoid
from app.exceptions import MalformedInputError
from app.nerve.cells import Nerve
from app.schemas.documents import CoverDocument


def point_cover(dg: FiniteDoubleGroupoid, sets: List[List[int]]) -> Cover:
    return Cover.of(sorted(dg.points), sets)


def cover_family(doc: CoverDocument, dg: FiniteDoubleGroupoid) -> List[Cover]:
    """The covers of the points named by ``family``, or the single ``points`` cover."""
    if doc.family is not None:
        return [point_cover(dg, sets) for sets in doc.family]
    if doc.points is not None:
        return [point_cover(dg, doc.points)]
    raise MalformedInputError("the cover document names no cover of the points")


def bisimplicial_from_document(
    doc: CoverDocument, dg: FiniteDoubleGroupoid, nerve: Nerve | None = None
) -> BisimplicialCover:
    """
    A ``levels`` document: listed levels use their sets of cell positions,
    the others the single set. A ``points`` document gives the vertex cover.
    """
    nerve = nerve if nerve is not None else Nerve(dg)
    if doc.levels is None:
        if doc.points is None:
            raise MalformedInputError("the cover document has neither levels nor points")
        return vertex_cover(dg, point_cover(dg, doc.points), doc.bound, nerve)

    covers: Dict[Level, Cover] = {}
    for entry in doc.levels:
        level = tuple(entry.level)
        cells = nerve.cells(*level)
        try:
            sets = [[cells[i] for i in members] for members in entry.sets]
        except IndexError:
            raise MalformedInputError(f"a set at level {level} names a cell past the {len(cells)} cells")
        covers[level] = Cover.of(cells, sets)
    for level in levels_up_to(doc.bound):
        covers.setdefault(level, Cover.single(nerve.cells(*level)))
    return bisimplicial_refinement(dg, covers, doc.bound, nerve=nerve)


def box_cover(doc: CoverDocument, dg: FiniteDoubleGroupoid) -> Cover:
    if doc.boxes is None:
        raise MalformedInputError("the cover document names no cover of the boxes")
    return Cover.of(sorted(dg.boxes), doc.boxes)
