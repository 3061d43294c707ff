"""
Bisimplicial covers of the nerve and the canonical refinement of a family of
per-level covers.

A morphism of the bisimplicial index category into bidegree (m, n) that is a
composite of faces is a pair ``(S, T)`` of nonempty vertex subsets of
``{0..m} x {0..n}``; ``P_{m,n}`` is the set of all of them, ordered by size
and then lexicographically in each coordinate. An index of the refinement at
level (m, n) is a map ``lam`` on ``P_{m,n}`` choosing a set of the level
``(|S|-1, |T|-1)`` cover for every ``(S, T)``; its set is

    V_lam = { x : restrict(x, S, T) lies in U_{lam(S, T)} for every (S, T) }.

Only indices with a nonempty set are kept.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, FrozenSet, List, Tuple

import app.core.config as cfg
from app.cech.covers import Cover
from app.core.double_groupoid import FiniteDoubleGroupoid
from app.exceptions import CoverError, ResourceLimitError
from app.logger import logger
from app.models import ViolationKind
from app.nerve.cells import Nerve, NerveCell, restrict
from app.schemas.report import ValidationReport

Level = Tuple[int, int]
Position = Tuple[Tuple[int, ...], Tuple[int, ...]]
Index = Tuple[int, ...]


@lru_cache(maxsize=None)
def nonempty_subsets(k: int) -> Tuple[Tuple[int, ...], ...]:
    """Nonempty subsets of ``{0..k}`` by size, then lexicographically."""
    return tuple(s for size in range(1, k + 2) for s in combinations(range(k + 1), size))


@lru_cache(maxsize=None)
def positions(m: int, n: int) -> Tuple[Position, ...]:
    return tuple((s, t) for s in nonempty_subsets(m) for t in nonempty_subsets(n))


def position_count(m: int, n: int) -> int:
    return (2 ** (m + 1) - 1) * (2 ** (n + 1) - 1)


def matrix_view(m: int, n: int, lam: Index) -> List[List[int]]:
    """``lam`` as a matrix with rows indexed by ``S`` and columns by ``T``."""
    width = len(nonempty_subsets(n))
    return [list(lam[r * width:(r + 1) * width]) for r in range(len(nonempty_subsets(m)))]


@lru_cache(maxsize=None)
def _position_index(m: int, n: int) -> Dict[Position, int]:
    return {p: i for i, p in enumerate(positions(m, n))}


def restrict_index(m: int, n: int, lam: Index, rows, columns) -> Index:
    """``lam`` read through the sub-grid ``rows x columns``: ``(lam f~)(g) = lam(f g)``."""
    where = _position_index(m, n)
    sub_m, sub_n = len(rows) - 1, len(columns) - 1
    return tuple(
        lam[where[(tuple(rows[a] for a in s), tuple(columns[b] for b in t))]]
        for s, t in positions(sub_m, sub_n)
    )


def _level_of(position: Position) -> Level:
    s, t = position
    return (len(s) - 1, len(t) - 1)


@dataclass
class BisimplicialCover:
    """Indices ``I_{m,n}`` with their sets of cells, for every level up to ``bound``."""

    dg: FiniteDoubleGroupoid
    bound: int
    nerve: Nerve
    sets: Dict[Level, Dict[Index, FrozenSet[NerveCell]]] = field(default_factory=dict)
    _orders: Dict[Level, Dict[NerveCell, int]] = field(default_factory=dict, repr=False)

    def levels(self) -> List[Level]:
        return sorted(self.sets)

    def indices(self, m: int, n: int) -> List[Index]:
        return sorted(self.sets[(m, n)])

    def members(self, m: int, n: int, lam: Index) -> List[NerveCell]:
        if (m, n) not in self._orders:
            self._orders[(m, n)] = {cell: i for i, cell in enumerate(self.nerve.cells(m, n))}
        return sorted(self.sets[(m, n)][lam], key=self._orders[(m, n)].__getitem__)

    def size(self, m: int, n: int) -> int:
        return len(self.sets[(m, n)])


def levels_up_to(bound: int) -> List[Level]:
    return [(m, n) for m in range(bound + 1) for n in range(bound + 1 - m)]


def bisimplicial_refinement(
    dg: FiniteDoubleGroupoid,
    covers: Dict[Level, Cover],
    bound: int = 4,
    max_indices: int | None = None,
    nerve: Nerve | None = None,
) -> BisimplicialCover:
    """
    The canonical bisimplicial cover refining per-level covers of the cells
    of ``F^{(m,n)}``; ``covers`` must hold a cover for every level up to ``bound``.
    """
    cap = max_indices if max_indices is not None else cfg.MAX_REFINEMENT_INDICES
    nerve = nerve if nerve is not None else Nerve(dg)
    result = BisimplicialCover(dg, bound, nerve)
    for level in levels_up_to(bound):
        if level not in covers:
            raise CoverError(f"no cover given for level {level}")
        if set(covers[level].carrier) != set(nerve.cells(*level)):
            raise CoverError(f"the cover at level {level} does not cover the cells of that level")

    for m, n in levels_up_to(bound):
        found: Dict[Index, set] = {}
        places = positions(m, n)
        for cell in nerve.cells(m, n):
            choices = []
            for s, t in places:
                sub = restrict(dg, cell, s, t)
                choices.append(covers[_level_of((s, t))].containing[sub])
            count = 1
            for options in choices:
                count *= len(options)
            if len(found) + count > cap:
                raise ResourceLimitError(
                    f"refinement indices at level ({m}, {n}) exceed MAX_REFINEMENT_INDICES={cap}"
                )
            for lam in product(*choices):
                found.setdefault(lam, set()).add(cell)
        result.sets[(m, n)] = {lam: frozenset(cells) for lam, cells in found.items()}
        logger.debug("refinement of %s at level (%d, %d): %d indices", dg.name, m, n, len(found))
    return result


def vertex_cover(
    dg: FiniteDoubleGroupoid, cover: Cover, bound: int = 4, nerve: Nerve | None = None
) -> BisimplicialCover:
    """The refinement of ``cover`` at level (0, 0) and the single set elsewhere."""
    nerve = nerve if nerve is not None else Nerve(dg)
    covers = {(0, 0): Cover.of([NerveCell(0, 0, (p,)) for p in cover.carrier],
                               [[NerveCell(0, 0, (p,)) for p in members] for members in cover.sets])}
    for level in levels_up_to(bound):
        if level != (0, 0):
            covers[level] = Cover.single(nerve.cells(*level))
    return bisimplicial_refinement(dg, covers, bound, nerve=nerve)


def finest_cover(dg: FiniteDoubleGroupoid, bound: int = 4, nerve: Nerve | None = None) -> BisimplicialCover:
    """Refinement of the covers by single cells at every level."""
    nerve = nerve if nerve is not None else Nerve(dg)
    covers = {level: Cover.finest(nerve.cells(*level)) for level in levels_up_to(bound)}
    return bisimplicial_refinement(dg, covers, bound, nerve=nerve)


def check_bisimplicial(cover: BisimplicialCover) -> ValidationReport:
    """Every face of a cell in ``V_lam`` lies in the set of the restricted index."""
    report = ValidationReport(subject=f"bisimplicial cover of {cover.dg.name}")
    for m, n in cover.levels():
        for lam, cells in cover.sets[(m, n)].items():
            for s, t in positions(m, n):
                level = _level_of((s, t))
                if level not in cover.sets:
                    continue
                image = restrict_index(m, n, lam, s, t)
                target = cover.sets[level].get(image, frozenset())
                for cell in cells:
                    if restrict(cover.dg, cell, s, t) not in target:
                        report.add(
                            ViolationKind.COMPATIBILITY,
                            "restrictions of V_lam lie in V of the restricted index",
                            cell.entries,
                            f"level ({m}, {n}), sub-grid {s} x {t}",
                        )
    return report


def refines(cover: BisimplicialCover, covers: Dict[Level, Cover]) -> bool:
    """``V_lam`` sits inside the set chosen on the whole grid."""
    for m, n in cover.levels():
        whole = _position_index(m, n)[(tuple(range(m + 1)), tuple(range(n + 1)))]
        for lam, cells in cover.sets[(m, n)].items():
            if not cells <= covers[(m, n)].sets[lam[whole]]:
                return False
    return True


def induced_refinement(
    fine: Dict[Level, Cover], coarse: Dict[Level, Cover]
) -> Dict[Level, Dict[int, int]]:
    """Per-level refinement maps, from which index maps of the refinements follow."""
    return {level: fine[level].refinement_map(coarse[level]) for level in fine}


def index_map(
    maps: Dict[Level, Dict[int, int]], m: int, n: int, lam: Index
) -> Index:
    return tuple(maps[_level_of(p)][i] for p, i in zip(positions(m, n), lam))
