"""
Covers of finite sets and the Čech groupoids they define.

A cover of a finite carrier is any family of subsets whose union is the
carrier; every such family is open for the discrete topology. The Čech
(localization) groupoid of ``g`` over a cover of its objects has objects
``(i, p)`` with ``p`` in ``U_i`` and arrows ``(i, g, j)`` with the source of
``g`` in ``U_i`` and its end in ``U_j``.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Hashable, List, Sequence, Tuple

from app.core.action import DoubleAction
from app.core.bundle import AbelianGroupBundle
from app.core.double_groupoid import FiniteDoubleGroupoid
from app.core.groupoid import FiniteGroupoid
from app.core.morphism import DoubleGroupoidMorphism
from app.exceptions import CoverError
from app.extensions.pullback import pullback_action
from app.logger import logger


@dataclass(frozen=True, eq=False)
class Cover:
    carrier: Tuple[Hashable, ...]
    sets: Tuple[frozenset, ...]

    def __post_init__(self):
        carrier = set(self.carrier)
        union = set().union(*self.sets) if self.sets else set()
        if union != carrier:
            missing = sorted(map(repr, carrier - union))[:5]
            stray = sorted(map(repr, union - carrier))[:5]
            raise CoverError(f"not a cover: uncovered {missing}, outside the carrier {stray}")

    @classmethod
    def of(cls, carrier, sets) -> "Cover":
        return cls(tuple(carrier), tuple(frozenset(s) for s in sets))

    @classmethod
    def single(cls, carrier) -> "Cover":
        """The cover by the carrier itself."""
        return cls.of(carrier, [carrier])

    @classmethod
    def finest(cls, carrier) -> "Cover":
        return cls.of(carrier, [[x] for x in carrier])

    def __len__(self) -> int:
        return len(self.sets)

    @cached_property
    def containing(self) -> Dict[Hashable, List[int]]:
        out: Dict[Hashable, List[int]] = {x: [] for x in self.carrier}
        for i, members in enumerate(self.sets):
            for x in members:
                out[x].append(i)
        return out

    def refinement_map(self, coarse: "Cover") -> Dict[int, int]:
        """For each set of ``self``, the first set of ``coarse`` containing it."""
        out = {}
        for i, members in enumerate(self.sets):
            for j, other in enumerate(coarse.sets):
                if members <= other:
                    out[i] = j
                    break
            else:
                raise CoverError(f"set {i} of the cover lies in no set of the coarser cover")
        return out

    def refines(self, coarse: "Cover") -> bool:
        return all(any(members <= other for other in coarse.sets) for members in self.sets)


def cech_objects(cover: Cover) -> List[Tuple[int, int]]:
    return sorted((i, p) for i, members in enumerate(cover.sets) for p in members)


def cech_arrows(g: FiniteGroupoid, cover: Cover) -> List[Tuple[int, int, int]]:
    return sorted(
        (i, a, j)
        for a in g.arrows
        for i in cover.containing[g.source[a]]
        for j in cover.containing[g.end[a]]
    )


def _cech_groupoid(
    g: FiniteGroupoid, cover: Cover, objects: Dict[Tuple[int, int], int]
) -> Tuple[FiniteGroupoid, Dict[Tuple[int, int, int], int]]:
    labels = cech_arrows(g, cover)
    ids = {label: n for n, label in enumerate(labels)}
    by_start: Dict[int, List[Tuple[int, int, int]]] = {}
    for label in labels:
        by_start.setdefault(label[0], []).append(label)
    composition = {}
    for i, a, j in labels:
        for _, b, k in by_start.get(j, []):
            if g.composable(a, b):
                composition[(ids[(i, a, j)], ids[(j, b, k)])] = ids[(i, g.compose(a, b), k)]
    groupoid = FiniteGroupoid(
        objects=tuple(sorted(objects.values())),
        arrows=tuple(range(len(labels))),
        source={ids[(i, a, j)]: objects[(i, g.source[a])] for i, a, j in labels},
        end={ids[(i, a, j)]: objects[(j, g.end[a])] for i, a, j in labels},
        identity={n: ids[(i, g.identity[p], i)] for (i, p), n in objects.items()},
        composition=composition,
        inverse={ids[(i, a, j)]: ids[(j, g.inverse[a], i)] for i, a, j in labels},
        name=f"{g.name} over a {len(cover)}-set cover",
    )
    return groupoid, ids


def cech_groupoid(g: FiniteGroupoid, cover: Cover) -> FiniteGroupoid:
    if set(cover.carrier) != set(g.objects):
        raise CoverError(f"the cover is not a cover of the objects of {g.name}")
    objects = {label: n for n, label in enumerate(cech_objects(cover))}
    return _cech_groupoid(g, cover, objects)[0]


@dataclass(frozen=True, eq=False)
class CechDoubleGroupoid:
    """``F[U]`` with the labels of its ids and the projection onto ``F``."""

    base: FiniteDoubleGroupoid
    cover: Cover
    total: FiniteDoubleGroupoid
    objects: Dict[Tuple[int, int], int]
    vertical: Dict[Tuple[int, int, int], int]
    horizontal: Dict[Tuple[int, int, int], int]
    boxes: Dict[Tuple[int, int, int, int, int], int]

    @cached_property
    def projection(self) -> DoubleGroupoidMorphism:
        return DoubleGroupoidMorphism(
            self.total,
            self.base,
            {n: p for (_, p), n in self.objects.items()},
            {n: a for (_, a, _), n in self.vertical.items()},
            {n: a for (_, a, _), n in self.horizontal.items()},
            {n: label[4] for label, n in self.boxes.items()},
        )


def cech_chart(dg: FiniteDoubleGroupoid, cover: Cover) -> CechDoubleGroupoid:
    if set(cover.carrier) != set(dg.points):
        raise CoverError(f"the cover is not a cover of the points of {dg.name}")
    objects = {label: n for n, label in enumerate(cech_objects(cover))}
    V, v_ids = _cech_groupoid(dg.vertical, cover, objects)
    H, h_ids = _cech_groupoid(dg.horizontal, cover, objects)
    at = cover.containing

    labels = sorted(
        (i, j, l, k, a)
        for a in dg.boxes
        for i in at[dg.tl(a)]
        for j in at[dg.tr(a)]
        for l in at[dg.bl(a)]
        for k in at[dg.br(a)]
    )
    ids = {label: n for n, label in enumerate(labels)}
    by_left: Dict[Tuple[int, int], List] = {}
    by_top: Dict[Tuple[int, int], List] = {}
    for label in labels:
        i, j, l, k, _ = label
        by_left.setdefault((i, l), []).append(label)
        by_top.setdefault((i, j), []).append(label)

    hcomp, vcomp = {}, {}
    for i, j, l, k, a in labels:
        for _, j2, _, k2, b in by_left.get((j, k), []):
            if dg.right[a] == dg.left[b]:
                hcomp[(ids[(i, j, l, k, a)], ids[(j, j2, k, k2, b)])] = ids[
                    (i, j2, l, k2, dg.hcompose(a, b))
                ]
        for _, _, l2, k2, b in by_top.get((l, k), []):
            if dg.bottom[a] == dg.top[b]:
                vcomp[(ids[(i, j, l, k, a)], ids[(l, k, l2, k2, b)])] = ids[
                    (i, j, l2, k2, dg.vcompose(a, b))
                ]

    total = FiniteDoubleGroupoid(
        points=tuple(sorted(objects.values())),
        vertical=V,
        horizontal=H,
        boxes=tuple(range(len(labels))),
        top={ids[(i, j, l, k, a)]: h_ids[(i, dg.top[a], j)] for i, j, l, k, a in labels},
        bottom={ids[(i, j, l, k, a)]: h_ids[(l, dg.bottom[a], k)] for i, j, l, k, a in labels},
        left={ids[(i, j, l, k, a)]: v_ids[(i, dg.left[a], l)] for i, j, l, k, a in labels},
        right={ids[(i, j, l, k, a)]: v_ids[(j, dg.right[a], k)] for i, j, l, k, a in labels},
        hcomp=hcomp,
        vcomp=vcomp,
        idd_v={n: ids[(i, i, l, l, dg.idd_v[g])] for (i, g, l), n in v_ids.items()},
        idd_h={n: ids[(i, j, i, j, dg.idd_h[x])] for (i, x, j), n in h_ids.items()},
        h_inverse={
            ids[(i, j, l, k, a)]: ids[(j, i, k, l, dg.h_inverse[a])] for i, j, l, k, a in labels
        },
        v_inverse={
            ids[(i, j, l, k, a)]: ids[(l, k, i, j, dg.v_inverse[a])] for i, j, l, k, a in labels
        },
        name=f"{dg.name} over a {len(cover)}-set cover",
    )
    logger.debug("Čech double groupoid of %s: %d points, %d boxes", dg.name, len(objects), len(labels))
    return CechDoubleGroupoid(dg, cover, total, objects, v_ids, h_ids, ids)


def cech_double_groupoid(dg: FiniteDoubleGroupoid, cover: Cover) -> FiniteDoubleGroupoid:
    return cech_chart(dg, cover).total


def cech_action(chart: CechDoubleGroupoid, action: DoubleAction) -> DoubleAction:
    """The coefficients of ``F`` pulled back to ``F[U]`` along ``(i, x) -> x``."""
    return pullback_action(chart.projection, action)


def cech_bundle(chart: CechDoubleGroupoid, bundle: AbelianGroupBundle) -> AbelianGroupBundle:
    return AbelianGroupBundle(
        {n: bundle.fiber(p) for (_, p), n in chart.objects.items()}
    )


def transition_morphism(fine: CechDoubleGroupoid, coarse: CechDoubleGroupoid) -> DoubleGroupoidMorphism:
    """``F[W] -> F[U]`` relabelling along the refinement map ``W -> U``."""
    theta = fine.cover.refinement_map(coarse.cover)
    return DoubleGroupoidMorphism(
        fine.total,
        coarse.total,
        {n: coarse.objects[(theta[i], p)] for (i, p), n in fine.objects.items()},
        {n: coarse.vertical[(theta[i], a, theta[j])] for (i, a, j), n in fine.vertical.items()},
        {n: coarse.horizontal[(theta[i], a, theta[j])] for (i, a, j), n in fine.horizontal.items()},
        {
            n: coarse.boxes[(theta[i], theta[j], theta[l], theta[k], a)]
            for (i, j, l, k, a), n in fine.boxes.items()
        },
    )


def directed_family(covers: Sequence[Cover]) -> int:
    """Position of a cover refining every other one of the family."""
    for position, candidate in enumerate(covers):
        if all(candidate.refines(other) for other in covers):
            return position
    raise CoverError("the family of covers has no common refinement inside it")
