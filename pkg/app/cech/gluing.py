"""
Gluing an extension from local charts.

Over a cover ``{U_j}`` of the boxes of F, local sections ``mu_j`` of the
projection give charts ``U_j x K``: ``(j, F, k)`` is the box over ``F`` whose
difference from ``mu_j(F)`` is ``k``. On overlaps the charts differ by the
transition functions

    psi_jk(F) = difference of mu_k(F) from mu_j(F)

which can be read vertically first or horizontally first; the two readings
agree, ``psi_jj = 0``, ``psi_kj = -psi_jk`` and ``psi_jm = psi_jk + psi_km``.
Identifying ``(j, F, k) ~ (m, F, k - psi_jm(F))`` glues the charts back into
the total.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from app.cech.covers import Cover
from app.core.action import DoubleAction
from app.core.bundle import Element
from app.core.double_groupoid import FiniteDoubleGroupoid
from app.core.morphism import DoubleGroupoidMorphism
from app.exceptions import CoverError, ExtensionError
from app.extensions.presentation import ExtensionPresentation, box_difference, induced_action
from app.logger import logger

Transitions = Dict[Tuple[int, int, int], Element]
ChartPoint = Tuple[int, int, Element]


def _lifts(ext: ExtensionPresentation) -> Dict[int, List[int]]:
    lifts: Dict[int, List[int]] = {}
    for a in sorted(ext.total.boxes):
        lifts.setdefault(ext.projection.boxes[a], []).append(a)
    return lifts


def local_sections(
    ext: ExtensionPresentation, cover: Cover, seed: int | None = None
) -> List[Dict[int, int]]:
    """One section of the projection over each set; the lowest lifts, or random ones for a seed."""
    if set(cover.carrier) != set(ext.base.boxes):
        raise CoverError(f"the cover is not a cover of the boxes of {ext.base.name}")
    lifts = _lifts(ext)
    rng = np.random.default_rng(seed) if seed is not None else None
    sections = []
    for members in cover.sets:
        section = {}
        for f in sorted(members):
            options = lifts.get(f)
            if not options:
                raise ExtensionError(f"box {f} of {ext.base.name} has no lift")
            section[f] = options[int(rng.integers(len(options)))] if rng is not None else options[0]
        sections.append(section)
    return sections


def vertical_difference(ext: ExtensionPresentation, lower: int, upper: int) -> Element:
    """Kernel element taking ``lower`` to ``upper``, both over the same box, by vertical composition."""
    return box_difference(ext, {ext.projection.boxes[lower]: lower}, upper)


def horizontal_difference(
    ext: ExtensionPresentation, lower: int, upper: int, action: DoubleAction | None = None
) -> Element:
    """The same comparison through ``lower^h upper`` at the right side, moved to ``bl``."""
    total = ext.total
    V = total.vertical
    strip = total.hcompose(total.h_inverse[lower], upper)
    corner = total.vcompose(strip, total.idd_v[V.inverse[total.right[upper]]])
    try:
        _, k = ext.inverse_embedding[corner]
    except KeyError:
        raise ExtensionError(f"{ext.name}: boxes {lower}, {upper} differ outside the bundle")
    action = action if action is not None else induced_action(ext)
    moved = action.act_v(V.inverse[total.right[upper]], k)
    return action.act_h(total.bottom[upper], moved)


def transition_functions(
    ext: ExtensionPresentation, cover: Cover, sections: List[Dict[int, int]], horizontal: bool = False
) -> Transitions:
    """``psi[(j, k, F)]`` for every ``F`` in ``U_j`` and ``U_k``."""
    if len(sections) != len(cover):
        raise CoverError(f"{len(sections)} sections for a cover by {len(cover)} sets")
    action = induced_action(ext) if horizontal else None
    psi: Transitions = {}
    for j, first in enumerate(sections):
        for k, second in enumerate(sections):
            for f in sorted(set(first) & set(second)):
                if horizontal:
                    psi[(j, k, f)] = horizontal_difference(ext, first[f], second[f], action)
                else:
                    psi[(j, k, f)] = vertical_difference(ext, first[f], second[f])
    return psi


@dataclass(frozen=True, eq=False)
class GluedExtension:
    """Classes of chart points and the double groupoid they form."""

    classes: Tuple[frozenset, ...]
    glued: FiniteDoubleGroupoid
    to_total: DoubleGroupoidMorphism


def glue_extension(
    ext: ExtensionPresentation, cover: Cover, sections: List[Dict[int, int]]
) -> GluedExtension:
    psi = transition_functions(ext, cover, sections)
    bundle = ext.bundle
    base = ext.base

    points: List[ChartPoint] = [
        (j, f, k)
        for j, section in enumerate(sections)
        for f in sorted(section)
        for k in bundle.fiber(base.gamma(f)).elements()
    ]
    classes: Dict[ChartPoint, frozenset] = {}
    for j, f, k in points:
        if (j, f, k) in classes:
            continue
        fiber = bundle.fiber(base.gamma(f))
        members = frozenset(
            (m, f, fiber.sub(k, psi[(j, m, f)]))
            for m, section in enumerate(sections)
            if f in section
        )
        for point in members:
            classes[point] = members
    ordered = tuple(sorted(set(classes.values()), key=min))

    # each class is realized by the box its chart coordinates describe
    chart = {}
    for j, section in enumerate(sections):
        for a in ext.total.boxes:
            f = ext.projection.boxes[a]
            if f in section:
                chart[(j, f, box_difference(ext, section, a))] = a
    realize = {}
    for position, members in enumerate(ordered):
        boxes = {chart[point] for point in members}
        if len(boxes) != 1:
            raise ExtensionError(f"chart points {sorted(members)} glue distinct boxes {sorted(boxes)}")
        realize[position] = boxes.pop()
    if sorted(realize.values()) != sorted(ext.total.boxes):
        raise ExtensionError(f"the glued charts do not recover the boxes of {ext.name}")

    total = ext.total
    back = {a: position for position, a in realize.items()}
    glued = FiniteDoubleGroupoid(
        points=total.points,
        vertical=total.vertical,
        horizontal=total.horizontal,
        boxes=tuple(range(len(ordered))),
        top={i: total.top[a] for i, a in realize.items()},
        bottom={i: total.bottom[a] for i, a in realize.items()},
        left={i: total.left[a] for i, a in realize.items()},
        right={i: total.right[a] for i, a in realize.items()},
        hcomp={(back[a], back[b]): back[c] for (a, b), c in total.hcomp.items()},
        vcomp={(back[a], back[b]): back[c] for (a, b), c in total.vcomp.items()},
        idd_v={g: back[a] for g, a in total.idd_v.items()},
        idd_h={x: back[a] for x, a in total.idd_h.items()},
        h_inverse={back[a]: back[b] for a, b in total.h_inverse.items()},
        v_inverse={back[a]: back[b] for a, b in total.v_inverse.items()},
        name=f"{ext.name} glued from {len(sections)} charts",
    )
    logger.debug("glued %d chart points of %s into %d boxes", len(points), ext.name, len(ordered))
    return GluedExtension(ordered, glued, DoubleGroupoidMorphism.over_identity(glued, total, realize))
