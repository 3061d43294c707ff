"""
``Ext(F, K)`` over a finite family of covers of the points.

For each cover ``U`` the extensions of ``F[U]`` are classified through
``H^1_Tot(F[U])``, which is compared with the Čech ``H^1`` of the vertex
cover of the nerve of ``F``. Refinements give the maps of the directed system;
its value at the finest cover of the family is reported as ``Ext``.
"""

from typing import List, Sequence

from app.cech.bicomplex import cech_h1_total
from app.cech.covers import Cover, cech_action, cech_chart, directed_family, transition_morphism
from app.cech.refinement import vertex_cover
from app.cohomology.cochains import Bicomplex
from app.cohomology.total import TotalCocycle, TotalComplex
from app.core.action import DoubleAction
from app.core.double_groupoid import FiniteDoubleGroupoid
from app.exceptions import CohomologyMismatchError, CoverError
from app.extensions.classify import classify_extensions
from app.extensions.pullback import cocycle_pullback
from app.logger import logger
from app.nerve.cells import Nerve
from app.schemas.cech import ExtEntry, ExtGroupReport, TransitionEntry
from app.schemas.cohomology import GroupSummary


def ext_group(
    dg: FiniteDoubleGroupoid,
    action: DoubleAction,
    covers: Sequence[Cover],
    bound: int = 4,
    cap: int | None = None,
) -> ExtGroupReport:
    if not covers:
        raise CoverError("an empty family of covers")
    finest = directed_family(covers)
    nerve = Nerve(dg)

    charts, actions, complexes, groups = [], [], [], []
    entries: List[ExtEntry] = []
    for position, cover in enumerate(covers):
        chart = cech_chart(dg, cover)
        pulled = cech_action(chart, action)
        complex_ = TotalComplex(Bicomplex(chart.total, pulled))
        h1, classes = classify_extensions(chart.total, pulled, validate=False, cap=cap)
        cech = cech_h1_total(vertex_cover(dg, cover, bound, nerve), action)
        entry = ExtEntry(
            position=position,
            sets=[sorted(members) for members in cover.sets],
            points=len(chart.total.points),
            boxes=len(chart.total.boxes),
            h1=GroupSummary.of(h1),
            cech_h1=GroupSummary.of(cech),
            extension_classes=len(classes),
        )
        if not entry.agrees:
            logger.error("cover %d of %s: H^1_Tot %s, Čech H^1 %s, %d classes",
                         position, dg.name, h1, cech, len(classes))
            raise CohomologyMismatchError(
                f"cover {position} of {dg.name}: H^1_Tot is {h1} but the Čech H^1 of its "
                f"vertex cover is {cech} ({len(classes)} extension classes)",
                entry,
            )
        entries.append(entry)
        charts.append(chart)
        actions.append(pulled)
        complexes.append(complex_)
        groups.append(h1)

    transitions = []
    target = complexes[finest].cohomology(1)
    for position in range(len(covers)):
        morphism = transition_morphism(charts[finest], charts[position])
        source = complexes[position].cohomology(1)
        images = []
        rank = groups[position].rank
        for i in range(rank):
            unit = [1 if j == i else 0 for j in range(rank)]
            z = TotalCocycle.from_vector(complexes[position], source.representative(unit))
            pulled = cocycle_pullback(morphism, actions[position], z, actions[finest])
            images.append(list(target.coordinates(pulled.vector)))
        transitions.append(TransitionEntry(source=position, target=finest, images=images))

    logger.info("Ext of %s over %d covers: %s", dg.name, len(covers), groups[finest])
    return ExtGroupReport(
        subject=dg.name,
        finest=finest,
        ext=GroupSummary.of(groups[finest]),
        entries=entries,
        transitions=transitions,
    )
