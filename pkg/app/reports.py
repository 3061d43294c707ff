"""
Reports shared by the command line and the HTTP routers. Each takes domain
objects and returns a pydantic document.
"""

from pathlib import Path
from typing import List

import app.core.config as cfg
from app.cech.bicomplex import cech_h1_total
from app.cech.covers import Cover
from app.cech.ext import ext_group
from app.cech.gluing import glue_extension, local_sections, transition_functions
from app.cech.refinement import BisimplicialCover, finest_cover
from app.cohomology.cochains import Bicomplex
from app.cohomology.total import TotalComplex
from app.core.action import DoubleAction
from app.core.bundle import AbelianGroupBundle
from app.core.double_groupoid import (
    FiniteDoubleGroupoid,
    core_groupoid,
    is_slim,
    kernel_bundle,
    require_valid,
    validate_double_groupoid,
)
from app.core.groupoid import validate_groupoid
from app.extensions.classify import classify_extensions
from app.ingest.cocycles import cocycle_to_document
from app.ingest.files import write_document
from app.logger import logger
from app.nerve.cells import Nerve, is_degenerate
from app.nerve.orbits import orbits
from app.schemas.cech import CechReport, ExtGroupReport, GluedClass, GluingReport
from app.schemas.cohomology import CohomologyReport, GroupSummary, MatrixDump
from app.schemas.extensions import ClassificationReport, ClassRow
from app.schemas.structure import (
    CoreReport,
    FiberSummary,
    KernelBundleReport,
    NerveCellDump,
    NerveLevel,
    NerveReport,
    StructureSummary,
    ValidateResponse,
)


def structure_summary(dg: FiniteDoubleGroupoid) -> StructureSummary:
    return StructureSummary(
        name=dg.name,
        points=len(dg.points),
        vertical_arrows=len(dg.vertical.arrows),
        horizontal_arrows=len(dg.horizontal.arrows),
        boxes=len(dg.boxes),
        slim=is_slim(dg),
    )


def validate_report(dg: FiniteDoubleGroupoid, filling: bool = False) -> ValidateResponse:
    return ValidateResponse(
        structure=structure_summary(dg), report=validate_double_groupoid(dg, filling=filling)
    )


def core_report(dg: FiniteDoubleGroupoid) -> CoreReport:
    require_valid(dg)
    core = core_groupoid(dg)
    return CoreReport(
        subject=dg.name,
        arrows=sorted(core.arrows),
        edges=[[e, core.source[e], core.end[e]] for e in sorted(core.arrows)],
        groupoid=validate_groupoid(core),
    )


def kernel_bundle_report(dg: FiniteDoubleGroupoid) -> KernelBundleReport:
    require_valid(dg)
    kb = kernel_bundle(dg)
    return KernelBundleReport(
        subject=dg.name,
        fibers=[
            FiberSummary(
                point=p,
                group=GroupSummary.of(kb.bundle.fiber(p)),
                boxes=sorted(kb.presentations[p].coordinates),
            )
            for p in kb.bundle.points
        ],
    )


def nerve_report(
    dg: FiniteDoubleGroupoid, bound: int = 2, dump: bool = False, max_cells: int | None = None
) -> NerveReport:
    """Cells of every bidegree ``(m, n)`` with ``m, n <= bound``."""
    nerve = Nerve(dg, max_cells)
    levels: List[NerveLevel] = []
    for m in range(bound + 1):
        for n in range(bound + 1):
            cells = nerve.cells(m, n)
            levels.append(
                NerveLevel(
                    bidegree=[m, n],
                    cells=len(cells),
                    nondegenerate=len(nerve.nondegenerate(m, n)),
                    orbits=len(orbits(dg, m, n)),
                    dump=[
                        NerveCellDump(
                            rows=cell.to_matrix(),
                            degenerate=is_degenerate(dg, cell),
                        )
                        for cell in cells
                    ] if dump else None,
                )
            )
    return NerveReport(
        subject=dg.name,
        levels=levels,
        counts={f"{level.bidegree[0]},{level.bidegree[1]}": level.cells for level in levels},
    )


def cohomology_report(
    dg: FiniteDoubleGroupoid,
    action: DoubleAction,
    degree: int = 1,
    dump_matrices: bool = False,
    max_cells: int | None = None,
) -> CohomologyReport:
    require_valid(dg)
    complex_ = TotalComplex(Bicomplex(dg, action, True, max_cells))
    group = complex_.cohomology(degree).group
    logger.info("H^%d_Tot(%s) = %s", degree, dg.name, group)
    matrices = None
    if dump_matrices:
        matrices = []
        for n in ([degree - 1] if degree > 0 else []) + [degree]:
            matrix = complex_.differential(n)
            matrices.append(
                MatrixDump(
                    degree=n,
                    rows=matrix.num_rows,
                    columns=matrix.num_columns,
                    entries=matrix.to_triples(),
                    moduli=complex_.moduli(n + 1),
                )
            )
    return CohomologyReport(
        subject=dg.name,
        degree=degree,
        group=GroupSummary.of(group),
        chain_groups=[GroupSummary.of(complex_.group(n)) for n in range(degree + 2)],
        matrices=matrices,
    )


def bundle_label(bundle: AbelianGroupBundle) -> str:
    if bundle.is_constant and bundle.points:
        return str(bundle.fiber(bundle.points[0]))
    return ", ".join(f"{p}: {bundle.fiber(p)}" for p in bundle.points)


def classification_report(
    dg: FiniteDoubleGroupoid,
    action: DoubleAction,
    output: Path | None = None,
    cap: int | None = None,
    max_cells: int | None = None,
) -> ClassificationReport:
    """One row per class of extensions; with ``output``, one cocycle file per class."""
    require_valid(dg)
    h1, classes = classify_extensions(dg, action, validate=True, cap=cap, max_cells=max_cells)
    rows = []
    for extension in classes:
        path = None
        if output is not None:
            path = Path(output) / f"class_{extension.index}.json"
            write_document(
                cocycle_to_document(
                    extension.cocycle, extension.extension.name, extension.coordinates
                ),
                path,
            )
        rows.append(
            ClassRow(
                index=extension.index,
                coordinates=list(extension.coordinates),
                boxes=len(extension.extension.total.boxes),
                valid=extension.valid,
                cocycle_file=str(path) if path is not None else None,
            )
        )
    return ClassificationReport(
        subject=dg.name, bundle=bundle_label(action.bundle), h1=GroupSummary.of(h1), classes=rows
    )


def cech_report(
    dg: FiniteDoubleGroupoid,
    action: DoubleAction,
    cover: BisimplicialCover | None = None,
    compare: bool = True,
) -> CechReport:
    """Čech ``H^1_Tot`` of ``cover`` (the finest cover by default), beside the discrete group."""
    require_valid(dg)
    cover = cover if cover is not None else finest_cover(dg)
    group = cech_h1_total(cover, action)
    discrete = None
    if compare:
        discrete = GroupSummary.of(TotalComplex(Bicomplex(dg, action)).cohomology(1).group)
    return CechReport(
        subject=dg.name,
        indices={f"{m},{n}": cover.size(m, n) for m, n in cover.levels()},
        group=GroupSummary.of(group),
        discrete=discrete,
    )


def chain_report(
    dg: FiniteDoubleGroupoid, action: DoubleAction, covers: List[Cover], bound: int = 4
) -> ExtGroupReport:
    require_valid(dg)
    return ext_group(dg, action, covers, bound, cap=cfg.MAX_GROUP_ENUMERATION)


def gluing_report(
    dg: FiniteDoubleGroupoid,
    action: DoubleAction,
    cover: Cover,
    seed: int | None = None,
    cap: int | None = None,
) -> GluingReport:
    """Every extension class glued back from charts over ``cover``, with seeded local sections."""
    require_valid(dg)
    _, classes = classify_extensions(dg, action, validate=False, cap=cap)
    rows = []
    for extension in classes:
        ext = extension.extension
        sections = local_sections(ext, cover, seed)
        vertical = transition_functions(ext, cover, sections)
        horizontal = transition_functions(ext, cover, sections, horizontal=True)
        glued = glue_extension(ext, cover, sections)
        rows.append(
            GluedClass(
                index=extension.index,
                coordinates=list(extension.coordinates),
                boxes=len(ext.total.boxes),
                glued_boxes=len(glued.glued.boxes),
                transitions=len(vertical),
                consistent=vertical == horizontal,
                valid=validate_double_groupoid(glued.glued).ok,
            )
        )
    logger.info("glued %d extension classes of %s over %d sets", len(rows), dg.name, len(cover))
    return GluingReport(
        subject=dg.name, sets=[sorted(members) for members in cover.sets], seed=seed, classes=rows
    )
