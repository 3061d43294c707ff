import logging
import sys
from pathlib import Path
from typing import Callable, Optional

import typer
from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

import app.core.config as cfg
import app.reports as reports
from app.core.action import DoubleAction
from app.core.builders import random_double_groupoid
from app.core.double_groupoid import FiniteDoubleGroupoid
from app.exceptions import DoubleGroupoidError, MalformedInputError
from app.ingest.coefficients import coefficients
from app.ingest.covers import bisimplicial_from_document, box_cover, cover_family
from app.ingest.double_groupoid import double_groupoid_from_document
from app.ingest.files import dump_document, load_document
from app.logger import logger
from app.models import Command, OutputFormat
from app.schemas.documents import BundleDocument, CoverDocument, DoubleGroupoidDocument
from app.schemas.run import RunConfig

app = typer.Typer(
    name="dgc",
    help="Exact cohomology and extensions of finite double groupoids.",
    add_completion=False,
    no_args_is_help=True,
)

out = Console(soft_wrap=True)
err = Console(stderr=True)

FormatOption = typer.Option(OutputFormat.TEXT.value, "--format", help="Report format.")
MaxCellsOption = typer.Option(cfg.MAX_CELLS, "--max-cells", help="Cap on cells per bidegree.")
BundleOption = typer.Option(None, "--bundle", help="Bundle document; constant Z/2, trivially acted on, if omitted.")


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log at debug level."),
):
    handler = RichHandler(console=err, show_path=False)
    logger.handlers = [handler]
    logger.propagate = False
    logger.setLevel(logging.DEBUG if verbose else cfg.LOG_LEVEL.upper())


def load_double_groupoid(path: Path) -> FiniteDoubleGroupoid:
    return double_groupoid_from_document(load_document(DoubleGroupoidDocument, path))


def load_action(dg: FiniteDoubleGroupoid, bundle: Path | None) -> DoubleAction:
    return coefficients(dg, load_document(BundleDocument, bundle) if bundle is not None else None)


def configure(**fields) -> RunConfig:
    try:
        return RunConfig(**fields)
    except ValidationError as error:
        first = error.errors()[0]
        raise MalformedInputError(f"{'.'.join(map(str, first['loc']))}: {first['msg']}")


def run(command: Command, fields: dict, produce: Callable[[RunConfig], BaseModel],
        show: Callable[[BaseModel], None], ok: Callable[[BaseModel], bool] = lambda report: True) -> None:
    """Build the run configuration, produce the report and map errors to exit statuses."""
    try:
        config = configure(command=command, **fields)
        logger.debug("running %s", config.model_dump_json())
        report = produce(config)
    except DoubleGroupoidError as error:
        err.print(f"[bold red]error[/]: {error.message}", highlight=False)
        raise typer.Exit(error.exit_code)
    if config.format == OutputFormat.JSON:
        sys.stdout.write(dump_document(report))
    else:
        show(report)
    if not ok(report):
        raise typer.Exit(1)


def _show_validation(report) -> None:
    s = report.structure
    out.print(f"{s.name}: {s.points} points, {s.vertical_arrows} vertical and "
              f"{s.horizontal_arrows} horizontal arrows, {s.boxes} boxes")
    if report.report.ok:
        out.print("valid double groupoid")
    for violation in report.report.violations:
        out.print(f"{violation.kind.value}: {violation.axiom} {violation.witness} {violation.detail}".rstrip())


@app.command()
def validate(
    path: Optional[Path] = typer.Argument(None, help="Double groupoid document."),
    generate: bool = typer.Option(False, "--random", help="Validate a seeded random double groupoid instead."),
    seed: int = typer.Option(cfg.DEFAULT_SEED, "--seed"),
    filling: bool = typer.Option(False, "--filling", help="Also require the filling condition."),
    report_format: OutputFormat = FormatOption,
):
    """Check every double groupoid axiom; exit 1 when one fails."""
    if path is None and not generate:
        err.print("[bold red]error[/]: give a document or --random", highlight=False)
        raise typer.Exit(3)

    def produce(config: RunConfig):
        if generate:
            logger.info("random double groupoid with seed %d", config.seed)
            dg = random_double_groupoid(config.seed)
        else:
            dg = load_double_groupoid(config.inputs[0])
        return reports.validate_report(dg, config.filling)

    run(
        Command.VALIDATE,
        dict(inputs=[path] if path else [], seed=seed, filling=filling, format=report_format),
        produce,
        _show_validation,
        lambda report: report.report.ok,
    )


@app.command()
def core(path: Path, report_format: OutputFormat = FormatOption):
    """The core groupoid: boxes with trivial top and right sides."""

    def show(report) -> None:
        out.print(f"core of {report.subject}: {len(report.arrows)} arrows")
        for e, source, end in report.edges:
            out.print(f"  {e}: {source} -> {end}")

    run(
        Command.CORE,
        dict(inputs=[path], format=report_format),
        lambda config: reports.core_report(load_double_groupoid(config.inputs[0])),
        show,
        lambda report: report.groupoid.ok,
    )


@app.command()
def kbundle(path: Path, report_format: OutputFormat = FormatOption):
    """The kernel bundle: boxes with four identity sides, per point."""

    def show(report) -> None:
        for fiber in report.fibers:
            out.print(f"{fiber.point}: {fiber.group.text}  boxes {fiber.boxes}")

    run(
        Command.KBUNDLE,
        dict(inputs=[path], format=report_format),
        lambda config: reports.kernel_bundle_report(load_double_groupoid(config.inputs[0])),
        show,
    )


@app.command()
def nerve(
    path: Path,
    bound: int = typer.Option(2, "--bound", help="Largest bidegree component."),
    dump: bool = typer.Option(False, "--dump", help="Include the cells."),
    max_cells: int = MaxCellsOption,
    report_format: OutputFormat = FormatOption,
):
    """Cell counts of the double nerve, with orbit counts of corner matrices."""

    def show(report) -> None:
        table = Table(title=f"nerve of {report.subject}")
        for column in ("bidegree", "cells", "non-degenerate", "orbits"):
            table.add_column(column, justify="right")
        for level in report.levels:
            table.add_row(str(tuple(level.bidegree)), str(level.cells), str(level.nondegenerate), str(level.orbits))
        out.print(table)

    run(
        Command.NERVE,
        dict(inputs=[path], max_cells=max_cells, degree=bound, format=report_format),
        lambda config: reports.nerve_report(
            load_double_groupoid(config.inputs[0]), config.degree, dump, config.max_cells
        ),
        show,
    )


@app.command()
def cohomology(
    path: Path,
    bundle: Optional[Path] = BundleOption,
    degree: int = typer.Option(1, "--degree"),
    dump_matrices: bool = typer.Option(False, "--dump-matrices"),
    max_cells: int = MaxCellsOption,
    report_format: OutputFormat = FormatOption,
):
    """``H^n_Tot`` with coefficients in an acted-on bundle."""

    def produce(config: RunConfig):
        dg = load_double_groupoid(config.inputs[0])
        return reports.cohomology_report(
            dg, load_action(dg, config.bundle), config.degree, dump_matrices, config.max_cells
        )

    run(
        Command.COHOMOLOGY,
        dict(inputs=[path], bundle=bundle, degree=degree, max_cells=max_cells, format=report_format),
        produce,
        lambda report: out.print(f"H^{report.degree}_Tot({report.subject}) = {report.group.text}"),
    )


@app.command()
def classify(
    path: Path,
    bundle: Optional[Path] = BundleOption,
    output: Optional[Path] = typer.Option(None, "--output", help="Directory for one cocycle file per class."),
    max_cells: int = MaxCellsOption,
    report_format: OutputFormat = FormatOption,
):
    """One smash product per extension class."""

    def produce(config: RunConfig):
        dg = load_double_groupoid(config.inputs[0])
        return reports.classification_report(
            dg, load_action(dg, config.bundle), config.output,
            config.max_group_enumeration, config.max_cells,
        )

    def show(report) -> None:
        table = Table(title=f"extensions of {report.subject} by {report.bundle}: H^1_Tot = {report.h1.text}")
        for column in ("class", "coordinates", "boxes", "valid"):
            table.add_column(column)
        for row in report.classes:
            table.add_row(str(row.index), str(row.coordinates), str(row.boxes), str(row.valid))
        out.print(table)

    run(
        Command.CLASSIFY,
        dict(inputs=[path], bundle=bundle, output=output, max_cells=max_cells, format=report_format),
        produce,
        show,
        lambda report: all(row.valid is not False for row in report.classes),
    )


@app.command()
def cech(
    path: Path,
    bundle: Optional[Path] = BundleOption,
    cover: Optional[Path] = typer.Option(None, "--cover", help="Cover document."),
    finest: bool = typer.Option(False, "--finest", help="Use the cover by single cells."),
    chain: bool = typer.Option(False, "--chain", help="Ext over the family of covers in --cover."),
    glue: bool = typer.Option(False, "--glue", help="Glue every extension class over the boxes cover in --cover."),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for the local sections used by --glue."),
    report_format: OutputFormat = FormatOption,
):
    """Čech ``H^1_Tot`` of a bisimplicial cover, ``Ext`` over a family of covers, or gluing from charts."""
    if (chain or glue) and cover is None:
        err.print("[bold red]error[/]: --chain and --glue need --cover", highlight=False)
        raise typer.Exit(3)
    if chain and glue:
        err.print("[bold red]error[/]: --chain and --glue exclude each other", highlight=False)
        raise typer.Exit(3)

    def produce(config: RunConfig):
        dg = load_double_groupoid(config.inputs[0])
        action = load_action(dg, config.bundle)
        if config.cover is None or finest:
            return reports.cech_report(dg, action)
        doc = load_document(CoverDocument, config.cover)
        if chain:
            return reports.chain_report(dg, action, cover_family(doc, dg), doc.bound)
        if config.glue:
            return reports.gluing_report(
                dg, action, box_cover(doc, dg), seed, config.max_group_enumeration
            )
        return reports.cech_report(dg, action, bisimplicial_from_document(doc, dg), compare=False)

    def show(report) -> None:
        if chain:
            for entry in report.entries:
                out.print(f"cover {entry.position} {entry.sets}: H^1_Tot = {entry.h1.text}, "
                          f"Čech H^1 = {entry.cech_h1.text}, {entry.extension_classes} classes")
            out.print(f"Ext({report.subject}) = {report.ext.text} at cover {report.finest}")
        elif glue:
            table = Table(title=f"extensions of {report.subject} glued over {report.sets}")
            for column in ("class", "coordinates", "boxes", "glued", "transitions", "consistent", "valid"):
                table.add_column(column)
            for row in report.classes:
                table.add_row(str(row.index), str(row.coordinates), str(row.boxes), str(row.glued_boxes),
                              str(row.transitions), str(row.consistent), str(row.valid))
            out.print(table)
        else:
            out.print(f"Čech H^1_Tot({report.subject}) = {report.group.text}")
            if report.discrete is not None:
                out.print(f"discrete H^1_Tot = {report.discrete.text}")

    def agrees(report) -> bool:
        if chain or glue:
            return report.ok
        return report.agrees is not False

    run(
        Command.CECH,
        dict(inputs=[path], bundle=bundle, cover=cover, glue=glue,
             seed=seed if seed is not None else cfg.DEFAULT_SEED, format=report_format),
        produce,
        show,
        agrees,
    )


if __name__ == "__main__":
    app()
