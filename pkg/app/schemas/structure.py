from typing import Dict, List

from pydantic import BaseModel

from app.schemas.cohomology import GroupSummary
from app.schemas.report import ValidationReport


class StructureSummary(BaseModel):
    name: str
    points: int
    vertical_arrows: int
    horizontal_arrows: int
    boxes: int
    slim: bool


class ValidateResponse(BaseModel):
    structure: StructureSummary
    report: ValidationReport


class CoreReport(BaseModel):
    subject: str
    arrows: List[int]
    # (arrow, source, end)
    edges: List[List[int]]
    groupoid: ValidationReport


class FiberSummary(BaseModel):
    point: int
    group: GroupSummary
    boxes: List[int]


class KernelBundleReport(BaseModel):
    subject: str
    fibers: List[FiberSummary]


class NerveCellDump(BaseModel):
    """Rows of boxes; row ``i`` and column ``j`` of the dump hold ``A_{i+1, j+1}``."""

    rows: List[List[int]]
    degenerate: bool


class NerveLevel(BaseModel):
    bidegree: List[int]
    cells: int
    nondegenerate: int
    orbits: int | None = None
    dump: List[NerveCellDump] | None = None


class NerveReport(BaseModel):
    subject: str
    levels: List[NerveLevel]
    counts: Dict[str, int] = {}
