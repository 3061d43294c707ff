from typing import Dict, List, Optional

from pydantic import BaseModel

from app.schemas.cohomology import GroupSummary


class CechReport(BaseModel):
    subject: str
    indices: Dict[str, int]
    group: GroupSummary
    discrete: Optional[GroupSummary] = None

    @property
    def agrees(self) -> bool | None:
        if self.discrete is None:
            return None
        return self.discrete.invariant_factors == self.group.invariant_factors


class ExtEntry(BaseModel):
    position: int
    sets: List[List[int]]
    points: int
    boxes: int
    h1: GroupSummary
    cech_h1: GroupSummary
    extension_classes: int

    @property
    def agrees(self) -> bool:
        return (
            self.h1.invariant_factors == self.cech_h1.invariant_factors
            and self.extension_classes == self.h1.order
        )


class TransitionEntry(BaseModel):
    """Images of the generators of ``H^1`` over ``source`` in the coordinates over ``target``."""

    source: int
    target: int
    images: List[List[int]]


class ExtGroupReport(BaseModel):
    subject: str
    finest: int
    ext: GroupSummary
    entries: List[ExtEntry] = []
    transitions: List[TransitionEntry] = []

    @property
    def ok(self) -> bool:
        return all(entry.agrees for entry in self.entries)


class GluedClass(BaseModel):
    index: int
    coordinates: List[int]
    boxes: int
    glued_boxes: int
    transitions: int
    # vertical-first and horizontal-first transition functions coincide
    consistent: bool
    valid: bool


class GluingReport(BaseModel):
    subject: str
    sets: List[List[int]]
    seed: Optional[int] = None
    classes: List[GluedClass] = []

    @property
    def ok(self) -> bool:
        return all(row.consistent and row.valid and row.boxes == row.glued_boxes for row in self.classes)
