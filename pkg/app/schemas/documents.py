"""
Input documents. Every table is a list of integer tuples; see ``docs/format.md``.
"""

from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

import app.core.config as cfg
from app.models import ActionKind


class Document(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    version: int = Field(default=cfg.SCHEMA_VERSION, alias="schema")
    name: Optional[str] = None

    @field_validator("version")
    @classmethod
    def known_version(cls, version: int) -> int:
        if version != cfg.SCHEMA_VERSION:
            raise ValueError(f"schema version {version} is not {cfg.SCHEMA_VERSION}")
        return version


class GroupoidDocument(BaseModel):
    objects: List[int]
    # (id, source, end)
    arrows: List[Tuple[int, int, int]]
    # (object, arrow)
    identities: List[Tuple[int, int]]
    # (g, h, g.h)
    composition: List[Tuple[int, int, int]]
    inverses: Optional[List[Tuple[int, int]]] = None


class DoubleGroupoidDocument(Document):
    points: List[int]
    vertical: GroupoidDocument
    horizontal: GroupoidDocument
    # (id, top, bottom, left, right)
    boxes: List[Tuple[int, int, int, int, int]]
    hcomp: List[Tuple[int, int, int]]
    vcomp: List[Tuple[int, int, int]]
    idd_v: List[Tuple[int, int]]
    idd_h: List[Tuple[int, int]]
    h_inverse: Optional[List[Tuple[int, int]]] = None
    v_inverse: Optional[List[Tuple[int, int]]] = None


class FiberEntry(BaseModel):
    point: int
    factors: List[int] = []


class ActionMatrix(BaseModel):
    arrow: int
    matrix: List[List[int]]


class ActionDocument(BaseModel):
    kind: ActionKind = ActionKind.TRIVIAL
    vertical: List[ActionMatrix] = []
    horizontal: List[ActionMatrix] = []


class BundleDocument(Document):
    """Either one ``constant`` fiber for every point or explicit ``fibers``."""

    constant: Optional[List[int]] = None
    fibers: Optional[List[FiberEntry]] = None
    action: ActionDocument = ActionDocument()


class LevelCover(BaseModel):
    level: Tuple[int, int]
    # positions of cells in the enumeration order of the level
    sets: List[List[int]]


class CoverDocument(Document):
    points: Optional[List[List[int]]] = None
    # a cover of the boxes, for gluing extensions from local charts
    boxes: Optional[List[List[int]]] = None
    family: Optional[List[List[List[int]]]] = None
    levels: Optional[List[LevelCover]] = None
    bound: int = 4


class CochainValue(BaseModel):
    entries: List[int]
    value: List[int]


class CocycleDocument(Document):
    base: str
    coordinates: List[int] = []
    sigma: List[CochainValue] = []
    tau: List[CochainValue] = []
