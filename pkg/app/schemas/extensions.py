from typing import List, Optional

from pydantic import BaseModel

from app.schemas.cohomology import GroupSummary


class ClassRow(BaseModel):
    index: int
    coordinates: List[int]
    boxes: int
    valid: Optional[bool] = None
    cocycle_file: Optional[str] = None


class ClassificationReport(BaseModel):
    subject: str
    bundle: str
    h1: GroupSummary
    classes: List[ClassRow]
