from typing import List, Optional

from pydantic import BaseModel

from app.core.bundle import FinAbGroup


class GroupSummary(BaseModel):
    invariant_factors: List[int]
    order: int
    text: str

    @classmethod
    def of(cls, group: FinAbGroup) -> "GroupSummary":
        return cls(
            invariant_factors=list(group.invariant_factors), order=group.order, text=str(group)
        )


class MatrixDump(BaseModel):
    degree: int
    rows: int
    columns: int
    entries: List[List[int]]
    moduli: List[int]


class CohomologyReport(BaseModel):
    subject: str
    degree: int
    group: GroupSummary
    chain_groups: List[GroupSummary]
    matrices: Optional[List[MatrixDump]] = None


class ExactnessNode(BaseModel):
    position: str
    degree: int
    exact: bool
    image_order: int
    kernel_order: int


class ExactnessReport(BaseModel):
    subject: str
    interior: List[GroupSummary] = []
    full: List[GroupSummary] = []
    edges: List[GroupSummary] = []
    groupoids: List[GroupSummary] = []
    nodes: List[ExactnessNode] = []

    @property
    def ok(self) -> bool:
        return all(node.exact for node in self.nodes)
