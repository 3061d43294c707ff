from typing import List

from pydantic import BaseModel

from app.models import ViolationKind


class Violation(BaseModel):
    kind: ViolationKind
    axiom: str
    witness: List[int] = []
    detail: str = ""


class ValidationReport(BaseModel):
    subject: str
    violations: List[Violation] = []

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(
        self, kind: ViolationKind, axiom: str, witness=(), detail: str = ""
    ) -> None:
        self.violations.append(
            Violation(kind=kind, axiom=axiom, witness=list(witness), detail=detail)
        )

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for violation in other.violations:
            axiom = f"{prefix}{violation.axiom}" if prefix else violation.axiom
            self.violations.append(violation.model_copy(update={"axiom": axiom}))

    def kinds(self) -> set[ViolationKind]:
        return {violation.kind for violation in self.violations}
