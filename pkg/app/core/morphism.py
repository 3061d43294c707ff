from dataclasses import dataclass
from typing import Dict

from app.core.double_groupoid import FiniteDoubleGroupoid
from app.core.groupoid import FiniteGroupoid
from app.models import ViolationKind
from app.schemas.report import ValidationReport


@dataclass(frozen=True)
class DoubleGroupoidMorphism:
    source: FiniteDoubleGroupoid
    target: FiniteDoubleGroupoid
    points: Dict[int, int]
    vertical: Dict[int, int]
    horizontal: Dict[int, int]
    boxes: Dict[int, int]

    @classmethod
    def over_identity(
        cls, source: FiniteDoubleGroupoid, target: FiniteDoubleGroupoid, boxes: Dict[int, int]
    ) -> "DoubleGroupoidMorphism":
        """A box map between double groupoids sharing V, H and P."""
        return cls(
            source,
            target,
            {p: p for p in source.points},
            {g: g for g in source.vertical.arrows},
            {x: x for x in source.horizontal.arrows},
            boxes,
        )

    def compose(self, other: "DoubleGroupoidMorphism") -> "DoubleGroupoidMorphism":
        """``other`` after ``self``."""
        return DoubleGroupoidMorphism(
            self.source,
            other.target,
            {p: other.points[q] for p, q in self.points.items()},
            {g: other.vertical[h] for g, h in self.vertical.items()},
            {x: other.horizontal[y] for x, y in self.horizontal.items()},
            {a: other.boxes[b] for a, b in self.boxes.items()},
        )


def _check_functor(
    src: FiniteGroupoid,
    dst: FiniteGroupoid,
    objects: Dict[int, int],
    arrows: Dict[int, int],
    report: ValidationReport,
    label: str,
) -> None:
    kind = ViolationKind.MORPHISM
    for g in src.arrows:
        image = arrows[g]
        if dst.source[image] != objects[src.source[g]] or dst.end[image] != objects[src.end[g]]:
            report.add(kind, f"{label}: anchors are preserved", (g,))
    for p in src.objects:
        if arrows[src.identity[p]] != dst.identity[objects[p]]:
            report.add(kind, f"{label}: identities are preserved", (p,))
    for (g, h), gh in src.composition.items():
        if dst.composition.get((arrows[g], arrows[h])) != arrows[gh]:
            report.add(kind, f"{label}: composition is preserved", (g, h))


def check_morphism(morphism: DoubleGroupoidMorphism) -> ValidationReport:
    src, dst = morphism.source, morphism.target
    report = ValidationReport(subject=f"{src.name} -> {dst.name}")
    kind = ViolationKind.MORPHISM
    for label, table, domain, codomain in (
        ("points", morphism.points, src.points, dst.points),
        ("vertical", morphism.vertical, src.vertical.arrows, dst.vertical.arrows),
        ("horizontal", morphism.horizontal, src.horizontal.arrows, dst.horizontal.arrows),
        ("boxes", morphism.boxes, src.boxes, dst.boxes),
    ):
        if set(table) != set(domain) or not set(table.values()) <= set(codomain):
            report.add(ViolationKind.STRUCTURAL, f"{label} map is total into the target")
    if not report.ok:
        return report

    _check_functor(src.vertical, dst.vertical, morphism.points, morphism.vertical, report, "V")
    _check_functor(src.horizontal, dst.horizontal, morphism.points, morphism.horizontal, report, "H")

    for a in src.boxes:
        image = morphism.boxes[a]
        t, b, l, r = src.sides(a)
        if dst.sides(image) != (
            morphism.horizontal[t],
            morphism.horizontal[b],
            morphism.vertical[l],
            morphism.vertical[r],
        ):
            report.add(kind, "sides are preserved", (a,))
    for (a, b), ab in src.hcomp.items():
        if dst.hcomp.get((morphism.boxes[a], morphism.boxes[b])) != morphism.boxes[ab]:
            report.add(kind, "horizontal composition is preserved", (a, b))
    for (a, b), ab in src.vcomp.items():
        if dst.vcomp.get((morphism.boxes[a], morphism.boxes[b])) != morphism.boxes[ab]:
            report.add(kind, "vertical composition is preserved", (a, b))
    for g in src.vertical.arrows:
        if morphism.boxes[src.idd_v[g]] != dst.idd_v[morphism.vertical[g]]:
            report.add(kind, "vertical identities are preserved", (g,))
    for x in src.horizontal.arrows:
        if morphism.boxes[src.idd_h[x]] != dst.idd_h[morphism.horizontal[x]]:
            report.add(kind, "horizontal identities are preserved", (x,))
    return report


def is_isomorphism(morphism: DoubleGroupoidMorphism) -> bool:
    return check_morphism(morphism).ok and all(
        len(set(table.values())) == len(table) == size
        for table, size in (
            (morphism.points, len(morphism.target.points)),
            (morphism.vertical, len(morphism.target.vertical.arrows)),
            (morphism.horizontal, len(morphism.target.horizontal.arrows)),
            (morphism.boxes, len(morphism.target.boxes)),
        )
    )
