from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Tuple

from app.core.bundle import AbelianGroupBundle, GroupPresentation, present_abelian_group
from app.core.groupoid import FiniteGroupoid, validate_groupoid
from app.exceptions import AxiomViolationError, DomainError, StructureError
from app.logger import logger
from app.models import ViolationKind
from app.schemas.report import ValidationReport


@dataclass(frozen=True, eq=False)
class FiniteDoubleGroupoid:
    """
    Boxes over a vertical groupoid V (anchors t, b) and a horizontal groupoid
    H (anchors l, r) sharing the point set.

    ``hcomp[(A, B)]`` is defined iff ``right[A] == left[B]`` and
    ``vcomp[(A, B)]`` (A on top) iff ``bottom[A] == top[B]``.
    """

    points: Tuple[int, ...]
    vertical: FiniteGroupoid
    horizontal: FiniteGroupoid
    boxes: Tuple[int, ...]
    top: Dict[int, int]
    bottom: Dict[int, int]
    left: Dict[int, int]
    right: Dict[int, int]
    hcomp: Dict[Tuple[int, int], int]
    vcomp: Dict[Tuple[int, int], int]
    idd_v: Dict[int, int]
    idd_h: Dict[int, int]
    h_inverse: Dict[int, int]
    v_inverse: Dict[int, int]
    name: str = "double groupoid"

    def __post_init__(self):
        points = set(self.points)
        if set(self.vertical.objects) != points or set(self.horizontal.objects) != points:
            raise StructureError(f"{self.name}: V and H must have the point set as objects")
        boxes = set(self.boxes)
        h_arrows = set(self.horizontal.arrows)
        v_arrows = set(self.vertical.arrows)
        for label, table, domain, codomain in (
            ("top", self.top, boxes, h_arrows),
            ("bottom", self.bottom, boxes, h_arrows),
            ("left", self.left, boxes, v_arrows),
            ("right", self.right, boxes, v_arrows),
            ("vertical identity", self.idd_v, v_arrows, boxes),
            ("horizontal identity", self.idd_h, h_arrows, boxes),
            ("horizontal inverse", self.h_inverse, boxes, boxes),
            ("vertical inverse", self.v_inverse, boxes, boxes),
        ):
            if set(table) != domain:
                raise StructureError(f"{self.name}: {label} is not total on its domain")
            stray = [value for value in table.values() if value not in codomain]
            if stray:
                raise StructureError(
                    f"{self.name}: {label} has entries outside the id range: {stray[:5]}"
                )
        for label, table in (("horizontal", self.hcomp), ("vertical", self.vcomp)):
            for (a, b), c in table.items():
                if a not in boxes or b not in boxes or c not in boxes:
                    raise StructureError(
                        f"{self.name}: {label} composition entry ({a}, {b}) -> {c} outside the id range"
                    )

    # corners
    def tl(self, box: int) -> int:
        return self.horizontal.source[self.top[box]]

    def tr(self, box: int) -> int:
        return self.horizontal.end[self.top[box]]

    def bl(self, box: int) -> int:
        return self.horizontal.source[self.bottom[box]]

    def br(self, box: int) -> int:
        return self.horizontal.end[self.bottom[box]]

    def gamma(self, box: int) -> int:
        """The anchoring vertex ``lb``."""
        return self.bl(box)

    def sides(self, box: int) -> Tuple[int, int, int, int]:
        return (self.top[box], self.bottom[box], self.left[box], self.right[box])

    def theta(self, p: int) -> int:
        return self.idd_v[self.vertical.identity[p]]

    def hcompose(self, a: int, b: int) -> int:
        try:
            return self.hcomp[(a, b)]
        except KeyError:
            raise DomainError(f"{self.name}: boxes {a}, {b} are not horizontally composable")

    def vcompose(self, a: int, b: int) -> int:
        try:
            return self.vcomp[(a, b)]
        except KeyError:
            raise DomainError(f"{self.name}: boxes {a}, {b} are not vertically composable")

    def hcompose_all(self, row) -> int:
        result = None
        for box in row:
            result = box if result is None else self.hcompose(result, box)
        return result

    def vcompose_all(self, column) -> int:
        result = None
        for box in column:
            result = box if result is None else self.vcompose(result, box)
        return result

    def is_idd_v(self, box: int) -> bool:
        return self.idd_v[self.left[box]] == box

    def is_idd_h(self, box: int) -> bool:
        return self.idd_h[self.top[box]] == box

    def is_thin(self, box: int) -> bool:
        return self.is_idd_v(box) or self.is_idd_h(box)

    @cached_property
    def core(self) -> FiniteGroupoid:
        return core_groupoid(self)

    @cached_property
    def horizontal_boxes(self) -> FiniteGroupoid:
        """Boxes with horizontal composition, a groupoid over V."""
        return FiniteGroupoid(
            objects=tuple(self.vertical.arrows),
            arrows=self.boxes,
            source=self.left,
            end=self.right,
            identity=self.idd_v,
            composition=self.hcomp,
            inverse=self.h_inverse,
            name=f"{self.name} (horizontal boxes)",
        )

    @cached_property
    def vertical_boxes(self) -> FiniteGroupoid:
        """Boxes with vertical composition, a groupoid over H."""
        return FiniteGroupoid(
            objects=tuple(self.horizontal.arrows),
            arrows=self.boxes,
            source=self.top,
            end=self.bottom,
            identity=self.idd_h,
            composition=self.vcomp,
            inverse=self.v_inverse,
            name=f"{self.name} (vertical boxes)",
        )

    @cached_property
    def by_left(self) -> Dict[int, List[int]]:
        return _index(self.boxes, lambda a: self.left[a])

    @cached_property
    def by_top(self) -> Dict[int, List[int]]:
        return _index(self.boxes, lambda a: self.top[a])

    @cached_property
    def by_top_left(self) -> Dict[Tuple[int, int], List[int]]:
        return _index(self.boxes, lambda a: (self.top[a], self.left[a]))

    @cached_property
    def by_left_bottom(self) -> Dict[Tuple[int, int], List[int]]:
        return _index(self.boxes, lambda a: (self.left[a], self.bottom[a]))

    @cached_property
    def by_sides(self) -> Dict[Tuple[int, int, int, int], List[int]]:
        return _index(self.boxes, self.sides)


def _index(boxes, key) -> Dict:
    index: Dict = {}
    for box in sorted(boxes):
        index.setdefault(key(box), []).append(box)
    return index


def validate_double_groupoid(
    dg: FiniteDoubleGroupoid, filling: bool = False
) -> ValidationReport:
    """Exhaustive check of every axiom; the report lists all violations."""
    report = ValidationReport(subject=dg.name)
    V, H = dg.vertical, dg.horizontal

    report.extend(validate_groupoid(V), "V: ")
    report.extend(validate_groupoid(H), "H: ")
    report.extend(validate_groupoid(dg.horizontal_boxes), "horizontal boxes: ")
    report.extend(validate_groupoid(dg.vertical_boxes), "vertical boxes: ")

    side = ViolationKind.SIDE_COMPATIBILITY
    for a in dg.boxes:
        t, b, l, r = dg.sides(a)
        if (
            H.source[t] != V.source[l]
            or H.end[t] != V.source[r]
            or H.source[b] != V.end[l]
            or H.end[b] != V.end[r]
        ):
            report.add(side, "corners of a box agree", (a,))

    for (a, b), ab in dg.hcomp.items():
        if dg.right[a] != dg.left[b]:
            continue
        if dg.top[ab] != H.composition.get((dg.top[a], dg.top[b])):
            report.add(side, "t(AB) = t(A)t(B)", (a, b, ab))
        if dg.bottom[ab] != H.composition.get((dg.bottom[a], dg.bottom[b])):
            report.add(side, "b(AB) = b(A)b(B)", (a, b, ab))
        if dg.left[ab] != dg.left[a] or dg.right[ab] != dg.right[b]:
            report.add(side, "l(AB) = l(A), r(AB) = r(B)", (a, b, ab))

    for (a, b), ab in dg.vcomp.items():
        if dg.bottom[a] != dg.top[b]:
            continue
        if dg.left[ab] != V.composition.get((dg.left[a], dg.left[b])):
            report.add(side, "l(A/B) = l(A)l(B)", (a, b, ab))
        if dg.right[ab] != V.composition.get((dg.right[a], dg.right[b])):
            report.add(side, "r(A/B) = r(A)r(B)", (a, b, ab))
        if dg.top[ab] != dg.top[a] or dg.bottom[ab] != dg.bottom[b]:
            report.add(side, "t(A/B) = t(A), b(A/B) = b(B)", (a, b, ab))

    coherence = ViolationKind.IDENTITY_COHERENCE
    for g in V.arrows:
        box = dg.idd_v[g]
        expected = (H.identity[V.source[g]], H.identity[V.end[g]], g, g)
        if dg.sides(box) != expected:
            report.add(coherence, "sides of idd_V(g)", (g, box))
    for x in H.arrows:
        box = dg.idd_h[x]
        expected = (x, x, V.identity[H.source[x]], V.identity[H.end[x]])
        if dg.sides(box) != expected:
            report.add(coherence, "sides of idd_H(x)", (x, box))
    for p in dg.points:
        if dg.idd_v[V.identity[p]] != dg.idd_h[H.identity[p]]:
            report.add(coherence, "idd_V(id P) = idd_H(id P)", (p,))
    for (g, h), gh in V.composition.items():
        if dg.vcomp.get((dg.idd_v[g], dg.idd_v[h])) != dg.idd_v[gh]:
            report.add(coherence, "idd_V(g)/idd_V(h) = idd_V(gh)", (g, h))
    for (x, y), xy in H.composition.items():
        if dg.hcomp.get((dg.idd_h[x], dg.idd_h[y])) != dg.idd_h[xy]:
            report.add(coherence, "idd_H(x)idd_H(y) = idd_H(xy)", (x, y))

    interchange = ViolationKind.INTERCHANGE
    for (k, l), kl in dg.hcomp.items():
        if dg.right[k] != dg.left[l]:
            continue
        for m in dg.by_top.get(dg.bottom[k], []):
            for n in dg.by_top_left.get((dg.bottom[l], dg.right[m]), []):
                mn = dg.hcomp.get((m, n))
                km = dg.vcomp.get((k, m))
                ln = dg.vcomp.get((l, n))
                upper = dg.vcomp.get((kl, mn)) if mn is not None else None
                lower = dg.hcomp.get((km, ln)) if km is not None and ln is not None else None
                if upper is None or upper != lower:
                    report.add(interchange, "(KL)/(MN) = (K/M)(L/N)", (k, l, m, n))

    if filling:
        corners = {(dg.top[a], dg.right[a]) for a in dg.boxes}
        for x in H.arrows:
            for g in V.starting_at(H.end[x]):
                if (x, g) not in corners:
                    report.add(ViolationKind.FILLING, "top-right corner map is onto", (x, g))

    logger.debug("validated %s: %d violations", dg.name, len(report.violations))
    return report


def require_valid(dg: FiniteDoubleGroupoid) -> None:
    report = validate_double_groupoid(dg)
    if not report.ok:
        raise AxiomViolationError(f"{dg.name} is not a double groupoid", report)


def core_groupoid(dg: FiniteDoubleGroupoid) -> FiniteGroupoid:
    """Boxes with trivial top and right sides, from bottom-left to top-right."""
    V, H = dg.vertical, dg.horizontal
    core = [a for a in sorted(dg.boxes) if H.is_identity(dg.top[a]) and V.is_identity(dg.right[a])]
    source = {e: dg.bl(e) for e in core}
    end = {e: dg.tr(e) for e in core}
    composition = {}
    for e in core:
        for f in core:
            if end[e] == source[f]:
                composition[(e, f)] = core_product(dg, e, f)
    inverse = {}
    for e in core:
        upper = dg.idd_v[V.inverse[dg.left[e]]]
        inverse[e] = dg.vcompose(upper, dg.h_inverse[e])
    return FiniteGroupoid(
        objects=tuple(dg.points),
        arrows=tuple(core),
        source=source,
        end=end,
        identity={p: dg.theta(p) for p in dg.points},
        composition=composition,
        inverse=inverse,
        name=f"core of {dg.name}",
    )


def core_product(dg: FiniteDoubleGroupoid, e: int, a: int) -> int:
    """``{idd_V l(A), A ; E, idd_H b(A)}``; the core product, and the core action on boxes."""
    upper = dg.hcompose(dg.idd_v[dg.left[a]], a)
    lower = dg.hcompose(e, dg.idd_h[dg.bottom[a]])
    return dg.vcompose(upper, lower)


@dataclass(frozen=True)
class KernelBundle:
    bundle: AbelianGroupBundle
    presentations: Dict[int, GroupPresentation]

    def element(self, box: int) -> Tuple[int, Tuple[int, ...]]:
        for p, presentation in self.presentations.items():
            if box in presentation.coordinates:
                return p, presentation.coordinates[box]
        raise DomainError(f"box {box} is not in the kernel bundle")

    def box(self, p: int, x) -> int:
        return self.presentations[p].elements[tuple(x)]


def kernel_boxes(dg: FiniteDoubleGroupoid) -> Dict[int, List[int]]:
    V, H = dg.vertical, dg.horizontal
    fibers: Dict[int, List[int]] = {p: [] for p in dg.points}
    for a in sorted(dg.boxes):
        t, b, l, r = dg.sides(a)
        if all(H.is_identity(x) for x in (t, b)) and all(V.is_identity(g) for g in (l, r)):
            fibers[dg.tl(a)].append(a)
    return fibers


def kernel_bundle(dg: FiniteDoubleGroupoid) -> KernelBundle:
    presentations = {}
    for p, members in kernel_boxes(dg).items():
        for a in members:
            for b in members:
                if dg.vcompose(a, b) != dg.hcompose(a, b):
                    raise AxiomViolationError(
                        f"{dg.name}: compositions disagree on kernel boxes {a}, {b}"
                    )
                if dg.vcompose(a, b) != dg.vcompose(b, a):
                    raise AxiomViolationError(f"{dg.name}: kernel fiber over {p} is not abelian")
        presentations[p] = present_abelian_group(members, dg.vcompose, dg.theta(p))
    bundle = AbelianGroupBundle({p: pres.group for p, pres in presentations.items()})
    logger.debug(
        "kernel bundle of %s: %s",
        dg.name,
        {p: str(group) for p, group in bundle.fibers.items()},
    )
    return KernelBundle(bundle=bundle, presentations=presentations)


def is_slim(dg: FiniteDoubleGroupoid) -> bool:
    return all(len(group) == 1 for group in dg.by_sides.values())


def frame(dg: FiniteDoubleGroupoid) -> Tuple[FiniteDoubleGroupoid, Dict[int, int]]:
    """The slim double groupoid of occurring side quadruples, with the quotient box map."""
    quadruples = sorted(dg.by_sides)
    position = {q: i for i, q in enumerate(quadruples)}
    rep = {position[q]: members[0] for q, members in dg.by_sides.items()}
    to_frame = {a: position[dg.sides(a)] for a in dg.boxes}
    hcomp, vcomp = {}, {}
    for i, a in rep.items():
        for b in dg.by_left.get(dg.right[a], []):
            hcomp[(i, to_frame[b])] = to_frame[dg.hcomp[(a, b)]]
        for b in dg.by_top.get(dg.bottom[a], []):
            vcomp[(i, to_frame[b])] = to_frame[dg.vcomp[(a, b)]]
    slim = FiniteDoubleGroupoid(
        points=dg.points,
        vertical=dg.vertical,
        horizontal=dg.horizontal,
        boxes=tuple(range(len(quadruples))),
        top={i: q[0] for i, q in enumerate(quadruples)},
        bottom={i: q[1] for i, q in enumerate(quadruples)},
        left={i: q[2] for i, q in enumerate(quadruples)},
        right={i: q[3] for i, q in enumerate(quadruples)},
        hcomp=hcomp,
        vcomp=vcomp,
        idd_v={g: to_frame[a] for g, a in dg.idd_v.items()},
        idd_h={x: to_frame[a] for x, a in dg.idd_h.items()},
        h_inverse={i: to_frame[dg.h_inverse[a]] for i, a in rep.items()},
        v_inverse={i: to_frame[dg.v_inverse[a]] for i, a in rep.items()},
        name=f"frame of {dg.name}",
    )
    return slim, to_frame
