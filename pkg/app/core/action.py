from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Mapping, Sequence

from app.core.bundle import AbelianGroupBundle, Element, FinAbGroup, apply_matrix
from app.core.double_groupoid import FiniteDoubleGroupoid, kernel_bundle
from app.core.groupoid import FiniteGroupoid
from app.exceptions import StructureError
from app.logger import logger
from app.models import ViolationKind
from app.schemas.report import ValidationReport

Table = Dict[Element, Element]


@dataclass(frozen=True, eq=False)
class GroupoidAction:
    """Left action of a groupoid on a bundle: arrow ``g`` maps fiber(end g) to fiber(source g)."""

    groupoid: FiniteGroupoid
    bundle: AbelianGroupBundle
    tables: Dict[int, Table]

    def source_fiber(self, g: int) -> FinAbGroup:
        return self.bundle.fiber(self.groupoid.end[g])

    def target_fiber(self, g: int) -> FinAbGroup:
        return self.bundle.fiber(self.groupoid.source[g])

    def act(self, g: int, x: Sequence[int]) -> Element:
        return self.tables[g][self.source_fiber(g).reduce(x)]

    @cached_property
    def matrices(self) -> Dict[int, List[List[int]]]:
        """Integer matrix of each arrow, columns are the images of the generators."""
        out = {}
        for g in self.groupoid.arrows:
            source, target = self.source_fiber(g), self.target_fiber(g)
            columns = [self.tables[g][source.unit(j)] for j in range(source.rank)]
            out[g] = [[column[i] for column in columns] for i in range(target.rank)]
        return out

    def apply(self, g: int, x: Sequence[int]) -> Element:
        """Image through the generator matrix (agrees with ``act`` on valid actions)."""
        return apply_matrix(self.matrices[g], x, self.target_fiber(g))

    @classmethod
    def trivial(cls, groupoid: FiniteGroupoid, bundle: AbelianGroupBundle) -> "GroupoidAction":
        tables = {}
        for g in groupoid.arrows:
            source = bundle.fiber(groupoid.end[g])
            if source != bundle.fiber(groupoid.source[g]):
                raise StructureError(
                    f"trivial action of {groupoid.name} needs equal fibers along arrow {g}"
                )
            tables[g] = {x: x for x in source.elements()}
        return cls(groupoid, bundle, tables)

    @classmethod
    def from_matrices(
        cls,
        groupoid: FiniteGroupoid,
        bundle: AbelianGroupBundle,
        matrices: Mapping[int, Sequence[Sequence[int]]],
    ) -> "GroupoidAction":
        tables = {}
        for g in groupoid.arrows:
            source = bundle.fiber(groupoid.end[g])
            target = bundle.fiber(groupoid.source[g])
            matrix = matrices.get(g)
            if matrix is None:
                if not groupoid.is_identity(g):
                    raise StructureError(f"no action matrix for arrow {g}")
                matrix = [[int(i == j) for j in range(source.rank)] for i in range(target.rank)]
            if len(matrix) != target.rank or any(len(row) != source.rank for row in matrix):
                raise StructureError(f"action matrix of arrow {g} has the wrong shape")
            tables[g] = {x: apply_matrix(matrix, x, target) for x in source.elements()}
        return cls(groupoid, bundle, tables)


@dataclass(frozen=True, eq=False)
class DoubleAction:
    """Actions of V and H on one bundle: ``vertical.act(g, k)`` and ``horizontal.act(x, k)``."""

    dg: FiniteDoubleGroupoid
    bundle: AbelianGroupBundle
    vertical: GroupoidAction
    horizontal: GroupoidAction

    def act_v(self, g: int, x: Sequence[int]) -> Element:
        return self.vertical.act(g, x)

    def act_h(self, x: int, k: Sequence[int]) -> Element:
        return self.horizontal.act(x, k)

    @property
    def is_trivial(self) -> bool:
        return all(
            all(k == y for k, y in table.items())
            for action in (self.vertical, self.horizontal)
            for table in action.tables.values()
        )

    @classmethod
    def trivial(cls, dg: FiniteDoubleGroupoid, bundle: AbelianGroupBundle) -> "DoubleAction":
        return cls(
            dg,
            bundle,
            GroupoidAction.trivial(dg.vertical, bundle),
            GroupoidAction.trivial(dg.horizontal, bundle),
        )

    @classmethod
    def from_matrices(
        cls,
        dg: FiniteDoubleGroupoid,
        bundle: AbelianGroupBundle,
        vertical: Mapping[int, Sequence[Sequence[int]]],
        horizontal: Mapping[int, Sequence[Sequence[int]]],
    ) -> "DoubleAction":
        return cls(
            dg,
            bundle,
            GroupoidAction.from_matrices(dg.vertical, bundle, vertical),
            GroupoidAction.from_matrices(dg.horizontal, bundle, horizontal),
        )

    @classmethod
    def from_tables(
        cls,
        dg: FiniteDoubleGroupoid,
        bundle: AbelianGroupBundle,
        vertical: Dict[int, Table],
        horizontal: Dict[int, Table],
    ) -> "DoubleAction":
        return cls(
            dg,
            bundle,
            GroupoidAction(dg.vertical, bundle, vertical),
            GroupoidAction(dg.horizontal, bundle, horizontal),
        )


def conjugation_action(dg: FiniteDoubleGroupoid) -> DoubleAction:
    """Action on the kernel bundle by conjugating with identity boxes."""
    kb = kernel_bundle(dg)
    V, H = dg.vertical, dg.horizontal
    vertical, horizontal = {}, {}
    for g in V.arrows:
        p = V.end[g]
        table = {}
        for x in kb.bundle.fiber(p).elements():
            box = dg.vcompose_all(
                [dg.idd_v[g], kb.box(p, x), dg.idd_v[V.inverse[g]]]
            )
            table[x] = kb.element(box)[1]
        vertical[g] = table
    for a in H.arrows:
        p = H.end[a]
        table = {}
        for x in kb.bundle.fiber(p).elements():
            box = dg.hcompose_all(
                [dg.idd_h[a], kb.box(p, x), dg.idd_h[H.inverse[a]]]
            )
            table[x] = kb.element(box)[1]
        horizontal[a] = table
    logger.debug("conjugation action of %s built", dg.name)
    return DoubleAction.from_tables(dg, kb.bundle, vertical, horizontal)


def _check_groupoid_action(
    action: GroupoidAction, report: ValidationReport, label: str
) -> bool:
    G = action.groupoid
    sound = True
    for g in sorted(G.arrows):
        source, target = action.source_fiber(g), action.target_fiber(g)
        table = action.tables.get(g, {})
        if set(table) != set(source.elements()):
            report.add(ViolationKind.STRUCTURAL, f"{label} action is total on fiber(end g)", (g,))
            sound = False
            continue
        if any(not target.contains(y) for y in table.values()):
            report.add(
                ViolationKind.STRUCTURAL, f"{label} action lands in fiber(source g)", (g,)
            )
            sound = False
    if not sound:
        return False

    for g in sorted(G.arrows):
        source, target = action.source_fiber(g), action.target_fiber(g)
        table = action.tables[g]
        if len(set(table.values())) != len(table) or source != target:
            report.add(ViolationKind.HOMOMORPHISM, f"{label} arrow acts bijectively", (g,))
        for x in source.elements():
            for y in source.elements():
                if table[source.add(x, y)] != target.add(table[x], table[y]):
                    report.add(
                        ViolationKind.HOMOMORPHISM,
                        f"{label} arrow acts by a homomorphism",
                        (g,),
                        detail=f"{x} + {y}",
                    )
                    break
            else:
                continue
            break

    for p in sorted(G.objects):
        unit = G.identity[p]
        if any(x != y for x, y in action.tables[unit].items()):
            report.add(ViolationKind.FUNCTORIALITY, f"{label} identities act trivially", (p,))
    for (g, h), gh in G.composition.items():
        if not G.composable(g, h):
            continue
        for x in action.source_fiber(h).elements():
            if action.tables[gh][x] != action.tables[g][action.tables[h][x]]:
                report.add(ViolationKind.FUNCTORIALITY, f"{label} (gh)k = g(hk)", (g, h))
                break
    return True


def validate_action(dg: FiniteDoubleGroupoid, action: DoubleAction) -> ValidationReport:
    report = ValidationReport(subject=f"action on {dg.name}")
    if set(action.bundle.fibers) != set(dg.points):
        report.add(ViolationKind.STRUCTURAL, "bundle is indexed by the points")
        return report
    v_ok = _check_groupoid_action(action.vertical, report, "vertical")
    h_ok = _check_groupoid_action(action.horizontal, report, "horizontal")
    if not (v_ok and h_ok):
        return report

    V, H = dg.vertical, dg.horizontal
    for a in sorted(dg.boxes):
        t, b, l, r = dg.sides(a)
        for x in action.bundle.fiber(dg.tr(a)).elements():
            left = action.act_v(V.inverse[l], action.act_h(t, x))
            right = action.act_h(b, action.act_v(V.inverse[r], x))
            if left != right:
                report.add(
                    ViolationKind.COMPATIBILITY,
                    "l(A)^-1 (t(A) k) = b(A) (r(A)^-1 k)",
                    (a,),
                    detail=f"k = {x}",
                )
                break
    return report
