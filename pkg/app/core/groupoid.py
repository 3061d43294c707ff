from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Dict, Iterable, List, Tuple

from app.exceptions import DomainError, StructureError
from app.models import ViolationKind
from app.schemas.report import ValidationReport


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    """A finite groupoid with integer ids.

    ``g·h`` is defined iff ``end[g] == source[h]``.
    """

    objects: Tuple[int, ...]
    arrows: Tuple[int, ...]
    source: Dict[int, int]
    end: Dict[int, int]
    identity: Dict[int, int]
    composition: Dict[Tuple[int, int], int]
    inverse: Dict[int, int]
    name: str = "groupoid"

    def __post_init__(self):
        objects = set(self.objects)
        arrows = set(self.arrows)
        for label, table, domain, codomain in (
            ("source", self.source, arrows, objects),
            ("end", self.end, arrows, objects),
            ("identity", self.identity, objects, arrows),
            ("inverse", self.inverse, arrows, arrows),
        ):
            if set(table) != domain:
                raise StructureError(f"{self.name}: {label} is not total on its domain")
            stray = [value for value in table.values() if value not in codomain]
            if stray:
                raise StructureError(
                    f"{self.name}: {label} has entries outside the id range: {stray[:5]}"
                )
        for (g, h), gh in self.composition.items():
            if g not in arrows or h not in arrows or gh not in arrows:
                raise StructureError(
                    f"{self.name}: composition entry ({g}, {h}) -> {gh} outside the id range"
                )

    def composable(self, g: int, h: int) -> bool:
        return self.end[g] == self.source[h]

    def compose(self, g: int, h: int) -> int:
        try:
            return self.composition[(g, h)]
        except KeyError:
            raise DomainError(f"{self.name}: arrows {g} and {h} are not composable")

    def compose_path(self, path: Iterable[int], at: int | None = None) -> int:
        """Composite of a (possibly empty) path; ``at`` is the object of an empty path."""
        result = None
        for arrow in path:
            result = arrow if result is None else self.compose(result, arrow)
        if result is None:
            if at is None:
                raise DomainError(f"{self.name}: empty path without a base object")
            return self.identity[at]
        return result

    def is_identity(self, g: int) -> bool:
        return self.identity[self.source[g]] == g

    @cached_property
    def identities(self) -> frozenset:
        return frozenset(self.identity.values())

    @cached_property
    def _by_source(self) -> Dict[int, List[int]]:
        index: Dict[int, List[int]] = {p: [] for p in self.objects}
        for g in sorted(self.arrows):
            index[self.source[g]].append(g)
        return index

    @cached_property
    def _by_end(self) -> Dict[int, List[int]]:
        index: Dict[int, List[int]] = {p: [] for p in self.objects}
        for g in sorted(self.arrows):
            index[self.end[g]].append(g)
        return index

    def starting_at(self, p: int) -> List[int]:
        return self._by_source[p]

    def ending_at(self, p: int) -> List[int]:
        return self._by_end[p]

    def hom(self, p: int, q: int) -> List[int]:
        return [g for g in self._by_source[p] if self.end[g] == q]

    def composable_tuples(self, n: int) -> Iterable[Tuple[int, ...]]:
        """All composable n-tuples in lexicographic order (n = 0 yields the objects)."""
        if n == 0:
            for p in sorted(self.objects):
                yield (p,)
            return

        def extend(prefix: Tuple[int, ...]):
            if len(prefix) == n:
                yield prefix
                return
            for h in self._by_source[self.end[prefix[-1]]]:
                yield from extend(prefix + (h,))

        for g in sorted(self.arrows):
            yield from extend((g,))


def validate_groupoid(g: FiniteGroupoid) -> ValidationReport:
    report = ValidationReport(subject=g.name)
    kind = ViolationKind.GROUPOID

    for a, b in product(g.arrows, repeat=2):
        defined = (a, b) in g.composition
        if g.composable(a, b) and not defined:
            report.add(kind, "composition defined on composable pairs", (a, b))
        elif defined and not g.composable(a, b):
            report.add(kind, "composition only on composable pairs", (a, b))

    for (a, b), ab in g.composition.items():
        if not g.composable(a, b):
            continue
        if g.source[ab] != g.source[a] or g.end[ab] != g.end[b]:
            report.add(kind, "composite has the outer anchors", (a, b, ab))

    for p in g.objects:
        unit = g.identity[p]
        if g.source[unit] != p or g.end[unit] != p:
            report.add(kind, "identity is a loop at its object", (p, unit))

    for a in g.arrows:
        left = g.composition.get((g.identity[g.source[a]], a))
        right = g.composition.get((a, g.identity[g.end[a]]))
        if left != a or right != a:
            report.add(kind, "identity law", (a,))
        inv = g.inverse[a]
        if g.source[inv] != g.end[a] or g.end[inv] != g.source[a]:
            report.add(kind, "inverse anchors", (a, inv))
            continue
        if g.composition.get((a, inv)) != g.identity[g.source[a]]:
            report.add(kind, "right inverse", (a, inv))
        if g.composition.get((inv, a)) != g.identity[g.end[a]]:
            report.add(kind, "left inverse", (a, inv))

    for (a, b), ab in g.composition.items():
        if not g.composable(a, b):
            continue
        for c in g.starting_at(g.end[b]):
            bc = g.composition.get((b, c))
            left = g.composition.get((ab, c))
            right = g.composition.get((a, bc)) if bc is not None else None
            if left is None or right is None or left != right:
                report.add(kind, "associativity", (a, b, c))

    return report
