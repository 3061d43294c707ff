from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Sequence, Tuple

from app.cohomology.snf import SmithNormalForm
from app.exceptions import StructureError

Element = Tuple[int, ...]


@dataclass(frozen=True)
class FinAbGroup:
    """Finite abelian group ``Z/d1 + ... + Z/dk`` with ``d1 | d2 | ... | dk``."""

    invariant_factors: Tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        for d in factors:
            if d < 2:
                raise StructureError(f"invariant factor {d} is smaller than 2")
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise StructureError(f"invariant factors {factors} are not a divisibility chain")

    @classmethod
    def from_cyclic(cls, orders: Iterable[int]) -> "FinAbGroup":
        """Normal form of a direct sum of cyclic groups of the given orders."""
        orders = [int(d) for d in orders if int(d) != 1]
        if any(d <= 0 for d in orders):
            raise StructureError(f"cyclic orders must be positive: {orders}")
        if not orders:
            return cls(())
        diagonal = [[orders[i] if i == j else 0 for j in range(len(orders))] for i in range(len(orders))]
        factors = [d for d in SmithNormalForm(diagonal).invariant_factors if d != 1]
        return cls(tuple(factors))

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        result = 1
        for d in self.invariant_factors:
            result *= d
        return result

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def zero(self) -> Element:
        return (0,) * self.rank

    def contains(self, x: Sequence[int]) -> bool:
        return len(x) == self.rank and all(
            0 <= xi < d for xi, d in zip(x, self.invariant_factors)
        )

    def reduce(self, x: Sequence[int]) -> Element:
        if len(x) != self.rank:
            raise StructureError(f"element {tuple(x)} does not belong to {self}")
        return tuple(int(xi) % d for xi, d in zip(x, self.invariant_factors))

    def add(self, x: Sequence[int], y: Sequence[int]) -> Element:
        return self.reduce([a + b for a, b in zip(x, y)])

    def neg(self, x: Sequence[int]) -> Element:
        return self.reduce([-a for a in x])

    def sub(self, x: Sequence[int], y: Sequence[int]) -> Element:
        return self.reduce([a - b for a, b in zip(x, y)])

    def scale(self, k: int, x: Sequence[int]) -> Element:
        return self.reduce([k * a for a in x])

    def unit(self, i: int) -> Element:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def elements(self) -> Iterator[Element]:
        return product(*(range(d) for d in self.invariant_factors))


def apply_matrix(matrix: Sequence[Sequence[int]], x: Sequence[int], target: FinAbGroup) -> Element:
    """Image of ``x`` under the homomorphism whose j-th column is the image of the j-th generator."""
    return target.reduce(
        [sum(row[j] * x[j] for j in range(len(x))) for row in matrix]
    )


@dataclass(frozen=True, eq=False)
class AbelianGroupBundle:
    fibers: Dict[int, FinAbGroup]

    @classmethod
    def constant(cls, points: Iterable[int], group: FinAbGroup) -> "AbelianGroupBundle":
        return cls({p: group for p in points})

    @property
    def points(self) -> List[int]:
        return sorted(self.fibers)

    def fiber(self, p: int) -> FinAbGroup:
        try:
            return self.fibers[p]
        except KeyError:
            raise StructureError(f"the bundle has no fiber over point {p}")

    @property
    def is_trivial(self) -> bool:
        return all(group.is_trivial for group in self.fibers.values())

    @property
    def is_constant(self) -> bool:
        return len({group.invariant_factors for group in self.fibers.values()}) <= 1

    def same_as(self, other: "AbelianGroupBundle") -> bool:
        return self.fibers == other.fibers

    def elements(self) -> Iterator[Tuple[int, Element]]:
        for p in self.points:
            for x in self.fibers[p].elements():
                yield p, x


@dataclass(frozen=True)
class GroupPresentation:
    """An explicit isomorphism between an abstract finite abelian group and its normal form."""

    group: FinAbGroup
    coordinates: Dict[Hashable, Element]
    elements: Dict[Element, Hashable]


def present_abelian_group(
    members: Sequence[Hashable],
    add: Callable[[Hashable, Hashable], Hashable],
    zero: Hashable,
) -> GroupPresentation:
    """Invariant-factor form of an abelian group given by its addition table.

    ``Z^n -> G, e_g -> g`` is onto; its kernel is spanned by the relations
    ``e_g + e_h - e_(g+h)`` and ``e_0``, and the Smith form of that relation
    matrix reads off both the invariant factors and the coordinates.
    """
    members = list(members)
    position = {g: i for i, g in enumerate(members)}
    n = len(members)
    relations = []
    for g in members:
        for h in members:
            column = [0] * n
            column[position[g]] += 1
            column[position[h]] += 1
            column[position[add(g, h)]] -= 1
            relations.append(column)
    unit = [0] * n
    unit[position[zero]] = 1
    relations.append(unit)
    matrix = [[relation[i] for relation in relations] for i in range(n)]

    snf = SmithNormalForm(matrix)
    diagonal = snf.diagonal + [0] * (n - len(snf.diagonal))
    kept = [i for i, d in enumerate(diagonal) if d != 1]
    if any(diagonal[i] == 0 for i in kept):
        raise StructureError("the addition table does not describe a finite group")
    group = FinAbGroup(tuple(diagonal[i] for i in kept))

    coordinates = {}
    for g in members:
        column = snf.left[:, position[g]]
        coordinates[g] = group.reduce([int(column[i]) for i in kept])
    elements = {x: g for g, x in coordinates.items()}
    if len(elements) != n:
        raise StructureError("the addition table is not a group table")
    return GroupPresentation(group=group, coordinates=coordinates, elements=elements)
