from typing import Sequence

from app.cohomology.cochains import Cochain, CochainSpace
from app.cohomology.total import TotalCocycle
from app.core.action import DoubleAction
from app.core.double_groupoid import FiniteDoubleGroupoid
from app.exceptions import MalformedInputError
from app.nerve.cells import NerveCell
from app.schemas.documents import CochainValue, CocycleDocument


def _values(cochain: Cochain) -> list[CochainValue]:
    return [
        CochainValue(entries=list(cell.entries), value=list(cochain.value(cell)))
        for cell in cochain.space.cells
        if any(cochain.value(cell))
    ]


def cocycle_to_document(
    z: TotalCocycle, name: str | None = None, coordinates: Sequence[int] = ()
) -> CocycleDocument:
    """Nonzero values only, in nerve order."""
    return CocycleDocument(
        name=name,
        base=z.sigma.space.dg.name,
        coordinates=list(coordinates),
        sigma=_values(z.sigma),
        tau=_values(z.tau),
    )


def cocycle_from_document(
    doc: CocycleDocument, dg: FiniteDoubleGroupoid, action: DoubleAction
) -> TotalCocycle:
    """Cells not listed carry zero; the cochains are normalized."""
    sigma_space = CochainSpace(dg, action, 2, 1)
    tau_space = CochainSpace(dg, action, 1, 2, nerve=sigma_space.nerve)

    def cochain(space: CochainSpace, values: list[CochainValue], m: int, n: int) -> Cochain:
        table = {}
        for entry in values:
            cell = NerveCell(m, n, tuple(entry.entries))
            if cell not in space.index:
                raise MalformedInputError(f"{entry.entries} is not a non-degenerate ({m}, {n}) cell of {dg.name}")
            table[cell] = entry.value
        return space.from_function(lambda cell: table.get(cell, space.fiber_of(cell).zero()))

    return TotalCocycle(
        cochain(sigma_space, doc.sigma, 2, 1), cochain(tau_space, doc.tau, 1, 2)
    )
