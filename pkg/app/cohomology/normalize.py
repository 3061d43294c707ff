"""
Normalizing a total 1-cocycle.

A closed ``(sigma, tau)`` on all cells (thin ones included) is cohomologous to
one vanishing on the thin cells: subtract ``d^0 lambda`` for

    lambda(B) = sigma(idd_H b(B); idd_H b(B)) + tau(idd_V l(B), idd_V l(B))
                - sigma(Theta; Theta) at bl(B)
"""

from app.cohomology.cochains import CochainSpace
from app.cohomology.total import TotalCocycle, is_closed, zero_cochain_coboundary
from app.core.action import DoubleAction
from app.core.double_groupoid import FiniteDoubleGroupoid
from app.exceptions import CocycleError
from app.logger import logger
from app.nerve.cells import Nerve, NerveCell


def normalizing_cochain(dg: FiniteDoubleGroupoid, action: DoubleAction, z: TotalCocycle):
    """The 0-cochain whose coboundary removes the thin part of ``z``."""
    space = CochainSpace(dg, action, 1, 1, normalized=False, nerve=z.sigma.space.nerve)

    def values(cell: NerveCell):
        (b,) = cell.entries
        fiber = space.fiber_of(cell)
        e = dg.idd_h[dg.bottom[b]]
        d = dg.idd_v[dg.left[b]]
        theta = dg.theta(dg.bl(b))
        mu = z.sigma_at(e, e)
        nu = z.tau_at(d, d)
        return fiber.sub(fiber.add(mu, nu), z.sigma_at(theta, theta))

    return space.from_function(values)


def to_normalized(z: TotalCocycle, nerve: Nerve | None = None) -> TotalCocycle:
    """Re-coordinatize a cocycle that vanishes on thin cells in the normalized spaces."""
    if z.normalized:
        return z
    parts = []
    for part in (z.sigma, z.tau):
        old = part.space
        space = CochainSpace(old.dg, old.action, old.r, old.s, True, nerve or old.nerve)
        for cell in old.cells:
            if cell not in space.index and any(part.value(cell)):
                raise CocycleError(f"cochain does not vanish on the thin cell {cell.entries}")
        parts.append(space.from_function(part.value))
    return TotalCocycle(*parts)


def normalize_cocycle(
    dg: FiniteDoubleGroupoid, action: DoubleAction, z: TotalCocycle
) -> TotalCocycle:
    if not is_closed(dg, action, z):
        raise CocycleError(f"total cochain on {dg.name} is not closed")
    if z.normalized:
        return z
    lam = normalizing_cochain(dg, action, z)
    shifted = z - zero_cochain_coboundary(dg, action, lam)
    logger.debug("normalized a total cocycle of %s by a 0-cochain with %d nonzero coordinates",
                 dg.name, sum(1 for v in lam.vector if v))
    return to_normalized(shifted)
