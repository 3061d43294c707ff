from app.cohomology.cochains import CochainSpace
from app.cohomology.total import TotalCocycle
from app.core.action import DoubleAction, GroupoidAction
from app.core.bundle import AbelianGroupBundle
from app.core.morphism import DoubleGroupoidMorphism
from app.nerve.cells import NerveCell


def pullback_action(morphism: DoubleGroupoidMorphism, action: DoubleAction) -> DoubleAction:
    """Coefficients of the target read over the source: fiber(p) := fiber(f(p))."""
    src = morphism.source
    bundle = AbelianGroupBundle(
        {p: action.bundle.fiber(morphism.points[p]) for p in src.points}
    )
    vertical = GroupoidAction(
        src.vertical,
        bundle,
        {g: action.vertical.tables[morphism.vertical[g]] for g in src.vertical.arrows},
    )
    horizontal = GroupoidAction(
        src.horizontal,
        bundle,
        {x: action.horizontal.tables[morphism.horizontal[x]] for x in src.horizontal.arrows},
    )
    return DoubleAction(src, bundle, vertical, horizontal)


def cocycle_pullback(
    morphism: DoubleGroupoidMorphism,
    action: DoubleAction,
    z: TotalCocycle,
    pulled: DoubleAction | None = None,
) -> TotalCocycle:
    """``(f^* sigma, f^* tau)`` over the source of ``morphism``."""
    pulled = pulled if pulled is not None else pullback_action(morphism, action)
    src = morphism.source

    def image(cell: NerveCell) -> NerveCell:
        return NerveCell(cell.m, cell.n, tuple(morphism.boxes[a] for a in cell.entries))

    sigma_space = CochainSpace(src, pulled, 2, 1, z.normalized)
    tau_space = CochainSpace(src, pulled, 1, 2, z.normalized, sigma_space.nerve)
    return TotalCocycle(
        sigma_space.from_function(lambda cell: z.sigma.value(image(cell))),
        tau_space.from_function(lambda cell: z.tau.value(image(cell))),
    )
