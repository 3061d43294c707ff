"""
The smash product of a double groupoid F with a bundle K along a normalized
total cocycle ``(sigma, tau)``.

Boxes are the pairs ``(k, F)`` with ``k`` in the fiber over ``bl(F)``; the
sides are those of ``F`` and

    (k, F)(l, G)    = (k + b(F).l + tau(F, G), FG)
    {(k, F); (l, G)} = (l(G)^-1.k + l + sigma(F; G), F/G)

Box ids follow ``F`` and then ``k`` in lexicographic order, so ``(0, F)`` is
the smallest id over each ``F``.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from app.cohomology.total import TotalCocycle
from app.core.action import DoubleAction
from app.core.bundle import Element
from app.core.double_groupoid import FiniteDoubleGroupoid, validate_double_groupoid
from app.exceptions import CocycleError
from app.logger import logger

Pair = Tuple[Element, int]


@dataclass(frozen=True, eq=False)
class SmashProduct:
    base: FiniteDoubleGroupoid
    action: DoubleAction
    cocycle: TotalCocycle
    total: FiniteDoubleGroupoid
    pairs: Tuple[Pair, ...]
    index: Dict[Pair, int]

    def pair(self, box: int) -> Pair:
        return self.pairs[box]

    def box(self, k, f: int) -> int:
        return self.index[(tuple(k), f)]


def build_smash_product(
    dg: FiniteDoubleGroupoid,
    action: DoubleAction,
    z: TotalCocycle,
    name: str | None = None,
) -> SmashProduct:
    if not z.normalized:
        raise CocycleError("the smash product needs a normalized cocycle")
    V, H = dg.vertical, dg.horizontal
    bundle = action.bundle

    pairs: List[Pair] = []
    for f in sorted(dg.boxes):
        for k in bundle.fiber(dg.gamma(f)).elements():
            pairs.append((k, f))
    index = {pair: i for i, pair in enumerate(pairs)}
    boxes = tuple(range(len(pairs)))

    hcomp: Dict[Tuple[int, int], int] = {}
    vcomp: Dict[Tuple[int, int], int] = {}
    for i, (k, f) in enumerate(pairs):
        fiber = bundle.fiber(dg.gamma(f))
        for g in dg.by_left.get(dg.right[f], []):
            twist = z.tau_at(f, g)
            fg = dg.hcompose(f, g)
            for l in bundle.fiber(dg.gamma(g)).elements():
                value = fiber.add(fiber.add(k, action.act_h(dg.bottom[f], l)), twist)
                hcomp[(i, index[(l, g)])] = index[(value, fg)]
        for g in dg.by_top.get(dg.bottom[f], []):
            lower = bundle.fiber(dg.gamma(g))
            twist = z.sigma_at(f, g)
            moved = action.act_v(V.inverse[dg.left[g]], k)
            fg = dg.vcompose(f, g)
            for l in lower.elements():
                value = lower.add(lower.add(moved, l), twist)
                vcomp[(i, index[(l, g)])] = index[(value, fg)]

    h_inverse, v_inverse = {}, {}
    for i, (k, f) in enumerate(pairs):
        fh, fv = dg.h_inverse[f], dg.v_inverse[f]
        fiber = bundle.fiber(dg.gamma(f))
        k_h = action.act_h(H.inverse[dg.bottom[f]], fiber.sub(fiber.neg(k), z.tau_at(f, fh)))
        h_inverse[i] = index[(k_h, fh)]
        target = bundle.fiber(dg.gamma(fv))
        k_v = target.sub(target.neg(action.act_v(dg.left[f], k)), z.sigma_at(f, fv))
        v_inverse[i] = index[(k_v, fv)]

    total = FiniteDoubleGroupoid(
        points=dg.points,
        vertical=V,
        horizontal=H,
        boxes=boxes,
        top={i: dg.top[f] for i, (_, f) in enumerate(pairs)},
        bottom={i: dg.bottom[f] for i, (_, f) in enumerate(pairs)},
        left={i: dg.left[f] for i, (_, f) in enumerate(pairs)},
        right={i: dg.right[f] for i, (_, f) in enumerate(pairs)},
        hcomp=hcomp,
        vcomp=vcomp,
        idd_v={g: index[(bundle.fiber(V.end[g]).zero(), dg.idd_v[g])] for g in V.arrows},
        idd_h={x: index[(bundle.fiber(H.source[x]).zero(), dg.idd_h[x])] for x in H.arrows},
        h_inverse=h_inverse,
        v_inverse=v_inverse,
        name=name or f"smash product over {dg.name}",
    )
    logger.debug("smash product over %s: %d boxes", dg.name, len(boxes))
    return SmashProduct(dg, action, z, total, tuple(pairs), index)


def smash_product(
    dg: FiniteDoubleGroupoid,
    action: DoubleAction,
    z: TotalCocycle,
    validate: bool = True,
) -> FiniteDoubleGroupoid:
    """The double groupoid ``K #_(sigma, tau) F``; invalid exactly when ``z`` is not closed."""
    total = build_smash_product(dg, action, z).total
    if validate:
        report = validate_double_groupoid(total)
        if not report.ok:
            raise CocycleError(
                f"the cochain over {dg.name} does not give a double groupoid", report
            )
    return total
