"""
Equivalence and isomorphism of extensions.

Two extensions of F by K are equivalent when a double groupoid isomorphism
of the totals commutes with both projections and both embeddings. The
decision goes through cohomology; the direct search over translations
``Phi(X) = X + lambda(Pi X)`` is kept for small instances.
"""

from itertools import product
from typing import Dict, Iterator, List, Tuple

import app.core.config as cfg
from app.cohomology.cochains import Bicomplex
from app.cohomology.total import TotalComplex
from app.core.bundle import Element, FinAbGroup, apply_matrix
from app.core.double_groupoid import FiniteDoubleGroupoid
from app.core.morphism import DoubleGroupoidMorphism, check_morphism
from app.exceptions import ExtensionError, check_cap
from app.extensions.presentation import (
    ExtensionPresentation,
    Section,
    box_difference,
    cocycle_from_extension,
    default_section,
    induced_action,
)
from app.logger import logger


def _same_base(e1: ExtensionPresentation, e2: ExtensionPresentation) -> None:
    if e1.base is not e2.base and (
        set(e1.base.boxes) != set(e2.base.boxes)
        or any(e1.base.sides(a) != e2.base.sides(a) for a in e1.base.boxes)
    ):
        raise ExtensionError(f"{e1.name} and {e2.name} extend different double groupoids")
    if not e1.bundle.same_as(e2.bundle):
        raise ExtensionError(f"{e1.name} and {e2.name} have different kernels")


def _same_tables(a, b) -> bool:
    return all(a.vertical.tables[g] == b.vertical.tables[g] for g in a.vertical.tables) and all(
        a.horizontal.tables[x] == b.horizontal.tables[x] for x in a.horizontal.tables
    )


def extensions_equivalent(e1: ExtensionPresentation, e2: ExtensionPresentation) -> bool:
    """The extracted cocycles differ by a total coboundary."""
    _same_base(e1, e2)
    action = induced_action(e1)
    if not _same_tables(action, induced_action(e2)):
        logger.info("%s and %s induce different actions", e1.name, e2.name)
        return False
    z1 = cocycle_from_extension(e1, action=action)
    z2 = cocycle_from_extension(e2, action=action)
    complex_ = TotalComplex(Bicomplex(e1.base, action))
    difference = [a - b for a, b in zip(z1.vector, z2.vector)]
    return complex_.cohomology(1).is_coboundary(difference)


def _differences(ext: ExtensionPresentation, section: Section) -> Dict[int, Element]:
    return {a: box_difference(ext, section, a) for a in ext.total.boxes}


def _search(
    e1: ExtensionPresentation,
    e2: ExtensionPresentation,
    psi: Dict[int, int],
    phi: Dict[int, Dict[Element, Element]],
    cap: int,
) -> DoubleGroupoidMorphism | None:
    """A morphism ``Phi`` with ``Pi_2 Phi = psi Pi_1`` and ``Phi iota_1 = iota_2 phi``."""
    base = e1.base
    s1, s2 = default_section(e1), default_section(e2)
    d1 = _differences(e1, s1)
    chart = {(e2.projection.boxes[a], k): a for a, k in _differences(e2, s2).items()}
    boxes = sorted(base.boxes)
    fibers = [e1.bundle.fiber(base.gamma(f)) for f in boxes]
    count = 1
    for fiber in fibers:
        count *= fiber.order
    check_cap(count, cap, "translations searched")

    for shifts in product(*(list(fiber.elements()) for fiber in fibers)):
        shift = dict(zip(boxes, shifts))
        table = {}
        for a in e1.total.boxes:
            f = e1.projection.boxes[a]
            fiber = e1.bundle.fiber(base.gamma(f))
            image = fiber.add(phi[base.gamma(f)][d1[a]], shift[f])
            table[a] = chart.get((psi[f], image))
            if table[a] is None:
                break
        else:
            morphism = DoubleGroupoidMorphism.over_identity(e1.total, e2.total, table)
            if not check_morphism(morphism).ok:
                continue
            if all(
                morphism.boxes[e1.embedding[(p, k)]] == e2.embedding[(p, phi[p][k])]
                for p, k in e1.bundle.elements()
            ):
                return morphism
    return None


def _identity_on(ext: ExtensionPresentation) -> Dict[int, Dict[Element, Element]]:
    return {p: {k: k for k in ext.bundle.fiber(p).elements()} for p in ext.bundle.points}


def find_equivalence(
    e1: ExtensionPresentation, e2: ExtensionPresentation, cap: int | None = None
) -> DoubleGroupoidMorphism | None:
    """Direct search for an equivalence; exponential in the number of base boxes."""
    _same_base(e1, e2)
    cap = cap if cap is not None else cfg.MAX_BRUTE_FORCE
    psi = {f: f for f in e1.base.boxes}
    return _search(e1, e2, psi, _identity_on(e1), cap)


def group_automorphisms(group: FinAbGroup) -> Iterator[Dict[Element, Element]]:
    """Every automorphism of ``group`` as a table, found from the images of the generators."""
    elements = list(group.elements())
    for images in product(elements, repeat=group.rank):
        if any(group.scale(d, image) != group.zero() for d, image in zip(group.invariant_factors, images)):
            continue
        matrix = [[image[i] for image in images] for i in range(group.rank)]
        table = {x: apply_matrix(matrix, x, group) for x in elements}
        if len(set(table.values())) == len(elements):
            yield table


def base_automorphisms(dg: FiniteDoubleGroupoid, cap: int) -> Iterator[Dict[int, int]]:
    """Side-preserving automorphisms of the boxes of ``dg``."""
    boxes = sorted(dg.boxes)
    candidates: List[List[int]] = [dg.by_sides[dg.sides(a)] for a in boxes]
    count = 1
    for options in candidates:
        count *= len(options)
    check_cap(count, cap, "box automorphisms searched")
    for images in product(*candidates):
        if len(set(images)) != len(images):
            continue
        table = dict(zip(boxes, images))
        if check_morphism(DoubleGroupoidMorphism.over_identity(dg, dg, table)).ok:
            yield table


def extensions_isomorphic(
    e1: ExtensionPresentation, e2: ExtensionPresentation, cap: int | None = None
) -> Tuple[Dict[int, int], DoubleGroupoidMorphism] | None:
    """
    Search for ``(phi, Phi, Psi)`` with ``phi`` an automorphism of each fiber and
    ``Psi`` a side-preserving automorphism of the base; returns ``(Psi, Phi)``.
    """
    _same_base(e1, e2)
    cap = cap if cap is not None else cfg.MAX_BRUTE_FORCE
    points = e1.bundle.points
    per_fiber = [list(group_automorphisms(e1.bundle.fiber(p))) for p in points]
    for psi in base_automorphisms(e1.base, cap):
        for choice in product(*per_fiber):
            phi = dict(zip(points, choice))
            found = _search(e1, e2, psi, phi, cap)
            if found is not None:
                return psi, found
    return None
