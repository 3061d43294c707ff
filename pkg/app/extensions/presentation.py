"""
Extensions ``K -> B -> F`` of a double groupoid by an abelian group bundle,
with V, H and P fixed.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Tuple

from app.cohomology.cochains import CochainSpace
from app.cohomology.normalize import normalize_cocycle
from app.cohomology.total import TotalCocycle
from app.core.action import DoubleAction
from app.core.bundle import AbelianGroupBundle, Element, present_abelian_group
from app.core.double_groupoid import FiniteDoubleGroupoid, kernel_boxes, validate_double_groupoid
from app.core.morphism import DoubleGroupoidMorphism, check_morphism
from app.exceptions import ExtensionError
from app.extensions.smash import SmashProduct, build_smash_product
from app.logger import logger
from app.models import ViolationKind
from app.schemas.report import ValidationReport

Section = Dict[int, int]


@dataclass(frozen=True, eq=False)
class ExtensionPresentation:
    """``total`` with the projection onto ``base`` and the embedding of the bundle."""

    total: FiniteDoubleGroupoid
    base: FiniteDoubleGroupoid
    projection: DoubleGroupoidMorphism
    bundle: AbelianGroupBundle
    embedding: Dict[Tuple[int, Element], int]

    @property
    def name(self) -> str:
        return self.total.name

    @cached_property
    def inverse_embedding(self) -> Dict[int, Tuple[int, Element]]:
        return {box: key for key, box in self.embedding.items()}


def smash_extension(
    dg: FiniteDoubleGroupoid, action: DoubleAction, z: TotalCocycle
) -> ExtensionPresentation:
    """The smash product with its second projection and ``k -> (k, Theta)``."""
    smash = build_smash_product(dg, action, z)
    return presentation_of(smash)


def presentation_of(smash: SmashProduct) -> ExtensionPresentation:
    dg = smash.base
    projection = DoubleGroupoidMorphism.over_identity(
        smash.total, dg, {i: f for i, (_, f) in enumerate(smash.pairs)}
    )
    embedding = {
        (p, k): smash.box(k, dg.theta(p)) for p, k in smash.action.bundle.elements()
    }
    return ExtensionPresentation(smash.total, dg, projection, smash.action.bundle, embedding)


def double_kernel(ext: ExtensionPresentation) -> AbelianGroupBundle:
    """Fibers ``{B : Pi(B) = Theta_p}``, checked against the kernel bundle of the total."""
    report = check_morphism(ext.projection)
    if not report.ok:
        raise ExtensionError(f"the projection of {ext.name} is not a morphism", report)
    total, base = ext.total, ext.base
    inner = kernel_boxes(total)
    groups = {}
    for p in base.points:
        theta = base.theta(p)
        members = [a for a in sorted(total.boxes) if ext.projection.boxes[a] == theta]
        outside = [a for a in members if a not in inner[p]]
        if outside:
            raise ExtensionError(
                f"{ext.name}: boxes {outside} over Theta_{p} are not in the kernel bundle"
            )
        groups[p] = present_abelian_group(members, total.vcompose, total.theta(p)).group
    return AbelianGroupBundle(groups)


def validate_extension(ext: ExtensionPresentation) -> ValidationReport:
    """Axioms of the total, the projection, and ``Ker(Pi) = iota(K)``."""
    report = ValidationReport(subject=ext.name)
    report.extend(validate_double_groupoid(ext.total), "total: ")
    report.extend(check_morphism(ext.projection), "projection: ")
    if not report.ok:
        return report
    base, total = ext.base, ext.total
    kind = ViolationKind.KERNEL
    if set(ext.projection.boxes.values()) != set(base.boxes):
        report.add(kind, "the projection is onto")
    for p in base.points:
        theta = base.theta(p)
        kernel = {a for a in total.boxes if ext.projection.boxes[a] == theta}
        image = {ext.embedding[(p, k)] for k in ext.bundle.fiber(p).elements()}
        if kernel != image:
            report.add(kind, "Ker(Pi) is the image of the bundle", (p,))
        zero = ext.embedding[(p, ext.bundle.fiber(p).zero())]
        if zero != total.theta(p):
            report.add(kind, "the bundle zero goes to Theta", (p,))
        fiber = ext.bundle.fiber(p)
        for k in fiber.elements():
            for l in fiber.elements():
                composite = total.vcomp.get((ext.embedding[(p, k)], ext.embedding[(p, l)]))
                if composite != ext.embedding[(p, fiber.add(k, l))]:
                    report.add(kind, "the embedding is additive", (p,))
    return report


def induced_action(ext: ExtensionPresentation) -> DoubleAction:
    """Conjugation by identity boxes of the total, read through the embedding."""
    total, base = ext.total, ext.base
    V, H = base.vertical, base.horizontal
    back = ext.inverse_embedding
    vertical, horizontal = {}, {}
    for g in V.arrows:
        p = V.end[g]
        vertical[g] = {
            k: back[total.vcompose_all([total.idd_v[g], ext.embedding[(p, k)], total.idd_v[V.inverse[g]]])][1]
            for k in ext.bundle.fiber(p).elements()
        }
    for x in H.arrows:
        p = H.end[x]
        horizontal[x] = {
            k: back[total.hcompose_all([total.idd_h[x], ext.embedding[(p, k)], total.idd_h[H.inverse[x]]])][1]
            for k in ext.bundle.fiber(p).elements()
        }
    return DoubleAction.from_tables(base, ext.bundle, vertical, horizontal)


def default_section(ext: ExtensionPresentation) -> Section:
    """The lowest box over each box of the base."""
    section: Section = {}
    for a in sorted(ext.total.boxes):
        section.setdefault(ext.projection.boxes[a], a)
    missing = set(ext.base.boxes) - set(section)
    if missing:
        raise ExtensionError(f"the projection of {ext.name} misses boxes {sorted(missing)[:5]}")
    return section


def box_difference(ext: ExtensionPresentation, section: Section, box: int) -> Element:
    """The kernel element ``{s(F)^v ; X} . idd_H(b X)^h`` comparing ``X`` with ``s(Pi X)``."""
    total = ext.total
    lifted = section[ext.projection.boxes[box]]
    column = total.vcompose(total.v_inverse[lifted], box)
    corner = total.hcompose(column, total.idd_h[total.horizontal.inverse[total.bottom[box]]])
    try:
        return ext.inverse_embedding[corner][1]
    except KeyError:
        raise ExtensionError(f"{ext.name}: box {box} and its lift differ outside the bundle")


def cocycle_from_extension(
    ext: ExtensionPresentation,
    section: Section | None = None,
    action: DoubleAction | None = None,
) -> TotalCocycle:
    """Compare the section of a composite with the composite of the sections."""
    section = section if section is not None else default_section(ext)
    for f, a in section.items():
        if ext.projection.boxes[a] != f:
            raise ExtensionError(f"section of {ext.name} does not lift box {f}")
    action = action if action is not None else induced_action(ext)
    base, total = ext.base, ext.total

    sigma_space = CochainSpace(base, action, 2, 1, normalized=False)
    tau_space = CochainSpace(base, action, 1, 2, normalized=False, nerve=sigma_space.nerve)

    def sigma(cell):
        upper, lower = cell.entries
        return box_difference(ext, section, total.vcompose(section[upper], section[lower]))

    def tau(cell):
        left, right = cell.entries
        return box_difference(ext, section, total.hcompose(section[left], section[right]))

    raw = TotalCocycle(sigma_space.from_function(sigma), tau_space.from_function(tau))
    logger.debug("extracted a total cocycle from %s", ext.name)
    return normalize_cocycle(base, action, raw)
