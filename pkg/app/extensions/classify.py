from dataclasses import dataclass
from typing import List, Tuple

import app.core.config as cfg
from app.cohomology.cochains import Bicomplex
from app.cohomology.total import TotalCocycle, TotalComplex
from app.core.action import DoubleAction
from app.core.bundle import FinAbGroup
from app.core.double_groupoid import FiniteDoubleGroupoid, validate_double_groupoid
from app.extensions.presentation import ExtensionPresentation, presentation_of
from app.extensions.smash import build_smash_product
from app.logger import logger


@dataclass(frozen=True, eq=False)
class ExtensionClass:
    index: int
    coordinates: Tuple[int, ...]
    cocycle: TotalCocycle
    extension: ExtensionPresentation
    valid: bool | None = None


def classify_extensions(
    dg: FiniteDoubleGroupoid,
    action: DoubleAction,
    validate: bool = True,
    cap: int | None = None,
    max_cells: int | None = None,
) -> Tuple[FinAbGroup, List[ExtensionClass]]:
    """One smash product per class of ``H^1_Tot``, in the order of the class coordinates."""
    cap = cap if cap is not None else cfg.MAX_GROUP_ENUMERATION
    complex_ = TotalComplex(Bicomplex(dg, action, True, max_cells))
    h1 = complex_.cohomology(1)
    classes = []
    for index, coordinates in enumerate(h1.classes(cap)):
        z = TotalCocycle.from_vector(complex_, h1.representative(coordinates))
        smash = build_smash_product(dg, action, z, name=f"{dg.name} extension {index}")
        valid = validate_double_groupoid(smash.total).ok if validate else None
        classes.append(
            ExtensionClass(index, tuple(coordinates), z, presentation_of(smash), valid)
        )
    logger.info("%d extension classes of %s by %s", len(classes), dg.name, h1.group)
    return h1.group, classes
