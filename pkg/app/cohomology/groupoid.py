from app.cohomology.cochains import Bicomplex
from app.cohomology.total import TotalComplex
from app.core.action import DoubleAction, GroupoidAction
from app.core.builders import edge_double_groupoid
from app.core.bundle import FinAbGroup
from app.core.groupoid import FiniteGroupoid
from app.logger import logger


def groupoid_complex(
    g: FiniteGroupoid, action: GroupoidAction, vertical: bool = True
) -> TotalComplex:
    """
    The normalized cochains of composable tuples of ``g``, realized as the
    edge column (or row) of the bicomplex of ``g`` viewed as a double groupoid.
    """
    dg = edge_double_groupoid(g, vertical)
    other = dg.horizontal if vertical else dg.vertical
    other_action = GroupoidAction.trivial(other, action.bundle)
    if vertical:
        double = DoubleAction(dg, action.bundle, action, other_action)
    else:
        double = DoubleAction(dg, action.bundle, other_action, action)
    return TotalComplex(Bicomplex(dg, double), "column" if vertical else "row")


def groupoid_cohomology(
    g: FiniteGroupoid, action: GroupoidAction, n: int, vertical: bool = True
) -> FinAbGroup:
    group = groupoid_complex(g, action, vertical).cohomology(n).group
    logger.info("H^%d(%s) = %s", n, g.name, group)
    return group
