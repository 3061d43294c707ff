from app.core.action import DoubleAction, conjugation_action, validate_action
from app.core.bundle import AbelianGroupBundle, FinAbGroup
from app.core.double_groupoid import FiniteDoubleGroupoid
from app.exceptions import AxiomViolationError, MalformedInputError
from app.models import ActionKind
from app.schemas.documents import BundleDocument, FiberEntry


def bundle_from_document(doc: BundleDocument, dg: FiniteDoubleGroupoid) -> AbelianGroupBundle:
    if doc.constant is not None and doc.fibers is not None:
        raise MalformedInputError("a bundle gives either a constant fiber or explicit fibers")
    if doc.constant is not None:
        return AbelianGroupBundle.constant(dg.points, FinAbGroup.from_cyclic(doc.constant))
    if doc.fibers is None:
        raise MalformedInputError("a bundle needs a constant fiber or explicit fibers")
    fibers = {entry.point: FinAbGroup.from_cyclic(entry.factors) for entry in doc.fibers}
    if set(fibers) != set(dg.points):
        raise MalformedInputError(f"the fibers are not indexed by the points of {dg.name}")
    return AbelianGroupBundle(fibers)


def action_from_document(doc: BundleDocument, dg: FiniteDoubleGroupoid) -> DoubleAction:
    """The coefficients of a bundle document over ``dg``, checked against the action axioms."""
    kind = doc.action.kind
    if kind == ActionKind.CONJUGATION:
        return conjugation_action(dg)
    bundle = bundle_from_document(doc, dg)
    if kind == ActionKind.TRIVIAL:
        action = DoubleAction.trivial(dg, bundle)
    else:
        action = DoubleAction.from_matrices(
            dg,
            bundle,
            {entry.arrow: entry.matrix for entry in doc.action.vertical},
            {entry.arrow: entry.matrix for entry in doc.action.horizontal},
        )
    report = validate_action(dg, action)
    if not report.ok:
        raise AxiomViolationError(f"the action on {doc.name or 'the bundle'} is not an action", report)
    return action


def bundle_to_document(bundle: AbelianGroupBundle, name: str | None = None) -> BundleDocument:
    if bundle.is_constant and bundle.points:
        return BundleDocument(
            name=name, constant=list(bundle.fiber(bundle.points[0]).invariant_factors)
        )
    return BundleDocument(
        name=name,
        fibers=[
            FiberEntry(point=p, factors=list(bundle.fiber(p).invariant_factors))
            for p in bundle.points
        ],
    )


def coefficients(dg: FiniteDoubleGroupoid, doc: BundleDocument | None) -> DoubleAction:
    """``doc`` read over ``dg``; constant ``Z/2`` with the trivial action when absent."""
    if doc is None:
        return DoubleAction.trivial(dg, AbelianGroupBundle.constant(dg.points, FinAbGroup((2,))))
    return action_from_document(doc, dg)
