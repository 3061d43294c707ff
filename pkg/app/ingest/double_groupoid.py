from typing import Dict, Iterable, Tuple

from app.core.double_groupoid import FiniteDoubleGroupoid
from app.core.groupoid import FiniteGroupoid
from app.exceptions import StructureError
from app.schemas.documents import DoubleGroupoidDocument, GroupoidDocument


def _table(rows: Iterable[Tuple[int, ...]], what: str) -> Dict:
    """A function given by rows whose last entry is the value."""
    out = {}
    for row in rows:
        key = row[0] if len(row) == 2 else tuple(row[:-1])
        if key in out and out[key] != row[-1]:
            raise StructureError(f"{what}: two values for {key}")
        out[key] = row[-1]
    return out


def _inverses(composition: Dict, identity: Dict, source: Dict, arrows, what: str) -> Dict[int, int]:
    out = {}
    for g in arrows:
        found = [
            h for h in arrows
            if composition.get((g, h)) == identity[source[g]]
        ]
        if not found:
            raise StructureError(f"{what}: arrow {g} has no inverse in the composition table")
        out[g] = found[0]
    return out


def groupoid_from_document(doc: GroupoidDocument, name: str) -> FiniteGroupoid:
    arrows = tuple(a for a, _, _ in doc.arrows)
    if len(set(arrows)) != len(arrows):
        raise StructureError(f"{name}: repeated arrow ids")
    source = {a: s for a, s, _ in doc.arrows}
    end = {a: e for a, _, e in doc.arrows}
    identity = _table(doc.identities, f"{name} identities")
    composition = _table(doc.composition, f"{name} composition")
    for (g, h), _ in composition.items():
        if g in end and h in source and end[g] != source[h]:
            raise StructureError(f"{name}: composition on the non-composable pair ({g}, {h})")
    if doc.inverses is not None:
        inverse = _table(doc.inverses, f"{name} inverses")
    else:
        inverse = _inverses(composition, identity, source, arrows, name)
    return FiniteGroupoid(
        objects=tuple(doc.objects),
        arrows=arrows,
        source=source,
        end=end,
        identity=identity,
        composition=composition,
        inverse=inverse,
        name=name,
    )


def double_groupoid_from_document(doc: DoubleGroupoidDocument) -> FiniteDoubleGroupoid:
    name = doc.name or "double groupoid"
    V = groupoid_from_document(doc.vertical, f"{name} (vertical)")
    H = groupoid_from_document(doc.horizontal, f"{name} (horizontal)")
    boxes = tuple(row[0] for row in doc.boxes)
    if len(set(boxes)) != len(boxes):
        raise StructureError(f"{name}: repeated box ids")
    top = {row[0]: row[1] for row in doc.boxes}
    bottom = {row[0]: row[2] for row in doc.boxes}
    left = {row[0]: row[3] for row in doc.boxes}
    right = {row[0]: row[4] for row in doc.boxes}
    hcomp = _table(doc.hcomp, f"{name} horizontal composition")
    vcomp = _table(doc.vcomp, f"{name} vertical composition")
    idd_v = _table(doc.idd_v, f"{name} vertical identities")
    idd_h = _table(doc.idd_h, f"{name} horizontal identities")
    for (a, b), _ in hcomp.items():
        if a in right and b in left and right[a] != left[b]:
            raise StructureError(f"{name}: horizontal composition on the non-composable pair ({a}, {b})")
    for (a, b), _ in vcomp.items():
        if a in bottom and b in top and bottom[a] != top[b]:
            raise StructureError(f"{name}: vertical composition on the non-composable pair ({a}, {b})")

    if doc.h_inverse is not None:
        h_inverse = _table(doc.h_inverse, f"{name} horizontal inverses")
    else:
        # a . a^h = idd_V(l a)
        h_inverse = {}
        for a in boxes:
            found = [b for b in boxes if hcomp.get((a, b)) == idd_v.get(left[a])]
            if not found:
                raise StructureError(f"{name}: box {a} has no horizontal inverse")
            h_inverse[a] = found[0]
    if doc.v_inverse is not None:
        v_inverse = _table(doc.v_inverse, f"{name} vertical inverses")
    else:
        v_inverse = {}
        for a in boxes:
            found = [b for b in boxes if vcomp.get((a, b)) == idd_h.get(top[a])]
            if not found:
                raise StructureError(f"{name}: box {a} has no vertical inverse")
            v_inverse[a] = found[0]

    return FiniteDoubleGroupoid(
        points=tuple(doc.points),
        vertical=V,
        horizontal=H,
        boxes=boxes,
        top=top,
        bottom=bottom,
        left=left,
        right=right,
        hcomp=hcomp,
        vcomp=vcomp,
        idd_v=idd_v,
        idd_h=idd_h,
        h_inverse=h_inverse,
        v_inverse=v_inverse,
        name=name,
    )


def groupoid_to_document(g: FiniteGroupoid) -> GroupoidDocument:
    return GroupoidDocument(
        objects=sorted(g.objects),
        arrows=[(a, g.source[a], g.end[a]) for a in sorted(g.arrows)],
        identities=sorted(g.identity.items()),
        composition=sorted((a, b, c) for (a, b), c in g.composition.items()),
        inverses=sorted(g.inverse.items()),
    )


def double_groupoid_to_document(dg: FiniteDoubleGroupoid) -> DoubleGroupoidDocument:
    return DoubleGroupoidDocument(
        name=dg.name,
        points=sorted(dg.points),
        vertical=groupoid_to_document(dg.vertical),
        horizontal=groupoid_to_document(dg.horizontal),
        boxes=[(a, dg.top[a], dg.bottom[a], dg.left[a], dg.right[a]) for a in sorted(dg.boxes)],
        hcomp=sorted((a, b, c) for (a, b), c in dg.hcomp.items()),
        vcomp=sorted((a, b, c) for (a, b), c in dg.vcomp.items()),
        idd_v=sorted(dg.idd_v.items()),
        idd_h=sorted(dg.idd_h.items()),
        h_inverse=sorted(dg.h_inverse.items()),
        v_inverse=sorted(dg.v_inverse.items()),
    )
