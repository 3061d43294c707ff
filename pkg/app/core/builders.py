"""
Small double groupoids built in code: the fixtures and the random
instances used by the property tests.
"""

from itertools import product
from typing import List, Sequence, Tuple

import numpy as np

from app.core.double_groupoid import FiniteDoubleGroupoid
from app.core.groupoid import FiniteGroupoid


def point_groupoid(name: str = "point") -> FiniteGroupoid:
    return FiniteGroupoid(
        objects=(0,),
        arrows=(0,),
        source={0: 0},
        end={0: 0},
        identity={0: 0},
        composition={(0, 0): 0},
        inverse={0: 0},
        name=name,
    )


def cyclic_group_groupoid(n: int, name: str | None = None) -> FiniteGroupoid:
    """Z/n as a groupoid over one object; arrow ``a`` is the residue ``a``."""
    arrows = tuple(range(n))
    return FiniteGroupoid(
        objects=(0,),
        arrows=arrows,
        source={a: 0 for a in arrows},
        end={a: 0 for a in arrows},
        identity={0: 0},
        composition={(a, b): (a + b) % n for a in arrows for b in arrows},
        inverse={a: -a % n for a in arrows},
        name=name or f"Z/{n}",
    )


def pair_groupoid(k: int, name: str | None = None) -> FiniteGroupoid:
    """One arrow ``(p, q)`` from p to q for every pair of objects, with id ``k*p + q``."""
    objects = tuple(range(k))
    arrows = tuple(k * p + q for p in objects for q in objects)
    return FiniteGroupoid(
        objects=objects,
        arrows=arrows,
        source={a: a // k for a in arrows},
        end={a: a % k for a in arrows},
        identity={p: k * p + p for p in objects},
        composition={
            (k * p + q, k * q + r): k * p + r for p in objects for q in objects for r in objects
        },
        inverse={a: k * (a % k) + a // k for a in arrows},
        name=name or f"pair groupoid on {k} objects",
    )


def vacant_double_groupoid(m: int, n: int, name: str | None = None) -> FiniteDoubleGroupoid:
    """
    V = Z/m, H = Z/n over a point and one box ``(g, x)`` per corner pair,
    with ``l = r = g`` and ``t = b = x``. The box id is ``g*n + x``.
    """
    V = cyclic_group_groupoid(m, f"Z/{m} (vertical)")
    H = cyclic_group_groupoid(n, f"Z/{n} (horizontal)")
    boxes = tuple(g * n + x for g in range(m) for x in range(n))

    def box(g, x):
        return (g % m) * n + x % n

    return FiniteDoubleGroupoid(
        points=(0,),
        vertical=V,
        horizontal=H,
        boxes=boxes,
        top={a: a % n for a in boxes},
        bottom={a: a % n for a in boxes},
        left={a: a // n for a in boxes},
        right={a: a // n for a in boxes},
        hcomp={
            (box(g, x), box(g, y)): box(g, x + y)
            for g in range(m)
            for x in range(n)
            for y in range(n)
        },
        vcomp={
            (box(g, x), box(h, x)): box(g + h, x)
            for g in range(m)
            for h in range(m)
            for x in range(n)
        },
        idd_v={g: box(g, 0) for g in range(m)},
        idd_h={x: box(0, x) for x in range(n)},
        h_inverse={a: box(a // n, -(a % n)) for a in boxes},
        v_inverse={a: box(-(a // n), a % n) for a in boxes},
        name=name or f"vacant Z/{m} x Z/{n}",
    )


def point_double_groupoid() -> FiniteDoubleGroupoid:
    return vacant_double_groupoid(1, 1, name="PT")


def vac22() -> FiniteDoubleGroupoid:
    return vacant_double_groupoid(2, 2, name="VAC22")


def coarse_double_groupoid(k: int, name: str | None = None) -> FiniteDoubleGroupoid:
    """
    Pair groupoids on k points in both directions and one box per corner
    quadruple ``(tl, tr, bl, br)``, with id ``tl*k^3 + tr*k^2 + bl*k + br``.
    """
    V = pair_groupoid(k, f"pair groupoid on {k} objects (vertical)")
    H = pair_groupoid(k, f"pair groupoid on {k} objects (horizontal)")
    points = range(k)

    def box(tl, tr, bl, br):
        return ((tl * k + tr) * k + bl) * k + br

    def corners(a):
        return a // k**3, a // k**2 % k, a // k % k, a % k

    boxes = tuple(box(*q) for q in product(points, repeat=4))
    hcomp, vcomp = {}, {}
    for a in boxes:
        tl, tr, bl, br = corners(a)
        for e, f in product(points, repeat=2):
            hcomp[(a, box(tr, e, br, f))] = box(tl, e, bl, f)
            vcomp[(a, box(bl, br, e, f))] = box(tl, tr, e, f)
    return FiniteDoubleGroupoid(
        points=tuple(points),
        vertical=V,
        horizontal=H,
        boxes=boxes,
        top={a: k * corners(a)[0] + corners(a)[1] for a in boxes},
        bottom={a: k * corners(a)[2] + corners(a)[3] for a in boxes},
        left={a: k * corners(a)[0] + corners(a)[2] for a in boxes},
        right={a: k * corners(a)[1] + corners(a)[3] for a in boxes},
        hcomp=hcomp,
        vcomp=vcomp,
        idd_v={g: box(g // k, g // k, g % k, g % k) for g in V.arrows},
        idd_h={x: box(x // k, x % k, x // k, x % k) for x in H.arrows},
        h_inverse={a: box(*(corners(a)[i] for i in (1, 0, 3, 2))) for a in boxes},
        v_inverse={a: box(*(corners(a)[i] for i in (2, 3, 0, 1))) for a in boxes},
        name=name or f"coarse double groupoid on {k} points",
    )


def pair2() -> FiniteDoubleGroupoid:
    return coarse_double_groupoid(2, name="PAIR2")


def disjoint_union(parts: Sequence[FiniteDoubleGroupoid], name: str = "disjoint union") -> FiniteDoubleGroupoid:
    """Ids of each part are shifted past those of the previous parts."""
    shifts: List[Tuple[int, int, int, int]] = []
    p0 = v0 = h0 = b0 = 0
    for dg in parts:
        shifts.append((p0, v0, h0, b0))
        p0 += max(dg.points) + 1
        v0 += max(dg.vertical.arrows) + 1
        h0 += max(dg.horizontal.arrows) + 1
        b0 += max(dg.boxes) + 1

    def groupoid(which: str, slot: int) -> FiniteGroupoid:
        objects, arrows = [], []
        source, end, identity, composition, inverse = {}, {}, {}, {}, {}
        for dg, shift in zip(parts, shifts):
            G = getattr(dg, which)
            dp, da = shift[0], shift[slot]
            objects += [p + dp for p in G.objects]
            arrows += [a + da for a in G.arrows]
            source.update({a + da: p + dp for a, p in G.source.items()})
            end.update({a + da: p + dp for a, p in G.end.items()})
            identity.update({p + dp: a + da for p, a in G.identity.items()})
            composition.update({(a + da, b + da): c + da for (a, b), c in G.composition.items()})
            inverse.update({a + da: b + da for a, b in G.inverse.items()})
        return FiniteGroupoid(
            tuple(objects), tuple(arrows), source, end, identity, composition, inverse,
            name=f"{name} ({which})",
        )

    fields = {key: {} for key in (
        "top", "bottom", "left", "right", "hcomp", "vcomp", "idd_v", "idd_h", "h_inverse", "v_inverse"
    )}
    points, boxes = [], []
    for dg, (dp, dv, dh, db) in zip(parts, shifts):
        points += [p + dp for p in dg.points]
        boxes += [a + db for a in dg.boxes]
        fields["top"].update({a + db: x + dh for a, x in dg.top.items()})
        fields["bottom"].update({a + db: x + dh for a, x in dg.bottom.items()})
        fields["left"].update({a + db: g + dv for a, g in dg.left.items()})
        fields["right"].update({a + db: g + dv for a, g in dg.right.items()})
        fields["hcomp"].update({(a + db, b + db): c + db for (a, b), c in dg.hcomp.items()})
        fields["vcomp"].update({(a + db, b + db): c + db for (a, b), c in dg.vcomp.items()})
        fields["idd_v"].update({g + dv: a + db for g, a in dg.idd_v.items()})
        fields["idd_h"].update({x + dh: a + db for x, a in dg.idd_h.items()})
        fields["h_inverse"].update({a + db: b + db for a, b in dg.h_inverse.items()})
        fields["v_inverse"].update({a + db: b + db for a, b in dg.v_inverse.items()})
    return FiniteDoubleGroupoid(
        points=tuple(points),
        vertical=groupoid("vertical", 1),
        horizontal=groupoid("horizontal", 2),
        boxes=tuple(boxes),
        name=name,
        **fields,
    )


def random_double_groupoid(seed: int, max_boxes: int = 12) -> FiniteDoubleGroupoid:
    """A seeded disjoint union of small vacant double groupoids with at most ``max_boxes`` boxes."""
    rng = np.random.default_rng(seed)
    parts = []
    budget = max_boxes
    while budget > 0:
        m, n = (int(v) for v in rng.integers(1, 4, size=2))
        if m * n > budget:
            if parts:
                break
            m, n = 1, 1
        parts.append(vacant_double_groupoid(m, n))
        budget -= m * n
        if rng.random() < 0.4:
            break
    return disjoint_union(parts, name=f"random double groupoid (seed {seed})")


def discrete_groupoid(objects, name: str = "discrete groupoid") -> FiniteGroupoid:
    """Only identities; the identity of p has id p."""
    objects = tuple(objects)
    return FiniteGroupoid(
        objects=objects,
        arrows=objects,
        source={p: p for p in objects},
        end={p: p for p in objects},
        identity={p: p for p in objects},
        composition={(p, p): p for p in objects},
        inverse={p: p for p in objects},
        name=name,
    )


def edge_double_groupoid(g: FiniteGroupoid, vertical: bool = True) -> FiniteDoubleGroupoid:
    """
    ``g`` as the vertical (or horizontal) side of a double groupoid whose other
    side is discrete; box ``a`` is the identity box on arrow ``a``.
    """
    other = discrete_groupoid(g.objects, name=f"discrete on {g.name}")
    boxes = tuple(sorted(g.arrows))
    unit = {a: other.identity[g.source[a]] for a in boxes}
    counit = {a: other.identity[g.end[a]] for a in boxes}
    along = dict(g.composition)
    across = {(a, a): a for a in boxes}
    fields = dict(
        points=tuple(g.objects),
        boxes=boxes,
        idd_v={},
        idd_h={},
        name=f"{g.name} as a double groupoid",
    )
    if vertical:
        fields.update(
            vertical=g,
            horizontal=other,
            top=unit,
            bottom=counit,
            left={a: a for a in boxes},
            right={a: a for a in boxes},
            hcomp=across,
            vcomp=along,
            idd_v={a: a for a in boxes},
            idd_h={p: g.identity[p] for p in g.objects},
            h_inverse={a: a for a in boxes},
            v_inverse=dict(g.inverse),
        )
    else:
        fields.update(
            vertical=other,
            horizontal=g,
            top={a: a for a in boxes},
            bottom={a: a for a in boxes},
            left=unit,
            right=counit,
            hcomp=along,
            vcomp=across,
            idd_v={p: g.identity[p] for p in g.objects},
            idd_h={a: a for a in boxes},
            h_inverse=dict(g.inverse),
            v_inverse={a: a for a in boxes},
        )
    return FiniteDoubleGroupoid(**fields)
