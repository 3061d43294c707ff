"""
Brute-force counterparts of the quantities under test. Each walks the raw
tables of a double groupoid instead of the enumeration code of the package,
or searches where the package computes.
"""

from itertools import combinations, product
from math import gcd

from app.cohomology.cochains import Bicomplex
from app.cohomology.total import TotalCocycle
from app.core.double_groupoid import validate_double_groupoid
from app.extensions.equivalence import find_equivalence
from app.extensions.presentation import presentation_of
from app.extensions.smash import build_smash_product


def box_matrices(dg, m: int, n: int):
    """Every m x n matrix of boxes whose neighbours share sides, by filtering all tuples."""
    boxes = sorted(dg.boxes)
    for entries in product(boxes, repeat=m * n):
        ok = all(
            dg.right[entries[i * n + j]] == dg.left[entries[i * n + j + 1]]
            for i in range(m)
            for j in range(n - 1)
        ) and all(
            dg.bottom[entries[i * n + j]] == dg.top[entries[(i + 1) * n + j]]
            for i in range(m - 1)
            for j in range(n)
        )
        if ok:
            yield entries


def count_cells(dg, m: int, n: int) -> int:
    return sum(1 for _ in box_matrices(dg, m, n))


def thin_boxes(dg) -> set:
    return set(dg.idd_v.values()) | set(dg.idd_h.values())


def subgrid_count(m: int, n: int) -> int:
    rows = [s for k in range(1, m + 2) for s in combinations(range(m + 1), k)]
    columns = [t for k in range(1, n + 2) for t in combinations(range(n + 1), k)]
    return len(rows) * len(columns)


def cech_box_count(dg, sets) -> int:
    """Boxes of the Čech double groupoid: one per box and choice of a set at each corner."""
    containing = {p: sum(1 for members in sets if p in members) for p in dg.points}
    total = 0
    for a in dg.boxes:
        t, b = dg.top[a], dg.bottom[a]
        corners = (
            dg.horizontal.source[t],
            dg.horizontal.end[t],
            dg.horizontal.source[b],
            dg.horizontal.end[b],
        )
        count = 1
        for p in corners:
            count *= containing[p]
        total += count
    return total


def entry_gcd(matrix) -> int:
    out = 0
    for row in matrix:
        for value in row:
            out = gcd(out, int(value))
    return out


def det(matrix) -> int:
    """Leibniz expansion; only for the small matrices of the property tests."""
    n = len(matrix)
    if n == 0:
        return 1
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        total += (-1) ** j * int(matrix[0][j]) * det(minor)
    return total


def extension_classes(dg, action) -> int:
    """
    Equivalence classes of extensions by direct search: a smash product for
    every normalized 1-cochain whose total passes the axioms, grouped by
    ``find_equivalence``. No cohomology is computed.
    """
    bicomplex = Bicomplex(dg, action)
    sigmas, taus = bicomplex.space(2, 1), bicomplex.space(1, 2)
    representatives = []
    for sigma in product(*(range(d) for d in sigmas.moduli)):
        for tau in product(*(range(d) for d in taus.moduli)):
            z = TotalCocycle(sigmas.cochain(list(sigma)), taus.cochain(list(tau)))
            smash = build_smash_product(dg, action, z)
            if not validate_double_groupoid(smash.total).ok:
                continue
            extension = presentation_of(smash)
            if all(find_equivalence(rep, extension) is None for rep in representatives):
                representatives.append(extension)
    return len(representatives)
