from itertools import product

import pytest

from app.exceptions import DomainError, FaceIndexError, ResourceLimitError
from app.models import Direction
from app.nerve.cells import (
    Nerve,
    NerveCell,
    check_cell,
    degeneracy,
    diagonal_cells,
    diagonal_face,
    face,
    is_degenerate,
    nerve_cells,
    restrict,
)
from app.nerve.orbits import orbits, phi, psi
from oracles import count_cells

BIDEGREES = [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (1, 3)]


def test_point_has_one_cell_per_bidegree(pt):
    for m, n in product(range(3), repeat=2):
        assert len(nerve_cells(pt, m, n)) == 1
    (cell,) = nerve_cells(pt, 2, 1)
    assert cell.entries == (0, 0)


def test_every_box_is_a_square_cell(vac):
    assert sorted(cell.entries[0] for cell in nerve_cells(vac, 1, 1)) == sorted(vac.boxes)


@pytest.mark.parametrize("m,n", BIDEGREES)
def test_cell_counts_match_brute_force(vac, m, n):
    assert len(nerve_cells(vac, m, n)) == count_cells(vac, m, n)


def test_vac22_counts(vac):
    nerve = Nerve(vac)
    # one vertical arrow per box row and one horizontal arrow per box column
    for m, n in BIDEGREES:
        assert nerve.count(m, n) == 2 ** (m + n)
        assert len(nerve.nondegenerate(m, n)) == 1


def test_pair2_counts_vertex_labelings(pair):
    nerve = Nerve(pair)
    for m, n in [(1, 1), (1, 2), (2, 2)]:
        assert nerve.count(m, n) == 2 ** ((m + 1) * (n + 1))


def test_cap_on_cells(vac):
    with pytest.raises(ResourceLimitError):
        nerve_cells(vac, 2, 2, max_cells=3)


def test_bad_cells_are_rejected(vac):
    with pytest.raises(DomainError):
        # r((1, 0)) = 1 but l((0, 0)) = 0
        check_cell(vac, NerveCell(1, 2, (2, 0)))
    with pytest.raises(FaceIndexError):
        face(vac, NerveCell(1, 1, (3,)), Direction.VERTICAL, 2)


@pytest.mark.parametrize("direction", list(Direction))
@pytest.mark.parametrize("m,n", [(2, 2), (3, 1), (1, 3)])
def test_faces_commute(vac, direction, m, n):
    count = m if direction is Direction.VERTICAL else n
    for cell in nerve_cells(vac, m, n):
        for j in range(count + 1):
            for i in range(j):
                left = face(vac, face(vac, cell, direction, j), direction, i)
                right = face(vac, face(vac, cell, direction, i), direction, j - 1)
                assert left == right


@pytest.mark.parametrize("m,n", [(2, 2), (2, 1), (1, 2)])
def test_vertical_and_horizontal_faces_commute(vac, m, n):
    for cell in nerve_cells(vac, m, n):
        for i in range(m + 1):
            for j in range(n + 1):
                a = face(vac, face(vac, cell, Direction.VERTICAL, i), Direction.HORIZONTAL, j)
                b = face(vac, face(vac, cell, Direction.HORIZONTAL, j), Direction.VERTICAL, i)
                assert a == b


@pytest.mark.parametrize("direction", list(Direction))
@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 2)])
def test_face_after_degeneracy(vac, direction, m, n):
    count = m if direction is Direction.VERTICAL else n
    for cell in nerve_cells(vac, m, n):
        for k in range(count + 1):
            lifted = degeneracy(vac, cell, direction, k)
            assert is_degenerate(vac, lifted)
            assert face(vac, lifted, direction, k) == cell
            assert face(vac, lifted, direction, k + 1) == cell


def test_degeneracies_commute(vac):
    for cell in nerve_cells(vac, 1, 1):
        for j in range(2):
            for i in range(j + 1):
                a = degeneracy(vac, degeneracy(vac, cell, Direction.VERTICAL, j), Direction.VERTICAL, i)
                b = degeneracy(vac, degeneracy(vac, cell, Direction.VERTICAL, i), Direction.VERTICAL, j + 1)
                assert a == b


def _other(direction: Direction) -> Direction:
    return Direction.HORIZONTAL if direction is Direction.VERTICAL else Direction.VERTICAL


@pytest.mark.parametrize("direction", list(Direction))
@pytest.mark.parametrize("m,n", list(product(range(1, 3), repeat=2)))
def test_simplicial_identities(vac, direction, m, n):
    count = m if direction is Direction.VERTICAL else n

    def d(cell, i, on=direction):
        return face(vac, cell, on, i)

    def s(cell, i, on=direction):
        return degeneracy(vac, cell, on, i)

    for cell in nerve_cells(vac, m, n):
        if count >= 2:
            for j in range(count + 1):
                for i in range(j):
                    assert d(d(cell, j), i) == d(d(cell, i), j - 1)
        for j in range(count + 1):
            for i in range(j + 1):
                assert s(s(cell, j), i) == s(s(cell, i), j + 1)
        for j in range(count + 1):
            lifted = s(cell, j)
            for i in range(count + 2):
                if i < j:
                    assert d(lifted, i) == s(d(cell, i), j - 1)
                elif i in (j, j + 1):
                    assert d(lifted, i) == cell
                else:
                    assert d(lifted, i) == s(d(cell, i - 1), j)
        # faces and degeneracies of the two directions commute
        other = _other(direction)
        for i in range(count + 1):
            for j in range((n if other is Direction.HORIZONTAL else m) + 1):
                assert d(s(cell, j, other), i) == s(d(cell, i), j, other)
                assert s(s(cell, j, other), i) == s(s(cell, i), j, other)


def test_degeneracy_of_point_cell(pt):
    (cell,) = nerve_cells(pt, 1, 1)
    assert degeneracy(pt, cell, Direction.VERTICAL, 0) == NerveCell(2, 1, (0, 0))
    assert degeneracy(pt, cell, Direction.HORIZONTAL, 1) == NerveCell(1, 2, (0, 0))


def test_restrict_to_whole_grid_is_identity(vac):
    for cell in nerve_cells(vac, 2, 2):
        assert restrict(vac, cell, [0, 1, 2], [0, 1, 2]) == cell


def test_diagonal_faces(vac):
    for cell in diagonal_cells(vac, 2):
        for k in range(3):
            assert diagonal_face(vac, cell, k).bidegree == (1, 1)


def test_point_has_one_orbit(pt):
    for m, n in [(1, 1), (2, 1), (2, 2)]:
        assert len(orbits(pt, m, n)) == 1


def test_psi_inverts_phi(vac):
    for m, n in [(1, 1), (2, 1), (1, 2)]:
        for cell in nerve_cells(vac, m, n):
            assert psi(vac, phi(vac, cell)) == cell


def test_pair2_orbits_match_cells(pair):
    assert len(orbits(pair, 2, 2)) == Nerve(pair).count(2, 2)
    for cell in Nerve(pair).cells(1, 1):
        assert psi(pair, phi(pair, cell)) == cell
