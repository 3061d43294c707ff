import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.cohomology.cochains import Bicomplex, coboundary_h, coboundary_v
from app.cohomology.exact_sequence import verify_long_exact_sequence
from app.cohomology.groupoid import groupoid_cohomology
from app.cohomology.normalize import normalize_cocycle, normalizing_cochain
from app.cohomology.snf import SmithNormalForm, integer_determinant, kernel_basis
from app.cohomology.total import (
    TotalCocycle,
    TotalComplex,
    h0_morphisms,
    h_total,
    is_closed,
    total_complex,
    zero_cochain_coboundary,
)
from app.core.action import GroupoidAction
from app.core.builders import cyclic_group_groupoid, random_double_groupoid
from app.core.bundle import AbelianGroupBundle, FinAbGroup
from app.exceptions import CocycleError, ResourceLimitError
from conftest import TWISTS, constant_action, twisted_action
from oracles import det, entry_gcd, thin_boxes

matrices = st.integers(1, 4).flatmap(
    lambda rows: st.integers(1, 4).flatmap(
        lambda columns: st.lists(
            st.lists(st.integers(-6, 6), min_size=columns, max_size=columns),
            min_size=rows,
            max_size=rows,
        )
    )
)


@given(matrices)
def test_smith_normal_form(matrix):
    snf = SmithNormalForm(matrix)
    product_ = snf.left.dot(snf.matrix).dot(snf.right)
    assert (product_ == snf.diagonal_form).all()
    assert abs(integer_determinant(snf.left.tolist())) == 1
    assert abs(integer_determinant(snf.right.tolist())) == 1
    factors = snf.invariant_factors
    assert all(d > 0 for d in factors)
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))
    if factors:
        assert factors[0] == entry_gcd(matrix)
    else:
        assert entry_gcd(matrix) == 0


@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)
))
def test_determinant(matrix):
    assert integer_determinant(matrix) == det(matrix)
    product_ = 1
    for d in SmithNormalForm(matrix).diagonal:
        product_ *= d
    assert abs(det(matrix)) == abs(product_)


def test_property_tests_run_the_acceptance_profile():
    assert settings.get_profile("acceptance").max_examples == 500
    assert settings.get_profile("dev").max_examples < 500


def test_kernel_basis():
    matrix = [[1, 2, 3], [2, 4, 6]]
    basis = kernel_basis(matrix)
    assert basis.shape == (3, 2)
    assert not np.array(matrix, dtype=object).dot(basis).any()


def _square_zero(bicomplex: Bicomplex, r: int, s: int) -> None:
    # nerve cells stop at bidegree (4, 4)
    if r <= 2:
        d2 = bicomplex.d_v(r + 1, s).compose(bicomplex.d_v(r, s))
        assert d2.is_zero_modulo(bicomplex.space(r + 2, s).moduli)
    if s <= 2:
        d2 = bicomplex.d_h(r, s + 1).compose(bicomplex.d_h(r, s))
        assert d2.is_zero_modulo(bicomplex.space(r, s + 2).moduli)
    vh = bicomplex.d_h(r + 1, s).compose(bicomplex.d_v(r, s)).to_dense()
    hv = bicomplex.d_v(r, s + 1).compose(bicomplex.d_h(r, s)).to_dense()
    moduli = bicomplex.space(r + 1, s + 1).moduli
    for i, d in enumerate(moduli):
        assert all((a - b) % d == 0 for a, b in zip(vh[i], hv[i]))


UP_TO_THREE = [(r, s) for r in range(1, 4) for s in range(1, 4)]


@pytest.mark.parametrize("normalized", [True, False])
def test_bicomplex_laws(pt, vac, pair, normalized):
    for dg in (pt, vac):
        for order in (2, 4):
            bicomplex = Bicomplex(dg, constant_action(dg, order), normalized)
            for r, s in UP_TO_THREE:
                _square_zero(bicomplex, r, s)
    for dg, degrees in ((pair, [(1, 1)]), (random_double_groupoid(3), [(1, 1), (2, 1), (1, 2)])):
        for order in (2, 4):
            bicomplex = Bicomplex(dg, constant_action(dg, order), normalized)
            for r, s in degrees:
                _square_zero(bicomplex, r, s)


@pytest.mark.parametrize("normalized", [True, False])
@pytest.mark.parametrize("vertical,horizontal", TWISTS)
def test_bicomplex_laws_with_a_twisted_action(vac, normalized, vertical, horizontal):
    bicomplex = Bicomplex(vac, twisted_action(vac, vertical, horizontal), normalized)
    for r, s in UP_TO_THREE:
        _square_zero(bicomplex, r, s)


@pytest.mark.parametrize("vertical,horizontal", TWISTS)
def test_twisted_cohomology_of_vac22(vac, vertical, horizontal):
    complex_ = TotalComplex(Bicomplex(vac, twisted_action(vac, vertical, horizontal)))
    assert complex_.cohomology(0).group.order == (3 if vertical and horizontal else 1)
    assert complex_.cohomology(1).group.is_trivial


def test_total_differentials_square_to_zero(vac_z4):
    complex_ = total_complex(vac_z4.dg, vac_z4, 2)
    assert complex_.is_square_zero(1)
    assert complex_.is_square_zero(2)


def test_point_cochains_vanish(pt, pt_z2):
    bicomplex = Bicomplex(pt, pt_z2)
    for r, s in [(1, 1), (2, 1), (1, 2)]:
        assert bicomplex.space(r, s).dimension == 0
    assert h_total(pt, pt_z2, 0).is_trivial
    assert h_total(pt, pt_z2, 1).is_trivial


def test_square_cochains_count_non_thin_boxes(vac, vac_z2):
    space = Bicomplex(vac, vac_z2).space(1, 1)
    assert space.order == 2 ** len(set(vac.boxes) - thin_boxes(vac))


def test_vac22_with_z2(vac, vac_z2):
    complex_ = TotalComplex(Bicomplex(vac, vac_z2))
    assert complex_.cohomology(0).group == FinAbGroup((2,))
    assert complex_.cohomology(1).group == FinAbGroup((2, 2))
    # every total differential vanishes mod 2
    for n in range(2):
        assert complex_.differential(n).reduced(complex_.moduli(n + 1)).nnz == 0


def test_vac22_with_z4(vac, vac_z4):
    complex_ = TotalComplex(Bicomplex(vac, vac_z4))
    assert complex_.cohomology(0).group == FinAbGroup((2,))
    assert complex_.cohomology(1).group == FinAbGroup((2, 2))


def test_h0_counts_simultaneous_morphisms(vac, vac_z2, pt, pt_z2):
    assert len(h0_morphisms(vac, vac_z2)) == h_total(vac, vac_z2, 0).order
    assert len(h0_morphisms(pt, pt_z2)) == 1


def test_group_cohomology_of_z2():
    g = cyclic_group_groupoid(2)
    bundle = AbelianGroupBundle.constant(g.objects, FinAbGroup((2,)))
    action = GroupoidAction.trivial(g, bundle)
    for n in range(3):
        assert groupoid_cohomology(g, action, n) == FinAbGroup((2,))


def test_degree_cap(vac, vac_z2):
    with pytest.raises(ResourceLimitError):
        TotalComplex(Bicomplex(vac, vac_z2)).differential(4)


@pytest.mark.parametrize("order", [2, 4])
def test_long_exact_sequence(pt, vac, order):
    for dg in (pt, vac):
        report = verify_long_exact_sequence(dg, constant_action(dg, order), 2)
        assert report.ok, [node for node in report.nodes if not node.exact]


def _unnormalized(dg, action):
    return Bicomplex(dg, action, normalized=False)


@given(st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_normalizing_a_coboundary(vac, vac_z4, values):
    lam = _unnormalized(vac, vac_z4).space(1, 1).cochain(values)
    z = zero_cochain_coboundary(vac, vac_z4, lam)
    normalized = normalize_cocycle(vac, vac_z4, z)
    assert normalized.normalized
    complex_ = TotalComplex(Bicomplex(vac, vac_z4))
    assert complex_.cohomology(1).is_coboundary(list(normalized.vector))


@given(
    st.tuples(st.integers(0, 1), st.integers(0, 1)),
    st.lists(st.integers(0, 3), min_size=4, max_size=4),
)
def test_normalizing_keeps_the_class(vac, vac_z4, coordinates, values):
    complex_ = TotalComplex(Bicomplex(vac, vac_z4))
    h1 = complex_.cohomology(1)
    z = TotalCocycle.from_vector(complex_, h1.representative(coordinates))
    bicomplex = _unnormalized(vac, vac_z4)
    spread = TotalCocycle(
        bicomplex.space(2, 1).from_function(z.sigma.value),
        bicomplex.space(1, 2).from_function(z.tau.value),
    )
    lam = bicomplex.space(1, 1).cochain(values)
    shifted = spread + zero_cochain_coboundary(vac, vac_z4, lam)
    assert is_closed(vac, vac_z4, shifted)
    normalized = normalize_cocycle(vac, vac_z4, shifted)
    assert h1.coordinates(list(normalized.vector)) == tuple(coordinates)
    assert normalizing_cochain(vac, vac_z4, shifted).space.bidegree == (1, 1)


def test_normalizing_rejects_open_cochains(vac, vac_z4):
    bicomplex = _unnormalized(vac, vac_z4)
    sigma = bicomplex.space(2, 1).zero()
    tau = bicomplex.space(1, 2).cochain([1] * bicomplex.space(1, 2).dimension)
    z = TotalCocycle(sigma, tau)
    # d_V of the constant tau is the middle face alone
    assert not is_closed(vac, vac_z4, z)
    with pytest.raises(CocycleError):
        normalize_cocycle(vac, vac_z4, z)


def test_coboundaries_commute_on_cochains(vac, vac_z2):
    bicomplex = Bicomplex(vac, vac_z2)
    for alpha in bicomplex.space(1, 1).elements():
        a = coboundary_h(vac, vac_z2, coboundary_v(vac, vac_z2, alpha))
        b = coboundary_v(vac, vac_z2, coboundary_h(vac, vac_z2, alpha))
        assert a.vector == b.vector
