from itertools import product

import pytest

from app.cohomology.cochains import Bicomplex
from app.cohomology.total import TotalCocycle, TotalComplex, is_closed
from app.core.bundle import FinAbGroup
from app.core.double_groupoid import validate_double_groupoid
from app.core.morphism import DoubleGroupoidMorphism
from app.exceptions import CocycleError
from app.extensions.classify import classify_extensions
from app.extensions.equivalence import (
    extensions_equivalent,
    extensions_isomorphic,
    find_equivalence,
    group_automorphisms,
)
from app.extensions.presentation import (
    cocycle_from_extension,
    double_kernel,
    induced_action,
    smash_extension,
    validate_extension,
)
from app.extensions.pullback import cocycle_pullback, pullback_action
from app.extensions.smash import build_smash_product, smash_product
from app.ingest.cocycles import cocycle_from_document, cocycle_to_document
from conftest import TWISTS, constant_action, twisted_action
from oracles import extension_classes


def _cochains(complex_: TotalComplex):
    """Every normalized total 1-cochain."""
    for vector in product(*(range(d) for d in complex_.moduli(1))):
        yield TotalCocycle.from_vector(complex_, vector)


def test_smash_of_point_by_z2(pt, pt_z2):
    z = TotalCocycle.zero(Bicomplex(pt, pt_z2))
    total = smash_product(pt, pt_z2, z)
    assert len(total.boxes) == 2
    assert validate_double_groupoid(total).ok


def test_trivial_extension_of_vac22(vac, vac_z2):
    ext = smash_extension(vac, vac_z2, TotalCocycle.zero(Bicomplex(vac, vac_z2)))
    assert len(ext.total.boxes) == 8
    assert validate_extension(ext).ok
    assert double_kernel(ext).same_as(vac_z2.bundle)
    assert induced_action(ext).is_trivial


@pytest.mark.parametrize("order", [2, 4])
def test_smash_product_is_valid_exactly_for_cocycles(vac, order):
    action = constant_action(vac, order)
    complex_ = TotalComplex(Bicomplex(vac, action))
    valid = 0
    for z in _cochains(complex_):
        closed = is_closed(vac, action, z)
        total = build_smash_product(vac, action, z).total
        assert validate_double_groupoid(total).ok == closed
        valid += closed
    assert valid == complex_.cohomology(1).group.order * (1 if order == 2 else 2)


def test_open_cochain_is_rejected(vac, vac_z4):
    complex_ = TotalComplex(Bicomplex(vac, vac_z4))
    # sigma = 1 and tau = 0 leaves d_H sigma = 2
    z = TotalCocycle.from_vector(complex_, [1, 0])
    with pytest.raises(CocycleError) as info:
        smash_product(vac, vac_z4, z)
    assert info.value.report is not None


def test_smash_needs_a_normalized_cocycle(vac, vac_z2):
    bicomplex = Bicomplex(vac, vac_z2, normalized=False)
    z = TotalCocycle.zero(bicomplex)
    with pytest.raises(CocycleError):
        build_smash_product(vac, vac_z2, z)


@pytest.mark.parametrize("order", [2, 4])
def test_cocycle_round_trip(vac, order):
    action = constant_action(vac, order)
    complex_ = TotalComplex(Bicomplex(vac, action))
    for z in _cochains(complex_):
        if not is_closed(vac, action, z):
            continue
        back = cocycle_from_extension(smash_extension(vac, action, z))
        difference = [a - b for a, b in zip(back.vector, z.vector)]
        assert complex_.cohomology(1).is_coboundary(difference)


def test_equivalence_follows_the_class(vac, vac_z2):
    complex_ = TotalComplex(Bicomplex(vac, vac_z2))
    h1 = complex_.cohomology(1)
    extensions = {
        c: smash_extension(vac, vac_z2, TotalCocycle.from_vector(complex_, h1.representative(c)))
        for c in h1.classes(16)
    }
    for (c1, e1), (c2, e2) in product(extensions.items(), repeat=2):
        assert extensions_equivalent(e1, e2) == (c1 == c2)


def test_direct_search_agrees(vac, vac_z2):
    complex_ = TotalComplex(Bicomplex(vac, vac_z2))
    h1 = complex_.cohomology(1)
    zero = smash_extension(vac, vac_z2, TotalCocycle.zero(Bicomplex(vac, vac_z2)))
    other = smash_extension(vac, vac_z2, TotalCocycle.from_vector(complex_, h1.representative((1, 0))))
    assert find_equivalence(zero, zero) is not None
    assert find_equivalence(zero, other) is None
    found = extensions_isomorphic(other, other)
    assert found is not None


def test_group_automorphisms():
    assert len(list(group_automorphisms(FinAbGroup((2, 2))))) == 6
    assert len(list(group_automorphisms(FinAbGroup((4,))))) == 2


def test_classification_of_vac22(vac, vac_z2, vac_z4):
    h1, classes = classify_extensions(vac, vac_z2)
    assert h1 == FinAbGroup((2, 2))
    assert len(classes) == h1.order
    assert all(c.valid for c in classes)
    assert [c.index for c in classes] == list(range(4))

    h1, classes = classify_extensions(vac, vac_z4, validate=False)
    assert len(classes) == 4
    assert all(c.valid is None for c in classes)


def test_classification_of_point(pt, pt_z2):
    h1, classes = classify_extensions(pt, pt_z2)
    assert h1.is_trivial
    assert len(classes) == 1
    assert classes[0].valid


def test_pullback_along_the_identity(vac, vac_z2):
    complex_ = TotalComplex(Bicomplex(vac, vac_z2))
    z = TotalCocycle.from_vector(complex_, complex_.cohomology(1).representative((1, 1)))
    identity = DoubleGroupoidMorphism.over_identity(vac, vac, {a: a for a in vac.boxes})
    pulled = cocycle_pullback(identity, vac_z2, z)
    assert pulled.vector == z.vector
    assert pullback_action(identity, vac_z2).is_trivial


def test_cocycle_document_round_trip(vac, vac_z4):
    complex_ = TotalComplex(Bicomplex(vac, vac_z4))
    z = TotalCocycle.from_vector(complex_, complex_.cohomology(1).representative((1, 1)))
    doc = cocycle_to_document(z, "class 3", [1, 1])
    again = cocycle_from_document(doc, vac, vac_z4)
    assert again.vector == z.vector


@pytest.mark.parametrize("order", [2, 4])
def test_extension_count_matches_h1(pt, vac, order):
    for dg in (pt, vac):
        action = constant_action(dg, order)
        h1, classes = classify_extensions(dg, action)
        assert extension_classes(dg, action) == h1.order == len(classes)


@pytest.mark.parametrize("vertical,horizontal", TWISTS)
def test_twisted_smash_product_is_valid_exactly_for_cocycles(vac, vertical, horizontal):
    action = twisted_action(vac, vertical, horizontal)
    complex_ = TotalComplex(Bicomplex(vac, action))
    assert complex_.cohomology(1).group.is_trivial
    for z in _cochains(complex_):
        closed = is_closed(vac, action, z)
        total = build_smash_product(vac, action, z).total
        assert validate_double_groupoid(total).ok == closed
        if closed:
            back = cocycle_from_extension(smash_extension(vac, action, z))
            difference = [a - b for a, b in zip(back.vector, z.vector)]
            assert complex_.cohomology(1).is_coboundary(difference)


@pytest.mark.parametrize("vertical,horizontal", TWISTS)
def test_twisted_extensions_are_all_trivial(vac, vertical, horizontal):
    action = twisted_action(vac, vertical, horizontal)
    assert extension_classes(vac, action) == 1
