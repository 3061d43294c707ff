import dataclasses

import pytest

from app.core.action import DoubleAction, conjugation_action, validate_action
from app.core.builders import random_double_groupoid
from app.core.bundle import AbelianGroupBundle, FinAbGroup
from app.core.double_groupoid import (
    core_groupoid,
    frame,
    is_slim,
    kernel_bundle,
    require_valid,
    validate_double_groupoid,
)
from app.core.groupoid import validate_groupoid
from app.exceptions import AxiomViolationError, StructureError
from app.extensions.presentation import smash_extension
from app.cohomology.cochains import Bicomplex
from app.cohomology.total import TotalCocycle
from app.ingest.double_groupoid import double_groupoid_from_document, double_groupoid_to_document
from app.ingest.files import load_document
from app.models import ViolationKind
from app.schemas.documents import DoubleGroupoidDocument
from conftest import TWISTS, constant_action, twisted_action


def test_fixtures_are_valid(pt, vac, pair):
    for dg in (pt, vac, pair):
        assert validate_double_groupoid(dg).ok, dg.name


@pytest.mark.parametrize("seed", [0, 1, 7, 42])
def test_random_double_groupoids_are_valid(seed):
    dg = random_double_groupoid(seed)
    assert len(dg.boxes) <= 12
    assert validate_double_groupoid(dg).ok


def test_corrupted_composition_is_reported(vac):
    hcomp = dict(vac.hcomp)
    # (0, 1)(0, 1) = (0, 0); send it to (1, 0) instead
    hcomp[(1, 1)] = 2
    broken = dataclasses.replace(vac, hcomp=hcomp, name="broken VAC22")
    report = validate_double_groupoid(broken)
    assert not report.ok
    assert {v.kind for v in report.violations} & {
        ViolationKind.SIDE_COMPATIBILITY,
        ViolationKind.GROUPOID,
    }
    with pytest.raises(AxiomViolationError) as info:
        require_valid(broken)
    assert info.value.report is not None


def test_core_of_point_is_trivial(pt):
    core = core_groupoid(pt)
    assert core.arrows == (0,)
    assert validate_groupoid(core).ok


def test_core_of_vac22_is_trivial(vac):
    core = core_groupoid(vac)
    assert list(core.arrows) == [vac.theta(0)]


def test_core_of_pair2_is_the_pair_groupoid(pair):
    core = core_groupoid(pair)
    assert validate_groupoid(core).ok
    assert len(core.arrows) == 4
    assert {(core.source[e], core.end[e]) for e in core.arrows} == {
        (0, 0), (0, 1), (1, 0), (1, 1)
    }


def test_kernel_bundles(pt, vac, pair):
    assert kernel_bundle(pt).bundle.is_trivial
    assert kernel_bundle(vac).bundle.is_trivial
    assert kernel_bundle(pair).bundle.is_trivial
    assert is_slim(pair)


def test_kernel_of_a_smash_product_is_the_coefficient_group(pt, pt_z2):
    z = TotalCocycle.zero(Bicomplex(pt, pt_z2))
    total = smash_extension(pt, pt_z2, z).total
    assert validate_double_groupoid(total).ok
    assert kernel_bundle(total).bundle.fiber(0) == FinAbGroup((2,))
    assert not is_slim(total)


def test_frame_of_a_smash_product_is_the_base(pt, pt_z2):
    total = smash_extension(pt, pt_z2, TotalCocycle.zero(Bicomplex(pt, pt_z2))).total
    slim, quotient = frame(total)
    assert len(slim.boxes) == 1
    assert set(quotient.values()) == {0}


def test_actions(pt, vac, pair, vac_z2):
    assert validate_action(pt, constant_action(pt, 2)).ok
    assert validate_action(vac, vac_z2).ok
    conjugation = conjugation_action(pair)
    assert conjugation.bundle.is_trivial
    assert validate_action(pair, conjugation).ok


@pytest.mark.parametrize("vertical,horizontal", TWISTS)
def test_twisted_actions_are_valid(vac, vertical, horizontal):
    action = twisted_action(vac, vertical, horizontal)
    assert validate_action(vac, action).ok
    assert not action.is_trivial
    assert action.act_v(1, (1,)) == ((2,) if vertical else (1,))


def test_conjugation_fixes_the_kernel_of_a_point_extension(pt, pt_z2):
    total = smash_extension(pt, pt_z2, TotalCocycle.zero(Bicomplex(pt, pt_z2))).total
    action = conjugation_action(total)
    assert action.is_trivial
    assert validate_action(total, action).ok


def test_non_homomorphic_action_is_reported(vac):
    bundle = AbelianGroupBundle.constant(vac.points, FinAbGroup((2,)))
    trivial = DoubleAction.trivial(vac, bundle)
    # the nontrivial vertical arrow sends everything to 1
    tables = {g: dict(table) for g, table in trivial.vertical.tables.items()}
    tables[1] = {(0,): (1,), (1,): (1,)}
    broken = DoubleAction.from_tables(vac, bundle, tables, trivial.horizontal.tables)
    report = validate_action(vac, broken)
    assert not report.ok
    assert ViolationKind.HOMOMORPHISM in {v.kind for v in report.violations}


def test_filling_is_checked_only_on_request(fixtures_dir):
    dg = double_groupoid_from_document(load_document(DoubleGroupoidDocument, fixtures_dir / "thin22.json"))
    assert validate_double_groupoid(dg).ok
    report = validate_double_groupoid(dg, filling=True)
    assert not report.ok
    assert {v.kind for v in report.violations} == {ViolationKind.FILLING}


def test_pair2_round_trip_derives_inverses(fixtures_dir, pair):
    doc = load_document(DoubleGroupoidDocument, fixtures_dir / "pair2.json")
    assert doc.h_inverse is None
    dg = double_groupoid_from_document(doc)
    assert validate_double_groupoid(dg).ok
    assert dg.h_inverse == pair.h_inverse
    assert dg.v_inverse == pair.v_inverse
    again = double_groupoid_from_document(double_groupoid_to_document(dg))
    assert again.hcomp == dg.hcomp and again.vcomp == dg.vcomp


def test_conflicting_table_entries_are_rejected(fixtures_dir):
    doc = load_document(DoubleGroupoidDocument, fixtures_dir / "vac22.json")
    a, b, c = doc.hcomp[0]
    doc.hcomp.append((a, b, (c + 1) % 4))
    with pytest.raises(StructureError):
        double_groupoid_from_document(doc)
