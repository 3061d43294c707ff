import pytest

from app.cech.bicomplex import (
    CechBicomplex,
    cech_h1_total,
    cech_total,
    index_theta,
    restriction_map,
)
from app.cech.covers import (
    Cover,
    cech_action,
    cech_bundle,
    cech_chart,
    cech_double_groupoid,
    directed_family,
    transition_morphism,
)
from app.cech.ext import ext_group
from app.cech.gluing import glue_extension, local_sections, transition_functions
from app.cech.refinement import (
    bisimplicial_refinement,
    check_bisimplicial,
    finest_cover,
    induced_refinement,
    levels_up_to,
    matrix_view,
    position_count,
    positions,
    refines,
    vertex_cover,
)
from app.cohomology.cochains import Bicomplex
from app.cohomology.total import TotalCocycle, TotalComplex
from app.core.bundle import FinAbGroup
from app.core.double_groupoid import is_slim, validate_double_groupoid
from app.core.morphism import check_morphism
from app.exceptions import CohomologyMismatchError, CoverError, ResourceLimitError
from app.extensions.presentation import smash_extension
from app.ingest.covers import cover_family
from app.ingest.files import load_document
from app.nerve.cells import Nerve
from app.reports import gluing_report
from app.schemas.documents import CoverDocument
from conftest import TWISTS, constant_action, twisted_action
from oracles import cech_box_count, subgrid_count


@pytest.mark.parametrize("m", range(5))
@pytest.mark.parametrize("n", range(5))
def test_subgrid_count(m, n):
    assert position_count(m, n) == subgrid_count(m, n)
    assert len(positions(m, n)) == position_count(m, n)


def test_matrix_views():
    view = matrix_view(1, 1, tuple(range(9)))
    assert len(view) == 3 and all(len(row) == 3 for row in view)
    view = matrix_view(2, 1, tuple(range(21)))
    assert len(view) == 7 and all(len(row) == 3 for row in view)


def test_covers():
    with pytest.raises(CoverError):
        Cover.of([0, 1], [[0]])
    fine = Cover.of([0, 1, 2], [[0], [1, 2]])
    coarse = Cover.single([0, 1, 2])
    assert fine.refines(coarse)
    assert not coarse.refines(fine)
    assert fine.refinement_map(coarse) == {0: 0, 1: 0}
    assert directed_family([coarse, fine]) == 1
    with pytest.raises(CoverError):
        directed_family([Cover.of([0, 1, 2], [[0, 1], [2]]), Cover.of([0, 1, 2], [[0], [1, 2]])])


def test_single_set_chart_is_the_double_groupoid(vac):
    total = cech_double_groupoid(vac, Cover.single([0]))
    assert len(total.points) == 1
    assert len(total.boxes) == len(vac.boxes)
    assert validate_double_groupoid(total).ok


def test_chart_box_count(pair):
    sets = [[0], [1], [0, 1]]
    chart = cech_chart(pair, Cover.of([0, 1], sets))
    assert len(chart.total.boxes) == cech_box_count(pair, sets)
    assert validate_double_groupoid(chart.total).ok
    assert check_morphism(chart.projection).ok


def test_two_copies_of_the_point(pt, pair):
    total = cech_double_groupoid(pt, Cover.of([0], [[0], [0]]))
    assert len(total.points) == 2
    assert len(total.boxes) == len(pair.boxes)
    assert len(total.vertical.arrows) == 4
    assert is_slim(total)
    assert validate_double_groupoid(total).ok


def test_chart_coefficients(vac, vac_z2):
    chart = cech_chart(vac, Cover.of([0], [[0], [0]]))
    bundle = cech_bundle(chart, vac_z2.bundle)
    assert len(bundle.points) == 2
    assert cech_action(chart, vac_z2).bundle.same_as(bundle)


def test_transition_morphism(vac):
    fine = cech_chart(vac, Cover.of([0], [[0], [0]]))
    coarse = cech_chart(vac, Cover.single([0]))
    assert check_morphism(transition_morphism(fine, coarse)).ok


def test_finest_cover_is_bisimplicial(vac):
    cover = finest_cover(vac)
    assert check_bisimplicial(cover).ok
    # every cell has its own index
    for m, n in cover.levels():
        assert cover.size(m, n) == Nerve(vac).count(m, n)


@pytest.mark.parametrize("order", [2, 4])
def test_finest_cover_gives_the_discrete_group(vac, order):
    action = constant_action(vac, order)
    discrete = TotalComplex(Bicomplex(vac, action)).cohomology(1).group
    assert cech_h1_total(finest_cover(vac), action) == discrete


@pytest.mark.parametrize("vertical,horizontal", TWISTS)
def test_finest_cover_with_a_twisted_action(vac, vertical, horizontal):
    action = twisted_action(vac, vertical, horizontal)
    discrete = TotalComplex(Bicomplex(vac, action)).cohomology(1).group
    assert discrete.is_trivial
    assert cech_h1_total(finest_cover(vac), action) == discrete


def test_point_cover_of_the_point(pt, pt_z2):
    cover = Cover.of([0], [[0], [0]])
    bisimplicial = vertex_cover(pt, cover)
    assert check_bisimplicial(bisimplicial).ok
    assert bisimplicial.size(0, 0) == 2
    chart = cech_chart(pt, cover)
    unnormalized = TotalComplex(
        Bicomplex(chart.total, cech_action(chart, pt_z2), normalized=False)
    ).cohomology(1).group
    cech = cech_h1_total(bisimplicial, pt_z2)
    assert cech == unnormalized
    assert cech.is_trivial


def test_restriction_commutes_with_the_differentials(vac, vac_z2):
    nerve = Nerve(vac)
    bound = 3
    fine_covers = {level: Cover.finest(nerve.cells(*level)) for level in levels_up_to(bound)}
    coarse_covers = {level: Cover.single(nerve.cells(*level)) for level in levels_up_to(bound)}
    fine = bisimplicial_refinement(vac, fine_covers, bound, nerve=nerve)
    coarse = bisimplicial_refinement(vac, coarse_covers, bound, nerve=nerve)
    assert refines(fine, fine_covers)
    assert refines(coarse, coarse_covers)
    maps = induced_refinement(fine_covers, coarse_covers)
    upper, lower = CechBicomplex(coarse, vac_z2), CechBicomplex(fine, vac_z2)

    def rho(r, s):
        return restriction_map(upper, lower, index_theta(fine, maps, r, s), r, s)

    for r, s in [(1, 1)]:
        moduli_v = lower.space(r + 1, s).moduli
        left = lower.d_v(r, s).compose(rho(r, s)).to_dense()
        right = rho(r + 1, s).compose(upper.d_v(r, s)).to_dense()
        assert all((a - b) % moduli_v[i] == 0 for i in range(len(moduli_v)) for a, b in zip(left[i], right[i]))
        moduli_h = lower.space(r, s + 1).moduli
        left = lower.d_h(r, s).compose(rho(r, s)).to_dense()
        right = rho(r, s + 1).compose(upper.d_h(r, s)).to_dense()
        assert all((a - b) % moduli_h[i] == 0 for i in range(len(moduli_h)) for a, b in zip(left[i], right[i]))


def test_levels_must_be_covered(vac):
    nerve = Nerve(vac)
    covers = {level: Cover.single(nerve.cells(*level)) for level in levels_up_to(2)}
    del covers[(1, 1)]
    with pytest.raises(CoverError):
        bisimplicial_refinement(vac, covers, 2, nerve=nerve)


def test_refinement_cap(vac):
    nerve = Nerve(vac)
    covers = {level: Cover.finest(nerve.cells(*level)) for level in levels_up_to(2)}
    with pytest.raises(ResourceLimitError):
        bisimplicial_refinement(vac, covers, 2, max_indices=3, nerve=nerve)


def test_cover_stops_at_its_bound(vac, vac_z2):
    cover = finest_cover(vac, bound=2)
    with pytest.raises(ResourceLimitError):
        cech_total(cover, vac_z2).cohomology(1)


@pytest.fixture(scope="module")
def twisted(vac, vac_z4):
    complex_ = TotalComplex(Bicomplex(vac, vac_z4))
    z = TotalCocycle.from_vector(complex_, complex_.cohomology(1).representative((1, 1)))
    return smash_extension(vac, vac_z4, z)


BOX_COVER = [[0, 1, 3], [1, 2, 3], [0, 2]]


def test_transition_functions(twisted):
    cover = Cover.of(twisted.base.boxes, BOX_COVER)
    sections = local_sections(twisted, cover, seed=3)
    psi = transition_functions(twisted, cover, sections)
    for (j, k, f), value in psi.items():
        fiber = twisted.bundle.fiber(twisted.base.gamma(f))
        if j == k:
            assert value == fiber.zero()
        assert psi[(k, j, f)] == fiber.neg(value)
        for m in range(len(cover)):
            if (k, m, f) in psi:
                assert psi[(j, m, f)] == fiber.add(value, psi[(k, m, f)])
    assert transition_functions(twisted, cover, sections, horizontal=True) == psi


def test_gluing_recovers_the_total(twisted):
    cover = Cover.of(twisted.base.boxes, BOX_COVER)
    glued = glue_extension(twisted, cover, local_sections(twisted, cover, seed=5))
    assert len(glued.glued.boxes) == len(twisted.total.boxes)
    assert validate_double_groupoid(glued.glued).ok
    assert check_morphism(glued.to_total).ok


def test_gluing_needs_a_cover_of_the_boxes(twisted):
    with pytest.raises(CoverError):
        local_sections(twisted, Cover.of([0, 1], [[0, 1]]))
    cover = Cover.of(twisted.base.boxes, BOX_COVER)
    sections = local_sections(twisted, cover)
    with pytest.raises(CoverError):
        transition_functions(twisted, cover, sections[:2])


def test_ext_of_the_point(pt, pt_z2):
    report = ext_group(pt, pt_z2, [Cover.of([0], [[0]]), Cover.of([0], [[0], [0]])])
    assert report.ext.invariant_factors == []
    assert report.ok
    assert len(report.transitions) == 2


@pytest.mark.slow
def test_ext_over_the_vac22_chain(fixtures_dir, vac, vac_z2):
    doc = load_document(CoverDocument, fixtures_dir / "vac22_chain.json")
    report = ext_group(vac, vac_z2, cover_family(doc, vac), bound=doc.bound)
    assert report.ext.invariant_factors == [2, 2]
    assert report.finest == 0
    assert report.ok


def test_ext_raises_when_the_groups_disagree(monkeypatch, pt, pt_z2):
    monkeypatch.setattr("app.cech.ext.cech_h1_total", lambda cover, action: FinAbGroup((2,)))
    with pytest.raises(CohomologyMismatchError) as info:
        ext_group(pt, pt_z2, [Cover.of([0], [[0]])])
    assert info.value.report.position == 0
    assert not info.value.report.agrees


@pytest.mark.parametrize("seed", [0, 3])
def test_gluing_report(vac, vac_z4, seed):
    cover = Cover.of(sorted(vac.boxes), BOX_COVER)
    report = gluing_report(vac, vac_z4, cover, seed=seed)
    assert report.ok
    assert len(report.classes) == 4
    assert all(row.boxes == 16 for row in report.classes)
    assert report.seed == seed
    assert gluing_report(vac, vac_z4, cover, seed=seed) == report
