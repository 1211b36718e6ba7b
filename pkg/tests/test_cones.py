"""Tests for moment cones, good-cone and Delzant checks, vanishing ranges."""

from fractions import Fraction

import pytest

from toricsh.exceptions import DomainError
from toricsh.geometry.bundles import BundleModel
from toricsh.geometry.cones import (
    MomentCone,
    PolytopeFacet,
    boundary_cone,
    delzant_check,
    good_cone_check,
    lefschetz_window,
    product_polytope,
    simplex_facets,
    sphere_vanishing_range,
    vanishing_range,
)

SQUARE_CONE = MomentCone(((1, 0, 0), (0, 1, 0), (-1, 0, 1), (0, -1, 1)))
PYRAMID_CONE = MomentCone(
    ((0, 0, 1, 0), (0, 1, -1, 0), (1, 0, -1, 0), (0, -1, -1, 2), (-1, 0, -1, 2))
)


def test_boundary_cone_normals():
    cone = boundary_cone(BundleModel(1, 2, 2))
    assert cone.facet_normals == (
        (1, 0, 0, 0),
        (-1, 0, 0, 1),
        (0, 1, 0, 0),
        (0, 0, 1, 0),
        (0, -1, -1, 1),
    )


def test_cross_section_recovers_polytope():
    facets = product_polytope([1, 2])
    assert MomentCone.over_polytope(facets).cross_section() == facets


def test_boundary_cone_is_good_and_delzant():
    cone = boundary_cone(BundleModel(1, 2, 2))
    verdict = good_cone_check(cone)
    assert verdict.good
    assert verdict.strictly_convex
    assert verdict.bad_faces() == []
    assert delzant_check(cone.cross_section()).is_delzant


def test_boundary_cone_scales_base_simplex_by_m():
    """O(-2) -> P^2 has the cone over twice the standard triangle."""
    cone = boundary_cone(BundleModel(2, 1, 2))
    assert cone.facet_normals == ((1, 0, 0), (0, 1, 0), (-1, -1, 2))
    assert good_cone_check(cone).good
    assert delzant_check(cone.cross_section()).is_delzant
    assert vanishing_range(BundleModel(2, 1, 2)).levels() == [1, 2]


def test_product_polytope_rejects_bad_scales():
    with pytest.raises(ValueError, match="one positive scale per simplex"):
        product_polytope([1, 2], [1])
    with pytest.raises(ValueError, match="one positive scale per simplex"):
        product_polytope([1, 2], [1, 0])


def test_square_cone_is_good():
    """Four facets meet at the apex; the apex is not subject to the face count."""
    verdict = good_cone_check(SQUARE_CONE)
    assert verdict.good
    assert verdict.apex_facet_count == 4
    assert len(verdict.rays) == 4


def test_pyramid_cone_fails_face_condition():
    verdict = good_cone_check(PYRAMID_CONE)
    assert not verdict.good
    assert not verdict.face_condition
    assert verdict.bad_faces()


def test_cone_containing_a_line():
    verdict = good_cone_check(MomentCone(((1, 0), (-1, 0))))
    assert not verdict.good
    assert not verdict.strictly_convex


def test_redundant_normal_is_rejected():
    with pytest.raises(DomainError) as exc_info:
        good_cone_check(MomentCone(((1, 0), (0, 1), (1, 1))))
    assert exc_info.value.code == "redundant_normal"


@pytest.mark.parametrize("normals", [(), ((1, 0), (0, 1, 0)), ((0, 0), (1, 0))])
def test_degenerate_cone(normals):
    with pytest.raises(DomainError) as exc_info:
        MomentCone(normals)
    assert exc_info.value.code == "degenerate_cone"


def test_simplex_is_delzant():
    verdict = delzant_check(simplex_facets(2))
    assert verdict.is_delzant
    assert verdict.vertices == (
        (Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(1)),
        (Fraction(1), Fraction(0)),
    )


def test_non_delzant_triangle():
    facets = [
        PolytopeFacet((1, 0), 0),
        PolytopeFacet((0, 1), 0),
        PolytopeFacet((-1, -2), 2),
    ]
    verdict = delzant_check(facets)
    assert not verdict.is_delzant
    assert verdict.failing_vertices == ((Fraction(0), Fraction(1)),)
    assert len(verdict.vertices) == 3


def test_unbounded_polytope_is_rejected():
    with pytest.raises(DomainError) as exc_info:
        delzant_check([PolytopeFacet((1, 0), 0), PolytopeFacet((0, 1), 0)])
    assert exc_info.value.code == "unbounded_polytope"


@pytest.mark.parametrize(
    "params, lo, hi",
    [
        ((1, 2, 3), 3, 4),
        ((1, 1, 3), 1, 3),
        ((1, 2, 2), 2, 3),
    ],
)
def test_bundle_vanishing_range(params, lo, hi):
    rng = vanishing_range(BundleModel(*params))
    assert (rng.lo, rng.hi) == (lo, hi)
    assert not rng.is_empty


def test_vanishing_range_of_cones():
    assert vanishing_range(SQUARE_CONE).levels() == [2]
    assert vanishing_range(PYRAMID_CONE).is_empty


def test_sphere_range():
    rng = sphere_vanishing_range(4)
    assert rng.levels() == [1, 2, 3]
    assert rng.reason == "boundary S^7 of C^4"


def test_lefschetz_window():
    window = lefschetz_window(BundleModel(1, 2, 3))
    assert (window.lo, window.hi) == (3, 3)
    assert window.contains(3)
    assert not window.contains(4)
