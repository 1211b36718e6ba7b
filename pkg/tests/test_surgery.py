"""Tests for model trees: ring semantics, torus bounds and Lefschetz verdicts."""

import time

import pytest

from toricsh.algebra import graded_dims, idempotent_count, is_semisimple, presentation_text
from toricsh.dsl import format_model
from toricsh.exceptions import DomainError
from toricsh.geometry.bundles import BundleModel
from toricsh.geometry.surgery import (
    Blowup,
    Bundle,
    Cn,
    ConnSum,
    Flip,
    certified_levels,
    contains_blowup,
    eval_model,
    iter_pieces,
    lefschetz_check,
    piece_label,
    torus_bound,
)
from toricsh.mirror import brane_census


@pytest.mark.parametrize("count, n", [(1, 2), (3, 2), (2, 3)])
def test_blowup_sh_dimension(count, n):
    """Blowing up m points in C^n gives dim SH = m(n-1)."""
    model = Blowup(count, Cn(n))
    assert eval_model(model).sh.dim == count * (n - 1)
    assert torus_bound(model) == count * (n - 1)


def test_blowup_qh_is_connected_sum():
    assert eval_model(Blowup(1, Cn(2))).qh.dim == 2
    assert eval_model(Blowup(3, Cn(2))).qh.dim == 4


def test_ball_has_vanishing_sh():
    rings = eval_model(Cn(4))
    assert rings.sh.is_zero_ring()
    assert rings.qh.dim == 1
    assert torus_bound(Cn(4)) == 0


def test_flip_of_ball():
    rings = eval_model(Flip(Cn(5), 2, 3))
    assert presentation_text(rings.sh) == "K[x]/(x^2 - 16*q^2)"
    assert is_semisimple(rings.sh)[0]


def test_connected_sum_of_bundles():
    piece = Bundle(BundleModel(1, 1, 1))
    rings = eval_model(ConnSum(piece, piece))
    assert rings.sh.dim == 2
    assert rings.qh.dim == 3


@pytest.mark.parametrize("params", [(1, 2, 1), (1, 3, 2)])
def test_calabi_yau_bundle_has_zero_sh(params):
    assert eval_model(Bundle(BundleModel(*params))).sh.is_zero_ring()


@pytest.mark.slow
def test_flip_after_blowups():
    model = Flip(Blowup(2, Cn(3)), 1, 2)
    assert eval_model(model).sh.dim == 6
    assert torus_bound(model) == 6


def test_iter_pieces_paths():
    pieces = list(iter_pieces(Blowup(2, Cn(3))))
    assert [path for path, _ in pieces] == ["$.child", "$.point[0]", "$.point[1]"]
    assert [piece_label(p) for _, p in pieces] == ["C^3", "O(-1) -> P^2", "O(-1) -> P^2"]


def test_iter_pieces_of_sum_and_flip():
    model = ConnSum(Bundle(BundleModel(1, 1, 2)), Flip(Cn(3), 1, 2))
    assert [path for path, _ in iter_pieces(model)] == [
        "$.left",
        "$.right.child",
        "$.right.piece",
    ]


def test_dimension_mismatch():
    with pytest.raises(DomainError) as exc_info:
        ConnSum(Cn(2), Cn(3))
    assert exc_info.value.code == "dimension_mismatch"
    with pytest.raises(DomainError) as exc_info:
        Flip(Cn(5), 2, 2)
    assert exc_info.value.code == "dimension_mismatch"


def test_blowup_needs_dimension_two():
    with pytest.raises(DomainError) as exc_info:
        Blowup(1, Cn(1))
    assert exc_info.value.code == "invalid_parameter"


def test_flip_rejects_non_semi_positive_piece():
    with pytest.raises(DomainError) as exc_info:
        Flip(Cn(4), 3, 1)
    assert exc_info.value.code == "not_semi_positive"


@pytest.mark.parametrize("j", [1, 2, 3])
def test_line_bundle_certified_at_every_level(j):
    verdict = lefschetz_check(Bundle(BundleModel(1, 1, 3)), j)
    assert verdict.condition_i
    assert verdict.condition_ii
    assert verdict.overall == "certified"


def test_split_bundle_levels():
    model = Bundle(BundleModel(1, 2, 3))
    assert lefschetz_check(model, 3).overall == "certified"

    below = lefschetz_check(model, 2)
    assert not below.vanishing_certified
    assert below.overall == "not certified"

    above = lefschetz_check(model, 4)
    assert above.vanishing_certified
    assert not above.c1_power_classical
    assert above.overall == "not certified"


def test_c1_power_text():
    verdict = lefschetz_check(Bundle(BundleModel(1, 2, 3)), 3)
    assert verdict.c1_power == "8*x^3"
    assert verdict.fitting.nilpotent_dim == 2


def test_certified_levels():
    assert certified_levels(Bundle(BundleModel(1, 2, 3))) == [3, 4]
    assert certified_levels(Cn(4)) == [1, 2, 3]


def test_contains_blowup():
    assert contains_blowup(Flip(Blowup(1, Cn(3)), 1, 2))
    assert not contains_blowup(ConnSum(Cn(3), Flip(Cn(3), 1, 2)))


@pytest.mark.slow
@pytest.mark.parametrize("k, n, n1, n2", [(1, 2, 1, 1), (1, 3, 1, 2), (2, 3, 1, 2)])
def test_flip_of_blowup_dimension(k, n, n1, n2):
    """dim SH = n2 + 1 - n1 + k(n-1)."""
    model = Flip(Blowup(k, Cn(n)), n1, n2)
    assert eval_model(model).sh.dim == n2 + 1 - n1 + k * (n - 1)


def test_connected_sum_is_additive():
    left = Bundle(BundleModel(1, 1, 2))
    right = Blowup(1, Cn(3))
    total = ConnSum(left, right)
    assert torus_bound(total) == torus_bound(left) + torus_bound(right)
    assert idempotent_count(eval_model(total).sh) == (
        idempotent_count(eval_model(left).sh) + idempotent_count(eval_model(right).sh)
    )


def test_many_blowups_evaluate_quickly():
    """Ring sums are assembled from the pieces, so twenty points stay cheap."""
    start = time.perf_counter()
    rings = eval_model(Blowup(20, Cn(2)))
    elapsed = time.perf_counter() - start
    assert rings.sh.dim == 20
    assert rings.qh.dim == 21
    assert graded_dims(rings.sh).even_dim == 20
    assert elapsed < 60


SUM_PARTS = {
    "A": Bundle(BundleModel(1, 1, 2)),
    "C": Bundle(BundleModel(2, 1, 2)),
    "D": Bundle(BundleModel(1, 2, 1)),
    "F": Flip(Cn(3), 1, 2),
}


def _signature(algebra):
    semisimple, witness = is_semisimple(algebra)
    grading = graded_dims(algebra)
    return algebra.dim, semisimple, witness, grading.by_residue, grading.even_dim


def _same_up_to_sign(first, second):
    dim1, ss1, w1, res1, even1 = first
    dim2, ss2, w2, res2, even2 = second
    return (dim1, ss1, res1, even1) == (dim2, ss2, res2, even2) and (w1 == w2 or w1 == -w2)


@pytest.mark.parametrize("left, right", [("A", "C"), ("A", "F"), ("C", "D"), ("D", "F")])
def test_connected_sum_is_commutative(left, right):
    one = eval_model(ConnSum(SUM_PARTS[left], SUM_PARTS[right]))
    two = eval_model(ConnSum(SUM_PARTS[right], SUM_PARTS[left]))
    assert _same_up_to_sign(_signature(one.sh), _signature(two.sh))
    assert _same_up_to_sign(_signature(one.qh), _signature(two.qh))


@pytest.mark.parametrize("names", [("A", "C", "D"), ("A", "C", "F"), ("C", "D", "F")])
def test_connected_sum_is_associative(names):
    a, b, c = (SUM_PARTS[n] for n in names)
    left = eval_model(ConnSum(ConnSum(a, b), c))
    right = eval_model(ConnSum(a, ConnSum(b, c)))
    assert _same_up_to_sign(_signature(left.sh), _signature(right.sh))
    assert _same_up_to_sign(_signature(left.qh), _signature(right.qh))


def test_connected_sum_witness():
    """SH(O(-1) -> P^2) has Gram determinant -12q^2 and SH(O(-2) -> P^2) contributes 1."""
    one = eval_model(ConnSum(SUM_PARTS["A"], SUM_PARTS["C"]))
    semisimple, witness = is_semisimple(one.sh)
    assert one.sh.dim == 3
    assert semisimple
    assert str(witness) == "-12*q^2"


LEAVES_3 = (
    Cn(3),
    Bundle(BundleModel(1, 1, 2)),
    Bundle(BundleModel(2, 1, 2)),
    Bundle(BundleModel(1, 2, 1)),
)


def _trees(depth):
    """Dimension-3 model trees with at most ``depth`` levels."""
    if depth == 1:
        return list(LEAVES_3)
    smaller = _trees(depth - 1)
    grown = [Blowup(1, t) for t in smaller] + [Flip(t, 1, 2) for t in smaller]
    grown += [ConnSum(partner, t) for partner in LEAVES_3[:2] for t in smaller]
    return list(dict.fromkeys(smaller + grown))


@pytest.mark.slow
@pytest.mark.parametrize("model", _trees(3), ids=format_model)
def test_sh_semisimple_on_small_trees(model):
    rings = eval_model(model)
    semisimple, _ = is_semisimple(rings.sh)
    assert semisimple
    census = brane_census(model)
    assert census.total_branes == torus_bound(model)
