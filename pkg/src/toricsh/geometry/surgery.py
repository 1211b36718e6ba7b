"""Model trees and their ring-level semantics.

Blow-ups at infinity and reverse simple flips reduce to boundary connected
sums with bundle pieces, so every tree evaluates through ``sum_rings``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union

from toricsh.algebra import (
    FittingSplit,
    QuotientAlgebra,
    element_char_poly,
    graded_dims,
    ground_field,
    is_semisimple,
    localize_at_c1,
    sum_rings,
    zero_ring,
)
from toricsh.exceptions import DomainError, ToolkitError
from toricsh.geometry.bundles import BundleModel, bundle_qh
from toricsh.geometry.cones import VanishingRange, sphere_vanishing_range, vanishing_range
from toricsh.polyalg.polys import MPoly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Bundle:
    model: BundleModel

    @property
    def dimension(self) -> int:
        return self.model.n


@dataclass(frozen=True)
class Cn:
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"C^n needs n >= 1, got {self.n}", code="invalid_parameter")

    @property
    def dimension(self) -> int:
        return self.n


@dataclass(frozen=True)
class Blowup:
    count: int
    child: "ModelExpr"

    def __post_init__(self) -> None:
        if self.count < 1:
            raise DomainError(f"blow-up count must be >= 1, got {self.count}", code="invalid_parameter")
        if self.child.dimension < 2:
            raise DomainError("blow-ups need complex dimension n >= 2", code="invalid_parameter")

    @property
    def dimension(self) -> int:
        return self.child.dimension

    @property
    def piece(self) -> BundleModel:
        return BundleModel(1, 1, self.dimension - 1)


@dataclass(frozen=True)
class ConnSum:
    left: "ModelExpr"
    right: "ModelExpr"

    def __post_init__(self) -> None:
        if self.left.dimension != self.right.dimension:
            raise DomainError(
                f"dimension mismatch in connected sum: {self.left.dimension} vs {self.right.dimension}",
                code="dimension_mismatch",
            )

    @property
    def dimension(self) -> int:
        return self.left.dimension


@dataclass(frozen=True)
class Flip:
    child: "ModelExpr"
    n1: int
    n2: int

    def __post_init__(self) -> None:
        if self.n1 + self.n2 != self.child.dimension:
            raise DomainError(
                f"flip({self.n1}, {self.n2}) needs dimension {self.n1 + self.n2}, "
                f"child has dimension {self.child.dimension}",
                code="dimension_mismatch",
            )
        BundleModel(1, self.n1, self.n2)

    @property
    def dimension(self) -> int:
        return self.child.dimension

    @property
    def piece(self) -> BundleModel:
        return BundleModel(1, self.n1, self.n2)


ModelExpr = Union[Bundle, Cn, Blowup, ConnSum, Flip]
Leaf = Union[BundleModel, Cn]


def iter_pieces(model: ModelExpr, path: str = "$") -> Iterator[tuple[str, Leaf]]:
    """Elementary pieces (bundles and C^n) with their tree paths."""
    if isinstance(model, Bundle):
        yield path, model.model
    elif isinstance(model, Cn):
        yield path, model
    elif isinstance(model, Blowup):
        yield from iter_pieces(model.child, f"{path}.child")
        for i in range(model.count):
            yield f"{path}.point[{i}]", model.piece
    elif isinstance(model, Flip):
        yield from iter_pieces(model.child, f"{path}.child")
        yield f"{path}.piece", model.piece
    elif isinstance(model, ConnSum):
        yield from iter_pieces(model.left, f"{path}.left")
        yield from iter_pieces(model.right, f"{path}.right")
    else:
        raise TypeError(f"not a model expression: {model!r}")


def piece_label(piece: Leaf) -> str:
    return piece.describe() if isinstance(piece, BundleModel) else f"C^{piece.n}"


@dataclass(frozen=True)
class ModelEvaluation:
    qh: QuotientAlgebra
    sh: QuotientAlgebra


@lru_cache(maxsize=128)
def _bundle_rings(b: BundleModel) -> ModelEvaluation:
    qh = bundle_qh(b)
    split = localize_at_c1(qh)
    if b.is_calabi_yau:
        if not split.localized.is_zero_ring():
            raise DomainError(
                f"localization of the Calabi-Yau piece {b.describe()} is not the zero ring",
                code="calabi_yau_localization",
            )
        return ModelEvaluation(qh, zero_ring())
    return ModelEvaluation(qh, split.localized)


def piece_rings(piece: Leaf) -> ModelEvaluation:
    if isinstance(piece, BundleModel):
        return _bundle_rings(piece)
    return ModelEvaluation(ground_field(f"C^{piece.n}"), zero_ring())


def _connect(first: ModelEvaluation, second: ModelEvaluation) -> ModelEvaluation:
    return ModelEvaluation(
        sum_rings(first.qh, second.qh, "unital_connected"),
        sum_rings(first.sh, second.sh, "orthogonal_direct"),
    )


@lru_cache(maxsize=64)
def eval_model(model: ModelExpr, path: str = "$") -> ModelEvaluation:
    """QH and SH of a model tree; whole-tree results are cached."""
    try:
        if isinstance(model, Bundle):
            return _bundle_rings(model.model)
        if isinstance(model, Cn):
            return piece_rings(model)
        if isinstance(model, Blowup):
            result = eval_model(model.child, f"{path}.child")
            piece = _bundle_rings(model.piece)
            for _ in range(model.count):
                result = _connect(result, piece)
            return result
        if isinstance(model, Flip):
            return _connect(eval_model(model.child, f"{path}.child"), _bundle_rings(model.piece))
        if isinstance(model, ConnSum):
            return _connect(
                eval_model(model.left, f"{path}.left"),
                eval_model(model.right, f"{path}.right"),
            )
    except ToolkitError as exc:
        exc.with_path(path)
        raise
    raise TypeError(f"not a model expression: {model!r}")


def torus_bound(model: ModelExpr) -> int:
    """Upper bound on pairwise disjoint non-displaceable Lagrangian tori: dim of even SH."""
    return graded_dims(eval_model(model).sh).even_dim


def piece_range(piece: Leaf) -> VanishingRange:
    if isinstance(piece, BundleModel):
        return vanishing_range(piece)
    return sphere_vanishing_range(piece.n)


@dataclass(frozen=True)
class LefschetzVerdict:
    level: int
    ranges: tuple[tuple[str, VanishingRange], ...]
    vanishing_certified: bool
    c1_power: str
    c1_power_classical: bool
    sh_semisimple: bool
    localization_matches: bool
    fitting: FittingSplit

    @property
    def condition_i(self) -> bool:
        return self.vanishing_certified and self.c1_power_classical

    @property
    def condition_ii(self) -> bool:
        return self.sh_semisimple and self.localization_matches

    @property
    def overall(self) -> str:
        return "certified" if self.condition_i and self.condition_ii else "not certified"


def _classical_power(qh: QuotientAlgebra, j: int) -> tuple[MPoly, bool]:
    power = qh.reduce(qh.presentation.c1**j)
    classical = all(
        c.is_constant() and sum(e * d for e, d in zip(m, qh.degrees)) == 2 * j
        for m, c in power.terms.items()
    )
    return power, classical


def lefschetz_check(model: ModelExpr, j: int) -> LefschetzVerdict:
    """Certify the Lefschetz-domain conditions at level j."""
    rings = eval_model(model)
    ranges = tuple((path, piece_range(piece)) for path, piece in iter_pieces(model))
    vanishing = all(r.contains(j) for _, r in ranges)
    power, classical = _classical_power(rings.qh, j)
    semisimple, _ = is_semisimple(rings.sh)
    split = localize_at_c1(rings.qh)
    matches = split.localized.dim == rings.sh.dim and element_char_poly(
        split.localized, split.localized.presentation.c1
    ) == element_char_poly(rings.sh, rings.sh.presentation.c1)
    verdict = LefschetzVerdict(
        level=j,
        ranges=ranges,
        vanishing_certified=vanishing,
        c1_power=power.to_str(),
        c1_power_classical=classical,
        sh_semisimple=semisimple,
        localization_matches=matches,
        fitting=split,
    )
    logger.info("Lefschetz level %d: %s", j, verdict.overall)
    return verdict


def certified_levels(model: ModelExpr) -> list[int]:
    """Union of the certified vanishing ranges of the pieces."""
    levels: set[int] = set()
    for _, piece in iter_pieces(model):
        levels.update(piece_range(piece).levels())
    return sorted(levels)


def contains_blowup(model: ModelExpr) -> bool:
    if isinstance(model, Blowup):
        return True
    if isinstance(model, Flip):
        return contains_blowup(model.child)
    if isinstance(model, ConnSum):
        return contains_blowup(model.left) or contains_blowup(model.right)
    return False
