"""Moment cones of toric contact boundaries.

A cone is given by inward facet normals v_i, C = {x : <v_i, x> >= 0}; a
polytope by facets <v, y> + c >= 0. The cone over a polytope P places P at
height 1, so its cross-section with {x_n = 1} recovers P.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, gcd, lcm
from typing import Optional, Sequence, Union

from toricsh.coeffs import RatFunc
from toricsh.exceptions import DomainError
from toricsh.geometry.bundles import BundleModel
from toricsh.polyalg.linalg import bareiss_det, nullspace, rank, rref, to_matrix

logger = logging.getLogger(__name__)

LatticeVector = tuple[int, ...]


@dataclass(frozen=True)
class PolytopeFacet:
    """Half-space <normal, y> + offset >= 0."""

    normal: LatticeVector
    offset: int


@dataclass(frozen=True)
class MomentCone:
    facet_normals: tuple[LatticeVector, ...]

    def __post_init__(self) -> None:
        if not self.facet_normals:
            raise DomainError("a moment cone needs at least one facet normal", code="degenerate_cone")
        dims = {len(v) for v in self.facet_normals}
        if len(dims) != 1:
            raise DomainError(f"facet normals of mixed length: {sorted(dims)}", code="degenerate_cone")
        if any(all(x == 0 for x in v) for v in self.facet_normals):
            raise DomainError("facet normals must be nonzero", code="degenerate_cone")

    @property
    def dim(self) -> int:
        return len(self.facet_normals[0])

    @classmethod
    def over_polytope(cls, facets: Sequence[PolytopeFacet]) -> "MomentCone":
        return cls(tuple(tuple(f.normal) + (f.offset,) for f in facets))

    def cross_section(self) -> list[PolytopeFacet]:
        """Facets of the polytope cut out at height x_n = 1."""
        return [PolytopeFacet(tuple(v[:-1]), v[-1]) for v in self.facet_normals]


@dataclass(frozen=True)
class FaceRecord:
    rays: tuple[int, ...]
    active_facets: tuple[int, ...]
    codim: int
    face_ok: bool
    rank_ok: bool
    saturated: bool


@dataclass(frozen=True)
class GoodConeVerdict:
    good: bool
    strictly_convex: bool
    face_condition: bool
    rank_condition: bool
    saturated: bool
    rays: tuple[LatticeVector, ...]
    faces: tuple[FaceRecord, ...] = field(default=())
    apex_facet_count: int = 0

    def bad_faces(self) -> list[FaceRecord]:
        return [f for f in self.faces if not (f.face_ok and f.rank_ok)]


@dataclass(frozen=True)
class DelzantVerdict:
    is_delzant: bool
    vertices: tuple[tuple[Fraction, ...], ...]
    failing_vertices: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class VanishingRange:
    """Levels j with H^{2j}(V; Q) = 0 guaranteed for the contact boundary V."""

    lo: int
    hi: int
    reason: str

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    def contains(self, j: int) -> bool:
        return self.lo <= j <= self.hi

    def levels(self) -> list[int]:
        return list(range(self.lo, self.hi + 1))


def _dot(u: Sequence[int], v: Sequence[Union[int, Fraction]]) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def _rank(rows: Sequence[Sequence[int]]) -> int:
    return rank(to_matrix(rows)) if rows else 0


def _primitive(vec: Sequence[Fraction]) -> LatticeVector:
    denom = lcm(*(Fraction(x).denominator for x in vec))
    ints = [int(Fraction(x) * denom) for x in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints) if g else tuple(ints)


def _to_fractions(vec: Sequence[RatFunc]) -> list[Fraction]:
    return [c.constant_value() for c in vec]


def _extreme_rays(normals: Sequence[LatticeVector], dim: int) -> list[LatticeVector]:
    """Extreme rays of {x : <v, x> >= 0 for all v}, assuming the cone is pointed."""
    rays: list[LatticeVector] = []
    for subset in itertools.combinations(normals, dim - 1):
        if _rank(subset) != dim - 1:
            continue
        kernel = nullspace(to_matrix(subset), dim)
        direction = _primitive(_to_fractions(kernel[0]))
        for candidate in (direction, tuple(-x for x in direction)):
            if all(_dot(v, candidate) >= 0 for v in normals) and candidate not in rays:
                rays.append(candidate)
    return rays


def _lattice_saturated(rows: Sequence[LatticeVector], dim: int) -> bool:
    """The rows span a saturated sublattice: the gcd of the maximal minors is 1."""
    k = len(rows)
    if k == 0:
        return True
    g = 0
    for cols in itertools.combinations(range(dim), k):
        minor = bareiss_det(to_matrix([[r[c] for c in cols] for r in rows]))
        g = gcd(g, int(minor.constant_value()))
    return g == 1


def good_cone_check(c: MomentCone) -> GoodConeVerdict:
    """Face/facet count and lattice rank conditions on every face except the apex."""
    n = c.dim
    normals = c.facet_normals
    if _rank(normals) < n:
        logger.debug("Cone with normals %s contains a line", normals)
        return GoodConeVerdict(False, False, False, False, False, ())
    rays = _extreme_rays(normals, n)
    if _rank(rays) < n:
        raise DomainError(
            f"degenerate cone: rays {rays} span a subspace of dimension {_rank(rays)} < {n}",
            code="degenerate_cone",
        )
    on_facet = [
        tuple(r for r, ray in enumerate(rays) if _dot(v, ray) == 0) for v in normals
    ]
    for idx, members in enumerate(on_facet):
        if _rank([rays[r] for r in members]) != n - 1:
            raise DomainError(
                f"normal {normals[idx]} does not define a facet of the cone",
                code="redundant_normal",
            )

    seen: dict[tuple[int, ...], FaceRecord] = {}
    for size in range(1, len(normals) + 1):
        for chosen in itertools.combinations(range(len(normals)), size):
            face_rays = tuple(
                r for r in range(len(rays)) if all(r in on_facet[j] for j in chosen)
            )
            if not face_rays or face_rays in seen:
                continue
            active = tuple(j for j in range(len(normals)) if set(face_rays) <= set(on_facet[j]))
            codim = n - _rank([rays[r] for r in face_rays])
            active_normals = [normals[j] for j in active]
            rank_ok = _rank(active_normals) == len(active)
            seen[face_rays] = FaceRecord(
                face_rays,
                active,
                codim,
                face_ok=len(active) == codim,
                rank_ok=rank_ok,
                saturated=rank_ok and _lattice_saturated(active_normals, n),
            )
    faces = tuple(sorted(seen.values(), key=lambda f: (f.codim, f.rays)))
    face_condition = all(f.face_ok for f in faces)
    rank_condition = all(f.rank_ok for f in faces)
    saturated = all(f.saturated for f in faces)
    verdict = GoodConeVerdict(
        good=face_condition and rank_condition,
        strictly_convex=True,
        face_condition=face_condition,
        rank_condition=rank_condition,
        saturated=saturated,
        rays=tuple(rays),
        faces=faces,
        apex_facet_count=len(normals),
    )
    logger.debug(
        "Good-cone check: %d rays, %d faces, good=%s", len(rays), len(faces), verdict.good
    )
    return verdict


def _solve(rows: Sequence[LatticeVector], rhs: Sequence[int]) -> Optional[list[Fraction]]:
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(to_matrix(augmented))
    if len(pivots) < len(rows[0]) or len(rows[0]) in pivots:
        return None
    return [reduced[i][-1].constant_value() for i in range(len(rows[0]))]


def delzant_check(facets: Sequence[PolytopeFacet]) -> DelzantVerdict:
    """Every vertex is simple and its primitive edge directions form a Z-basis."""
    if not facets:
        raise DomainError("polytope has no facets", code="unbounded_polytope")
    d = len(facets[0].normal)
    normals = [f.normal for f in facets]
    if _rank(normals) < d or _extreme_rays(normals, d):
        raise DomainError("delzant_check needs a bounded polytope", code="unbounded_polytope")

    vertices: dict[tuple[Fraction, ...], tuple[int, ...]] = {}
    for subset in itertools.combinations(range(len(facets)), d):
        rows = [facets[i].normal for i in subset]
        if _rank(rows) != d:
            continue
        point = _solve(rows, [-facets[i].offset for i in subset])
        if point is None:
            continue
        slacks = [_dot(f.normal, point) + f.offset for f in facets]
        if any(s < 0 for s in slacks):
            continue
        key = tuple(point)
        if key not in vertices:
            vertices[key] = tuple(i for i, s in enumerate(slacks) if s == 0)
    if not vertices:
        raise DomainError("polytope is empty", code="empty_polytope")

    failing = []
    for vertex, active in vertices.items():
        if len(active) != d:
            failing.append(vertex)
            continue
        rows = [facets[i].normal for i in active]
        edges = []
        for k in range(d):
            target = [1 if i == k else 0 for i in range(d)]
            direction = _solve(rows, target)
            assert direction is not None
            edges.append(_primitive(direction))
        det = bareiss_det(to_matrix(edges)).constant_value()
        if abs(det) != 1:
            failing.append(vertex)
    ordered = tuple(sorted(vertices))
    return DelzantVerdict(not failing, ordered, tuple(sorted(failing)))


def simplex_facets(
    k: int, offset_dims: int = 0, total_dims: Optional[int] = None, scale: int = 1
) -> list[PolytopeFacet]:
    """Facets of scale times the standard simplex in coordinates offset_dims .. offset_dims+k-1."""
    total = total_dims if total_dims is not None else offset_dims + k
    facets = []
    for i in range(k):
        normal = [0] * total
        normal[offset_dims + i] = 1
        facets.append(PolytopeFacet(tuple(normal), 0))
    if k:
        normal = [0] * total
        for i in range(k):
            normal[offset_dims + i] = -1
        facets.append(PolytopeFacet(tuple(normal), scale))
    return facets


def product_polytope(
    dims: Sequence[int], scales: Optional[Sequence[int]] = None
) -> list[PolytopeFacet]:
    """Facets of a product of dilated standard simplices."""
    total = sum(dims)
    factors = list(scales) if scales is not None else [1] * len(dims)
    if len(factors) != len(dims) or any(s < 1 for s in factors):
        raise ValueError(f"one positive scale per simplex is required: {factors}")
    facets: list[PolytopeFacet] = []
    offset = 0
    for k, s in zip(dims, factors):
        facets.extend(simplex_facets(k, offset, total, s))
        offset += k
    return facets


def boundary_cone(b: BundleModel) -> MomentCone:
    """Moment cone of the unit sphere bundle: the cone over Delta^{n1-1} x m*Delta^{n2}.

    The cross-section is the moment polytope of P^{n1-1} x P^{n2} polarized by O(1, m).
    """
    return MomentCone.over_polytope(product_polytope([b.n1 - 1, b.n2], [1, b.m]))


def sphere_vanishing_range(n: int) -> VanishingRange:
    """Boundary of the ball in C^n is S^{2n-1}."""
    return VanishingRange(1, n - 1, f"boundary S^{2 * n - 1} of C^{n}")


def vanishing_range(target: Union[BundleModel, MomentCone]) -> VanishingRange:
    """Certified levels of vanishing boundary cohomology from the good/Delzant verdicts."""
    if isinstance(target, BundleModel):
        cone = boundary_cone(target)
        n = target.n
    else:
        cone = target
        n = cone.dim
    verdict = good_cone_check(cone)
    if not verdict.good:
        return VanishingRange(1, 0, "moment cone is not good")
    if not delzant_check(cone.cross_section()).is_delzant:
        return VanishingRange(1, 0, "cross-section is not a Delzant polytope")
    if isinstance(target, BundleModel) and target.n1 == 1:
        return VanishingRange(1, n - 1, "line bundle: boundary is a lens space")
    return VanishingRange(ceil(n / 2), n - 1, "good moment cone with Delzant cross-section")


def lefschetz_window(b: BundleModel) -> VanishingRange:
    """Level window ceil(n/2) <= j <= ceil(mn/(m+1)) for the unit ball bundle."""
    lo = ceil(b.n / 2)
    hi = -(-(b.m * b.n) // (b.m + 1))
    return VanishingRange(lo, hi, f"unit ball bundle of {b.describe()}")
