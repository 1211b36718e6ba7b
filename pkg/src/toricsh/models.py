"""Pydantic models for analysis reports.

Field declaration order is the key order of the emitted JSON.
"""

from typing import List, Optional

from pydantic import BaseModel, Field


class GradedDim(BaseModel):
    residue: int = Field(..., ge=0, description="Degree modulo 2*chern_modulus (plain degree if 0)")
    dim: int = Field(..., ge=0)


class AlgebraReport(BaseModel):
    """One finite-dimensional algebra in canonical string form."""

    text: str = Field(..., description="Human-readable presentation, e.g. K[x]/(x^2 + 3*q^2)")
    dim: int = Field(..., ge=0)
    variables: List[str]
    relations: List[str] = Field(..., description="Reduced Groebner basis, canonical order")
    semisimple: bool
    trace_det: str = Field(..., description="Gram determinant of the trace form")
    graded_dims: List[GradedDim]
    even_dim: int = Field(..., ge=0)
    chern_modulus: int = Field(..., ge=0)
    nilpotent_dim: Optional[int] = Field(
        None, ge=0, description="Dimension of the generalized 0-eigenspace of c1 (QH only)"
    )
    stabilization_exponent: Optional[int] = Field(None, ge=1)
    summands: List[str] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)


class LocalizationCheck(BaseModel):
    """SH of a monotone bundle piece recomputed as a localization at another element."""

    piece: str
    element: str
    dim: int = Field(..., ge=0)
    matches: bool


class RangeReport(BaseModel):
    path: str
    piece: str
    lo: int
    hi: int
    reason: str


class LevelVerdict(BaseModel):
    level: int = Field(..., ge=1)
    vanishing_certified: bool
    c1_power: str
    c1_power_classical: bool
    sh_semisimple: bool
    localization_matches: bool
    condition_i: bool
    condition_ii: bool
    overall: str


class LefschetzReport(BaseModel):
    levels_checked: List[int]
    verdicts: List[LevelVerdict]
    vanishing_ranges: List[RangeReport]
    bundle_windows: List[RangeReport] = Field(
        default_factory=list,
        description="Level windows ceil(n/2)..ceil(mn/(m+1)) of the bundle pieces",
    )


class BoundsReport(BaseModel):
    torus_bound: int = Field(..., ge=0)
    blowup_bound_note: Optional[str] = None


class CensusEntry(BaseModel):
    path: str
    piece: str
    tori: int = Field(..., ge=0)
    local_systems_per_torus: int = Field(..., ge=0)
    m0_min_poly: str
    m0_distinct: bool
    total_branes: int = Field(..., ge=0)


class MirrorPiece(BaseModel):
    piece: str
    superpotential: str
    monotonicity_constant: str
    critical_point: str
    constraint: str
    critical_value: str
    critical_count: int = Field(..., ge=1)
    jacobi_dim: int = Field(..., ge=0)


class MirrorReport(BaseModel):
    pieces: List[MirrorPiece]
    census: List[CensusEntry]
    total_branes: int = Field(..., ge=0)
    matches_torus_bound: bool


class HmsEntry(BaseModel):
    piece: str
    dims_match: bool
    semisimple: bool
    critical_values_annihilated: bool
    charpolys_match: bool
    ok: bool


class Report(BaseModel):
    """Full analysis of one model expression."""

    input_text: str
    normalized_expr: str
    dimension: int = Field(..., ge=1)
    sections: List[str]
    qh: Optional[AlgebraReport] = None
    sh: Optional[AlgebraReport] = None
    sh_localizations: List[LocalizationCheck] = Field(default_factory=list)
    lefschetz: Optional[LefschetzReport] = None
    bounds: Optional[BoundsReport] = None
    mirror: Optional[MirrorReport] = None
    hms: List[HmsEntry] = Field(default_factory=list)
    discrepancy_notes: List[str] = Field(default_factory=list)
