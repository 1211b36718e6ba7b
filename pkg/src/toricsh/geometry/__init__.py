"""Toric constructors, moment cones and the surgery calculus."""

from toricsh.geometry.bundles import (
    BundleModel,
    FanData,
    build_bundle_qh,
    build_fan,
    bundle_qh,
    derive_qh_from_fan,
)
from toricsh.geometry.cones import (
    DelzantVerdict,
    GoodConeVerdict,
    MomentCone,
    PolytopeFacet,
    VanishingRange,
    boundary_cone,
    delzant_check,
    good_cone_check,
    lefschetz_window,
    vanishing_range,
)
from toricsh.geometry.surgery import (
    Blowup,
    Bundle,
    Cn,
    ConnSum,
    Flip,
    LefschetzVerdict,
    ModelEvaluation,
    ModelExpr,
    certified_levels,
    eval_model,
    iter_pieces,
    lefschetz_check,
    torus_bound,
)

__all__ = [
    "Blowup",
    "Bundle",
    "BundleModel",
    "Cn",
    "ConnSum",
    "DelzantVerdict",
    "FanData",
    "Flip",
    "GoodConeVerdict",
    "LefschetzVerdict",
    "ModelEvaluation",
    "ModelExpr",
    "MomentCone",
    "PolytopeFacet",
    "VanishingRange",
    "boundary_cone",
    "build_bundle_qh",
    "build_fan",
    "bundle_qh",
    "certified_levels",
    "delzant_check",
    "derive_qh_from_fan",
    "eval_model",
    "good_cone_check",
    "iter_pieces",
    "lefschetz_check",
    "lefschetz_window",
    "torus_bound",
    "vanishing_range",
]
