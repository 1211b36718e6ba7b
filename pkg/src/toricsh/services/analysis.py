"""Analysis orchestration: model tree in, report out."""

import logging
from dataclasses import dataclass
from typing import Literal, Optional, Sequence

from toricsh.algebra import (
    FittingSplit,
    QuotientAlgebra,
    element_char_poly,
    graded_dims,
    is_semisimple,
    localize_at,
    localize_at_c1,
    presentation_text,
)
from toricsh.config import KNOWN_SECTIONS
from toricsh.dsl import blowup_total, format_model
from toricsh.exceptions import DomainError
from toricsh.geometry.bundles import BundleModel, bundle_qh
from toricsh.geometry.cones import lefschetz_window
from toricsh.geometry.surgery import (
    ModelEvaluation,
    ModelExpr,
    certified_levels,
    contains_blowup,
    eval_model,
    iter_pieces,
    lefschetz_check,
    piece_label,
    piece_range,
    piece_rings,
    torus_bound,
)
from toricsh.mirror import (
    CRITICAL_VALUE_NOTE,
    CriticalFamily,
    brane_census,
    hms_check,
    mirror_bundle,
    monotonicity_constant,
)
from toricsh.models import (
    AlgebraReport,
    BoundsReport,
    CensusEntry,
    GradedDim,
    HmsEntry,
    LefschetzReport,
    LevelVerdict,
    LocalizationCheck,
    MirrorPiece,
    MirrorReport,
    RangeReport,
    Report,
)
from toricsh.polyalg.polys import MPoly

logger = logging.getLogger(__name__)

OutputFormat = Literal["text", "json"]

BLOWUP_EXPONENT_NOTE = (
    "blow-up pieces use SH = K[x]/(x^(n-1) + n*q^(n-1)) from the general O(-1) -> P^(n-1) "
    "formula; the printed form x^n + n*q^n disagrees with it and with the bound r <= m(n-1)"
)


@dataclass(frozen=True)
class AnalysisOptions:
    sections: tuple[str, ...] = KNOWN_SECTIONS
    levels: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        unknown = sorted(set(self.sections) - set(KNOWN_SECTIONS))
        if unknown:
            raise ValueError(f"unknown section(s): {', '.join(unknown)}")
        # canonical order, duplicates dropped
        object.__setattr__(
            self, "sections", tuple(s for s in KNOWN_SECTIONS if s in self.sections)
        )


def algebra_report(A: QuotientAlgebra, split: Optional[FittingSplit] = None) -> AlgebraReport:
    semisimple, witness = is_semisimple(A)
    grading = graded_dims(A)
    return AlgebraReport(
        text=presentation_text(A),
        dim=A.dim,
        variables=list(A.variables),
        relations=[] if A.is_zero_ring() else A.relation_strings(),
        semisimple=semisimple,
        trace_det=str(witness),
        graded_dims=[GradedDim(residue=r, dim=d) for r, d in grading.by_residue.items()],
        even_dim=grading.even_dim,
        chern_modulus=A.chern_modulus,
        nilpotent_dim=split.nilpotent_dim if split else None,
        stabilization_exponent=split.stabilization_exponent if split else None,
        summands=[presentation_text(s) for s in A.summands],
        warnings=list(A.warnings),
    )


def bundle_pieces(model: ModelExpr) -> list[BundleModel]:
    """Distinct bundle leaves in order of first appearance."""
    seen: list[BundleModel] = []
    for _, piece in iter_pieces(model):
        if isinstance(piece, BundleModel) and piece not in seen:
            seen.append(piece)
    return seen


def _localization_checks(model: ModelExpr) -> list[LocalizationCheck]:
    """SH of each monotone bundle piece as the localization at x^{n1}."""
    checks = []
    for b in bundle_pieces(model):
        if not b.is_monotone:
            continue
        qh = bundle_qh(b)
        sh = piece_rings(b).sh
        element = MPoly.var("x", qh.variables) ** b.n1
        localized = localize_at(qh, element).localized
        matches = localized.dim == sh.dim and element_char_poly(
            localized, localized.presentation.c1
        ) == element_char_poly(sh, sh.presentation.c1)
        checks.append(
            LocalizationCheck(
                piece=b.describe(), element=element.to_str(), dim=localized.dim, matches=matches
            )
        )
    return checks


def _resolve_levels(model: ModelExpr, levels: Optional[Sequence[int]]) -> list[int]:
    if levels is None:
        return certified_levels(model)
    n = model.dimension
    for j in levels:
        if not 1 <= j <= n:
            raise DomainError(
                f"level {j} outside 1..{n} for a model of dimension {n}", code="invalid_level"
            )
    return sorted(set(levels))


def _lefschetz_report(model: ModelExpr, levels: Optional[Sequence[int]]) -> LefschetzReport:
    checked = _resolve_levels(model, levels)
    verdicts = []
    for j in checked:
        v = lefschetz_check(model, j)
        verdicts.append(
            LevelVerdict(
                level=j,
                vanishing_certified=v.vanishing_certified,
                c1_power=v.c1_power,
                c1_power_classical=v.c1_power_classical,
                sh_semisimple=v.sh_semisimple,
                localization_matches=v.localization_matches,
                condition_i=v.condition_i,
                condition_ii=v.condition_ii,
                overall=v.overall,
            )
        )
    ranges = []
    for path, piece in iter_pieces(model):
        r = piece_range(piece)
        ranges.append(
            RangeReport(path=path, piece=piece_label(piece), lo=r.lo, hi=r.hi, reason=r.reason)
        )
    windows = []
    for b in bundle_pieces(model):
        w = lefschetz_window(b)
        windows.append(RangeReport(path="", piece=b.describe(), lo=w.lo, hi=w.hi, reason=w.reason))
    return LefschetzReport(
        levels_checked=checked, verdicts=verdicts, vanishing_ranges=ranges, bundle_windows=windows
    )


def _bounds_report(model: ModelExpr) -> BoundsReport:
    note = None
    if contains_blowup(model):
        m, n = blowup_total(model), model.dimension
        note = f"r <= m(n-1) = {m * (n - 1)} for m={m} blown-up points in dimension n={n}"
    return BoundsReport(torus_bound=torus_bound(model), blowup_bound_note=note)


def _critical_point_text(cf: CriticalFamily) -> str:
    coords = []
    for p in cf.pattern:
        if p == 1:
            coords.append("x")
        elif p == -1:
            coords.append("-x")
        else:
            coords.append(f"{p}*x")
    return f"({', '.join(coords)})"


def _constraint_text(cf: CriticalFamily) -> str:
    lhs = "x" if cf.degree == 1 else f"x^{cf.degree}"
    return f"{lhs} = {cf.constant}"


def _mirror_sections(model: ModelExpr) -> tuple[MirrorReport, list[HmsEntry]]:
    pieces = []
    hms = []
    for b in bundle_pieces(model):
        if not b.is_monotone:
            continue
        W, cf, J = mirror_bundle(b)
        pieces.append(
            MirrorPiece(
                piece=b.describe(),
                superpotential=str(W),
                monotonicity_constant=str(monotonicity_constant(b)),
                critical_point=_critical_point_text(cf),
                constraint=_constraint_text(cf),
                critical_value=cf.critical_value.to_str(),
                critical_count=cf.count,
                jacobi_dim=J.dim,
            )
        )
        verdict = hms_check(J, piece_rings(b).sh, cf)
        hms.append(
            HmsEntry(
                piece=b.describe(),
                dims_match=verdict.dims_match,
                semisimple=verdict.semisimple,
                critical_values_annihilated=verdict.critical_values_annihilated,
                charpolys_match=verdict.charpolys_match,
                ok=verdict.ok,
            )
        )
    census = brane_census(model)
    entries = [
        CensusEntry(
            path=leaf.path,
            piece=leaf.piece,
            tori=leaf.tori,
            local_systems_per_torus=leaf.local_systems_per_torus,
            m0_min_poly=leaf.m0_min_poly,
            m0_distinct=leaf.m0_distinct,
            total_branes=leaf.total_branes,
        )
        for leaf in census.leaves
    ]
    report = MirrorReport(
        pieces=pieces,
        census=entries,
        total_branes=census.total_branes,
        matches_torus_bound=census.matches_torus_bound,
    )
    return report, hms


def analyze(
    expr: ModelExpr,
    options: Optional[AnalysisOptions] = None,
    *,
    input_text: Optional[str] = None,
) -> Report:
    """Populate the requested report sections for one model."""
    options = options or AnalysisOptions()
    normalized = format_model(expr)
    sections = options.sections
    report = Report(
        input_text=input_text if input_text is not None else normalized,
        normalized_expr=normalized,
        dimension=expr.dimension,
        sections=list(sections),
    )
    rings: Optional[ModelEvaluation] = None
    if {"qh", "sh"} & set(sections):
        rings = eval_model(expr)
    if "qh" in sections and rings is not None:
        report.qh = algebra_report(rings.qh, localize_at_c1(rings.qh))
    if "sh" in sections and rings is not None:
        report.sh = algebra_report(rings.sh)
        report.sh_localizations = _localization_checks(expr)
    if "lefschetz" in sections:
        report.lefschetz = _lefschetz_report(expr, options.levels)
    if "bounds" in sections:
        report.bounds = _bounds_report(expr)
    if "mirror" in sections:
        report.mirror, report.hms = _mirror_sections(expr)

    notes = []
    if contains_blowup(expr) and {"sh", "bounds"} & set(sections):
        notes.append(BLOWUP_EXPONENT_NOTE)
    if report.mirror is not None and report.mirror.pieces:
        notes.append(CRITICAL_VALUE_NOTE)
    report.discrepancy_notes = notes
    logger.info("Analysis complete: %s (%s)", normalized, ", ".join(sections) or "no sections")
    return report


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _row(label: str, value: object) -> str:
    return f"  {label:<22}{value}"


def _algebra_lines(name: str, a: AlgebraReport) -> list[str]:
    lines = [f"{name} = {a.text}", _row("dim", a.dim), _row("semisimple", _yes(a.semisimple))]
    lines.append(_row("trace-form det", a.trace_det))
    lines.append(_row("even part dim", a.even_dim))
    if a.nilpotent_dim is not None:
        lines.append(_row("nilpotent part dim", a.nilpotent_dim))
        lines.append(_row("stabilization exp.", a.stabilization_exponent))
    for w in a.warnings:
        lines.append(_row("warning", w))
    return lines


def render_text(report: Report) -> str:
    """Aligned human-readable summary."""
    lines = [
        "toricsh report",
        f"input:      {report.input_text}",
        f"normalized: {report.normalized_expr}",
    ]
    if report.qh is not None:
        lines.append("")
        lines.extend(_algebra_lines("QH*", report.qh))
    if report.sh is not None:
        lines.append("")
        lines.extend(_algebra_lines("SH*", report.sh))
        for check in report.sh_localizations:
            lines.append(
                _row(
                    f"localized at {check.element}",
                    f"{check.piece}: dim {check.dim}, matches {_yes(check.matches)}",
                )
            )
    if report.lefschetz is not None:
        lines.append("")
        lines.append("Lefschetz")
        for r in report.lefschetz.vanishing_ranges:
            span = "empty" if r.lo > r.hi else f"{r.lo}..{r.hi}"
            lines.append(_row(f"range {r.path}", f"{span} ({r.piece}: {r.reason})"))
        for w in report.lefschetz.bundle_windows:
            lines.append(_row("window", f"{w.lo}..{w.hi} ({w.piece})"))
        for v in report.lefschetz.verdicts:
            lines.append(
                _row(
                    f"level {v.level}",
                    f"{v.overall} (c1^{v.level} = {v.c1_power}; "
                    f"i: {_yes(v.condition_i)}, ii: {_yes(v.condition_ii)})",
                )
            )
    if report.bounds is not None:
        lines.append("")
        lines.append(f"Torus bound r <= {report.bounds.torus_bound}")
        if report.bounds.blowup_bound_note:
            lines.append(_row("blow-up bound", report.bounds.blowup_bound_note))
    if report.mirror is not None:
        lines.append("")
        lines.append("Mirror")
        for p in report.mirror.pieces:
            lines.append(_row("piece", p.piece))
            lines.append(_row("W", p.superpotential))
            lines.append(_row("critical point", f"{p.critical_point} with {p.constraint}"))
            lines.append(_row("critical value", p.critical_value))
            lines.append(_row("monotonicity const.", p.monotonicity_constant))
            lines.append(_row("dim Jac(W)", p.jacobi_dim))
        for h in report.hms:
            lines.append(_row(f"Jac(W) = SH* {h.piece}", _yes(h.ok)))
        for c in report.mirror.census:
            lines.append(
                _row(
                    f"branes {c.path}",
                    f"{c.tori} x {c.local_systems_per_torus} ({c.piece}; m0 roots of "
                    f"{c.m0_min_poly}, distinct {_yes(c.m0_distinct)})",
                )
            )
        lines.append(
            _row(
                "total branes",
                f"{report.mirror.total_branes} "
                f"(matches bound: {_yes(report.mirror.matches_torus_bound)})",
            )
        )
    if report.discrepancy_notes:
        lines.append("")
        lines.append("Notes")
        lines.extend(f"  - {note}" for note in report.discrepancy_notes)
    return "\n".join(lines) + "\n"


def emit(report: Report, fmt: OutputFormat = "text") -> bytes:
    """Serialize a report; output is byte-identical for identical reports."""
    if fmt == "json":
        return (report.model_dump_json(indent=2) + "\n").encode("utf-8")
    if fmt == "text":
        return render_text(report).encode("utf-8")
    raise ValueError(f"unknown output format: {fmt!r}")
