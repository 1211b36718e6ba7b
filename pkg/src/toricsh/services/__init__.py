"""Service-layer modules for report orchestration."""

from toricsh.services.analysis import AnalysisOptions, analyze, emit, render_text

__all__ = ["AnalysisOptions", "analyze", "emit", "render_text"]
