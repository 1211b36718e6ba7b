"""Shared test fixtures."""

from collections.abc import Generator
from pathlib import Path

import pytest

from toricsh.algebra import QuotientAlgebra
from toricsh.config import reload_config
from toricsh.geometry.bundles import BundleModel, bundle_qh
from toricsh.geometry.surgery import piece_rings

# (m, n1, n2) -> (QH relation, SH relation) in canonical form
BUNDLE_TABLE = {
    (1, 1, 1): ("x^2 + 2*q*x", "x + 2*q"),
    (1, 1, 2): ("x^3 + 3*q^2*x", "x^2 + 3*q^2"),
    (1, 2, 3): ("x^4 - 16*q^2*x^2", "x^2 - 16*q^2"),
    (2, 1, 2): ("x^3 - 36*q*x^2", "x - 36*q"),
    (1, 1, 3): ("x^4 + 4*q^3*x", "x^3 + 4*q^3"),
}

MIRROR_PARAMS = [(1, 1, 1), (1, 1, 2), (1, 2, 3), (2, 1, 2)]

# every (m, n1, n2) with m <= 3, n1 + n2 <= 8 and m*n1 <= n2
MONOTONE_FAMILY = [
    (m, n1, n2)
    for m in range(1, 4)
    for n1 in range(1, 8)
    for n2 in range(1, 9 - n1)
    if m * n1 <= n2
]


@pytest.fixture(autouse=True)
def clean_config(
    monkeypatch: pytest.MonkeyPatch, tmp_path: Path
) -> Generator[None, None, None]:
    """Isolate tests from TORICSH_* variables and a local .env file."""
    for name in (
        "TORICSH_DEFAULT_SECTIONS",
        "TORICSH_DEFAULT_LEVELS",
        "TORICSH_MAX_MODEL_DEPTH",
        "TORICSH_MAX_BLOWUP_COUNT",
        "TORICSH_LOG_LEVEL",
    ):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)
    reload_config()
    yield
    reload_config()


@pytest.fixture
def qh_112() -> QuotientAlgebra:
    return bundle_qh(BundleModel(1, 1, 2))


@pytest.fixture
def sh_112() -> QuotientAlgebra:
    return piece_rings(BundleModel(1, 1, 2)).sh


@pytest.fixture
def qh_123() -> QuotientAlgebra:
    return bundle_qh(BundleModel(1, 2, 3))


@pytest.fixture
def sh_123() -> QuotientAlgebra:
    return piece_rings(BundleModel(1, 2, 3)).sh
