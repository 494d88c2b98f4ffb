"""Gemeinsame Fixtures der Testsuite."""

from pathlib import Path

import pytest

from config.config_manager import ConfigManager
from modules.analytic import PolySpec

PROJECT_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture
def project_root() -> Path:
    return PROJECT_ROOT


@pytest.fixture
def default_config(tmp_path):
    """Vollständige Standard-Konfiguration (ohne settings.yaml des Projekts)."""
    return ConfigManager(tmp_path, tmp_path / "missing.yaml").get_full_config()


@pytest.fixture
def quartic() -> PolySpec:
    """x^2 (1 - x)^2 auf [0, 1]."""
    return PolySpec.bump(2)


@pytest.fixture
def bump6() -> PolySpec:
    return PolySpec.bump(6)
