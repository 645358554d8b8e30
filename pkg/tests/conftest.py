"""
Shared pytest fixtures
"""

import os
from pathlib import Path

import pytest

from nbpractice.core.config import CONFIG_ENV_VAR, Settings

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch):
    """Keep developer config out of the tests"""
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
    for name in list(os.environ):
        if name.startswith("NBPRACTICE_"):
            monkeypatch.delenv(name, raising=False)


@pytest.fixture
def settings() -> Settings:
    return Settings()


@pytest.fixture
def make_settings():
    def factory(**overrides) -> Settings:
        return Settings(**overrides)
    return factory


@pytest.fixture
def corpus_dir() -> Path:
    return FIXTURES / "corpus"


@pytest.fixture
def broken_dir() -> Path:
    return FIXTURES / "broken"
