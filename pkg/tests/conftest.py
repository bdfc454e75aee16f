from __future__ import annotations

from pathlib import Path

import pytest

from ordeval import default_scale7, load_session, parse_grade

TUTORIAL = Path(__file__).resolve().parent.parent / "sessions" / "tutorial.json"


@pytest.fixture
def scale7():
    return default_scale7()


@pytest.fixture
def g(scale7):
    """Shorthand grade parser on the seven-point scale."""
    return lambda text: parse_grade(scale7, text)


@pytest.fixture
def tutorial_path() -> Path:
    return TUTORIAL


@pytest.fixture
def tutorial_session():
    return load_session(TUTORIAL.read_bytes())
