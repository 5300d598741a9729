import pathlib

import pytest

from saga.model import resolve
from saga.parser import parse_text

REPO_ROOT = pathlib.Path(__file__).resolve().parents[1]
SAMPLE_STORY = REPO_ROOT / "stories" / "sealed_fate.saga"
GOLDENS = pathlib.Path(__file__).resolve().parent / "goldens"


@pytest.fixture(scope="session")
def sample_source() -> str:
    return SAMPLE_STORY.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def sample_graph(sample_source):
    result = resolve(parse_text(sample_source))
    assert result.ok, result.diagnostics
    return result.graph


def golden(name: str) -> str:
    return (GOLDENS / name).read_text(encoding="utf-8")
