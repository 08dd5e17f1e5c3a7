from pathlib import Path

import pytest

from lutetab import compile_source

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def newsidler_text() -> str:
    return (FIXTURES / "newsidler.tab").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def schlick_text() -> str:
    return (FIXTURES / "schlick.tab").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def fragment_text() -> str:
    return (FIXTURES / "fig_newsidler_fragment.xml").read_text(encoding="utf-8")


# The compiled models are treated as read-only by every test; anything that
# wants to mutate one compiles its own copy.
@pytest.fixture(scope="session")
def newsidler_score(newsidler_text):
    return compile_source(newsidler_text)


@pytest.fixture(scope="session")
def schlick_score(schlick_text):
    return compile_source(schlick_text)
