import random
from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import settings

from twodescent.base import BASES, bundled_base
from twodescent.textio import load_text

DATA = Path(__file__).resolve().parent.parent / "src" / "twodescent" / "data"
FIXTURES = Path(__file__).resolve().parent / "fixtures"

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

# criterion lines collected by test_acceptance and printed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])


def data_files():
    return sorted(DATA.glob("*.2d"))


@lru_cache(maxsize=None)
def workspace(name):
    """Parsed bundled document, shared between tests (read only)."""
    return load_text((DATA / f"{name}.2d").read_text(encoding="utf-8"))


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(params=sorted(BASES))
def base_name(request):
    return request.param


@pytest.fixture
def base(base_name):
    return bundled_base(base_name)
