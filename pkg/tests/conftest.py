"""
Shared fixtures for the kbip test suite.
"""

import pytest

from kbip.config import Config
from kbip.core import color_kp2, color_kpp, make_context


@pytest.fixture(autouse=True)
def restore_config(monkeypatch):
    """Undo class-level Config changes and pin the worker count."""
    saved = Config.get_all_settings()
    monkeypatch.delenv("KBIP_THREADS", raising=False)
    yield
    for key, value in saved.items():
        setattr(Config, key, value)


@pytest.fixture(scope="session")
def ctx3():
    return make_context(3)


@pytest.fixture(scope="session")
def ctx5():
    return make_context(5)


@pytest.fixture(scope="session")
def ctx7():
    return make_context(7)


@pytest.fixture(scope="session")
def kpp5(ctx5):
    return color_kpp(ctx5)


@pytest.fixture(scope="session")
def kp2_5(ctx5):
    return color_kp2(ctx5)


@pytest.fixture(scope="session")
def kp2_7(ctx7):
    return color_kp2(ctx7)
