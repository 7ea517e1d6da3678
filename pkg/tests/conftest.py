import os

import hypothesis
import pytest

hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "fast"))


@pytest.fixture(autouse=True)
def _clean_twodiv_env(monkeypatch):
    for name in ("TWODIV_CONFIG", "TWODIV_WORKERS", "TWODIV_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
