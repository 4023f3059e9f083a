import pytest
from io import BytesIO
import numpy as np
from src.rulerlab.cli import run
from src.rulerlab.ruler_core import ruler_block


@pytest.fixture
def block4():
    """Order-4 block, the 15 terms printed in most listings."""
    return ruler_block(4)


@pytest.fixture
def rng():
    """Seeded generator so property checks see the same inputs every run."""
    return np.random.default_rng(20240601)


@pytest.fixture
def cli():
    """Run the command line in-process; returns (exit status, stdout bytes)."""
    def _run(*argv):
        out = BytesIO()
        status = run(list(argv), stdout=out)
        return status, out.getvalue()
    return _run


@pytest.fixture
def no_env_cap(monkeypatch):
    monkeypatch.delenv("RULERLAB_MAX_N", raising=False)
