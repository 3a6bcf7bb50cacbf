import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

REPO = Path(__file__).resolve().parents[1]


@pytest.fixture(scope="session")
def canonical_cfg_path():
    return REPO / "configs" / "canonical.cfg"
