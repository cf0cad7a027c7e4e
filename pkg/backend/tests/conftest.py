"""
Root conftest file for pytest.

Puts backend/ on sys.path so tests import the monomial package, and points
the data directories at a temporary location.
"""
import os
import sys
import tempfile
from pathlib import Path

# Data, logs and the hash-family cache go to a scratch directory during tests
os.environ.setdefault("MONOMIAL_DATA_DIR", tempfile.mkdtemp(prefix="monomial-tests-"))
os.environ.pop("MONOMIAL_SEED", None)

# Add the backend directory to the Python path for imports
backend_dir = str(Path(__file__).parent.parent)
if backend_dir not in sys.path:
    sys.path.insert(0, backend_dir)

import numpy as np  # noqa: E402
import pytest  # noqa: E402


@pytest.fixture
def rng():
    """Seeded generator; every randomized check is reproducible"""
    return np.random.Generator(np.random.Philox(20240601))


@pytest.fixture
def storage(tmp_path):
    from monomial.utils.storage import StorageService
    return StorageService(phf_dir=str(tmp_path / "phf"), reports_dir=str(tmp_path / "reports"))


@pytest.fixture
def write(tmp_path):
    """Write a text file under tmp_path and return its path"""
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write
