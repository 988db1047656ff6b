import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from qcdb import _kernels  # noqa: E402

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIXTURE_DIR = os.path.join(REPO_ROOT, "fixtures")


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURE_DIR


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # pay JIT compilation before any timed assertions
    _kernels.warmup()


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
