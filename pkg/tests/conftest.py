# -*- coding: utf-8 -*-
import random
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from algebra import builtin_algebra  # noqa: E402
from linalg import Field, QQ_FIELD  # noqa: E402

PROBLEMS_DIR = ROOT / "problems"


@pytest.fixture
def qq():
    return QQ_FIELD


@pytest.fixture
def f2():
    return Field(2)


@pytest.fixture
def f3():
    return Field(3)


@pytest.fixture
def dual():
    return builtin_algebra("dual_numbers", QQ_FIELD)


@pytest.fixture
def rng():
    return random.Random(42)


@pytest.fixture
def problems_dir():
    return PROBLEMS_DIR
