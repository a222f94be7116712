from pathlib import Path

import pytest

from pospace_lab.core.pospace import FinPospace, absolute, anchored, interval
from pospace_lab.evaluation.suites import SuiteConfig

MODELS = Path(__file__).resolve().parents[1] / "models"


@pytest.fixture
def models_dir() -> Path:
    return MODELS


@pytest.fixture
def ends() -> FinPospace:
    return FinPospace.build(["0", "1"], dir=[("0", "1")], label="{0,1}")


@pytest.fixture
def vee():
    """a, b below c in both relations."""
    return absolute(FinPospace.build(["a", "b", "c"], [("a", "c"), ("b", "c")], [("a", "c"), ("b", "c")], "vee"))


@pytest.fixture
def sierpinski():
    return absolute(FinPospace.build(["p", "q"], top=[("p", "q")], label="S"))


@pytest.fixture
def free_fence():
    return absolute(interval("free", 1).space)


@pytest.fixture
def directed_under_ends(ends):
    fence = interval("directed", 1)
    return anchored(ends, fence.space, {"0": fence.start, "1": fence.end})


@pytest.fixture
def tiny_suite() -> SuiteConfig:
    return SuiteConfig(seed=7, family_size=4, kmax=1, max_points=2, sample_maps=2, pool_max_points=8, path_max_points=2)
