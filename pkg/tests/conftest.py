from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from buneman_blocks import GroundSet, Split, SplitSystem, enumerate_vertices, load_split_file

DATA = Path(__file__).parent / "data"

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# Split names as written in the literature on this example: the smaller part.
SIGMA8_NAMES = ["13", "12", "123", "1235", "45", "1234", "67", "78", "5"]


@pytest.fixture(scope="session")
def sigma8():
    return load_split_file(DATA / "sigma8.splits")


@pytest.fixture(scope="session")
def g8(sigma8):
    return enumerate_vertices(sigma8)


@pytest.fixture(scope="session")
def sigma_prime():
    return load_split_file(DATA / "sigma_prime.splits")


def idx(system, name):
    """Index of the split named by the digits of one of its parts."""
    target = Split.from_labels(system.ground, list(name))
    return system.index(target)


def names_of(system, indices):
    from buneman_blocks.io import split_name

    return {split_name(system, i)[1:] for i in indices}


@st.composite
def split_systems(draw, n_min=3, n_max=6, m_max=6):
    n = draw(st.integers(n_min, n_max))
    ground = GroundSet(str(i) for i in range(1, n + 1))
    masks = draw(
        st.lists(st.integers(1, ground.full - 1).filter(lambda m: m & 1), min_size=1, max_size=m_max, unique=True)
    )
    return SplitSystem(ground, tuple(Split.from_subset(ground, m) for m in masks))


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "ACCEPTANCE", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
