import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from fgcoords.coords import ACoords
from fgcoords.fixtures import genus2_chart, genus2_coords, thrice_punctured_sphere, torus_chart

positive = st.fractions(min_value=Fraction(1, 20), max_value=20, max_denominator=20)


def coords_strategy(chart):
    sides = chart.all_sides()
    return st.builds(
        lambda tp, ep: ACoords(chart, dict(zip(chart.triangles, tp)), dict(zip(sides, ep))),
        st.lists(positive, min_size=len(chart.triangles), max_size=len(chart.triangles)),
        st.lists(positive, min_size=len(sides), max_size=len(sides)),
    )


@pytest.fixture
def torus():
    return torus_chart()


@pytest.fixture
def sphere3():
    return thrice_punctured_sphere()


@pytest.fixture
def genus2():
    return genus2_chart()


@pytest.fixture
def genus2_alpha():
    return genus2_coords()


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
