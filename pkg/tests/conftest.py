import json
from pathlib import Path

import pytest

from clusterexp.laurent import LaurentPolynomial
from clusterexp.poset import ShapeSpec
from clusterexp.surface import load_surface

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
EXPECTED = Path(__file__).resolve().parent / "expected"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def surface(name: str):
    return load_surface(FIXTURES / name)


def shape(name: str) -> ShapeSpec:
    return ShapeSpec.from_dict(json.loads((FIXTURES / name).read_text()))


def expected(name: str) -> LaurentPolynomial:
    return LaurentPolynomial.parse((EXPECTED / f"{name}.txt").read_text().strip())


@pytest.fixture
def disk():
    s = surface("punctured_square.json")
    return s, s.arc("gamma")


@pytest.fixture
def folded():
    s = surface("self_folded.json")
    return s, s.arc("gamma")


@pytest.fixture
def band():
    s = surface("annulus_band.json")
    return s, s.arc("band")


@pytest.fixture
def noloop2():
    s = surface("noloop2.json")
    return s, s.arc("gamma")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
