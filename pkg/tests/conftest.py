from pathlib import Path

import pytest
from hypothesis import settings

from behavnet import modelfile
from behavnet.behavior import KernelRep, SignalSpace
from behavnet.network import Network
from behavnet.polyalg import PolyMatrix, S
from behavnet.svar import validate

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

DATA = Path(__file__).resolve().parent.parent / "data"


def circuit_rows():
    # V - VC - s(I1 + I2) = 0,  I1 = s VC,  I2 = s VC   (L = C1 = C2 = 1)
    return [[1, -1, -S, -S]], [[0, -S, 1, 0]], [[0, -S, 0, 1]]


@pytest.fixture
def circuit() -> Network:
    space = SignalSpace.scalars(["V", "VC", "I1", "I2"])
    comps = tuple(KernelRep.from_rows(space, rows) for rows in circuit_rows())
    return Network(space, comps)


@pytest.fixture
def four_component() -> Network:
    return modelfile.load(str(DATA / "four_component.json")).network


@pytest.fixture
def svar3():
    x = PolyMatrix.from_rows([[S, "-1/2", 0], ["-1/3", S, 0], [0, 0, S]])
    q = PolyMatrix.from_rows([[1], [0], [S + 2]])
    return validate(x, q, ["y1", "y2", "y3"], ["u"])


@pytest.fixture
def data_dir() -> Path:
    return DATA


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
