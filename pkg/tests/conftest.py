import json
from pathlib import Path

import pytest

from famsched.instance import Instance, load_instance

DATA = Path(__file__).parent / "data"

# Worked-example fixture: 2 classes, 4 + 3 jobs, optimal cost 11.75.
EX1_COST = 11.75
EX1_ORDER_1BASED = [2, 2, 1, 1, 1, 2, 1]
EX1_U = ((4.0, 0.5, 3.0, 0.0), (0.0, 0.0, 0.0))
EX1_S = ((12.0, 16.5, 24.0, 36.0), (0.0, 6.0, 29.0))
EX1_PT = ((4.0, 7.5, 5.0, 8.0), (6.0, 6.0, 6.0))
EX1_T = ((0.0, 0.0, 0.0, 3.5), (0.0, 0.0, 0.0))
EX1_OM = ((1.0, 0.0, 0.0, 1.0), (0.0, 0.0, 0.5))
EX1_LA = ((0.5, 0.0, 0.0, 0.5), (0.0, 0.0, 1.0))
EX1_HORIZON = 56.0


@pytest.fixture(scope="session")
def ex1_text() -> str:
    return (DATA / "ex1.json").read_text()


@pytest.fixture(scope="session")
def ex1(ex1_text) -> Instance:
    return load_instance(ex1_text)


@pytest.fixture(scope="session")
def ex1_dict(ex1_text) -> dict:
    return json.loads(ex1_text)
