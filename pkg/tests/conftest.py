import sys
from pathlib import Path

import pytest

# Add the project root to Python path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.builders import build_example  # noqa: E402
from src.exactfield import FieldDescriptor, get_field  # noqa: E402


@pytest.fixture
def Q():
    return get_field(FieldDescriptor.rationals())


@pytest.fixture
def F2():
    return get_field(FieldDescriptor.prime(2))


@pytest.fixture
def F7():
    return get_field(FieldDescriptor.prime(7))


@pytest.fixture
def Q3():
    return get_field(FieldDescriptor.cyclotomic(3))


@pytest.fixture(scope="session")
def h4():
    return build_example("sweedler")


@pytest.fixture(scope="session")
def taft3():
    return build_example("taft3")


@pytest.fixture(scope="session")
def f2z2():
    return build_example("kz2_f2")


@pytest.fixture(scope="session")
def qz3():
    return build_example("kz3_q")
