import pytest
from hypothesis import settings

from fitdef.families import parse_family_spec

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL_SPECS = (
    "cyclic:1", "cyclic:2", "cyclic:6", "klein4", "dihedral:3", "dihedral:4",
    "quaternion8", "dihedral:6", "alternating:4", "symmetric:4",
)

_cache = {}


def group(spec):
    """Family groups are immutable, so tests share one instance per spec."""
    if spec not in _cache:
        _cache[spec] = parse_family_spec(spec)
    return _cache[spec]


@pytest.fixture
def S3():
    return group("symmetric:3")


@pytest.fixture
def S4():
    return group("symmetric:4")


@pytest.fixture
def Q8():
    return group("quaternion8")


@pytest.fixture
def A5():
    return group("alternating:5")


@pytest.fixture(params=SMALL_SPECS)
def small(request):
    return group(request.param)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
