import os

import pytest

os.environ.setdefault("HOCHPROJ_ENV", "testing")

from algebra_files import bundled_path, load_algebra, load_split_extension  # noqa: E402
from exactlin import make_field  # noqa: E402
from quiver import Presentation, Quiver  # noqa: E402


@pytest.fixture(scope="session")
def QQ():
    return make_field("Q")


@pytest.fixture(scope="session")
def bundled():
    cache = {}

    def load(name):
        if name not in cache:
            cache[name] = load_algebra(bundled_path(name))
        return cache[name]

    return load


@pytest.fixture(scope="session")
def cycle_pair(bundled):
    """The two-vertex Nakayama algebra inside its doubled split extension."""
    return load_split_extension(bundled_path("cycle2_doubled_split"), bundled("cycle2_nakayama"))


@pytest.fixture(scope="session")
def loop_triangle(bundled):
    return load_split_extension(bundled_path("triangle_loop_split"), bundled("triangle_path"))


@pytest.fixture
def presentation(QQ):
    def make(vertices, arrows, relations=()):
        return Presentation.from_strings(Quiver(vertices, arrows), QQ, list(relations))

    return make
