import pytest

from atac.constructions import projective_plane

import helpers


@pytest.fixture
def fano():
    return projective_plane(2)


@pytest.fixture
def five_point():
    return helpers.five_point_design()


@pytest.fixture
def pencil():
    return helpers.pencil_design()


@pytest.fixture
def triangle():
    return helpers.triangle()
