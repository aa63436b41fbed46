import json

import numpy as np
import pytest

from holopw.fourier.fourier import Space, character_series
from holopw.models.models import build_group_model
from holopw.rootdata.rootdata import build_root_system
from holopw.schemas.schemas import FourierSeriesFile


@pytest.fixture
def a1():
    return build_root_system("A1")


@pytest.fixture
def a2():
    return build_root_system("A2")


@pytest.fixture
def t2():
    return build_root_system("T2")


@pytest.fixture
def su2():
    return build_group_model("SU2")


@pytest.fixture
def su3():
    return build_group_model("SU3")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def series_file(tmp_path):
    """An HL2 series file holding chi^C_(1) at t = 1."""
    path = tmp_path / "series.json"
    document = FourierSeriesFile.from_series(character_series("A1", (1,), Space.HL2, 1.0))
    path.write_text(json.dumps(document.model_dump(mode="json")))
    return path
