from pathlib import Path

import numpy as np
import pytest

from histspec.io import read_csv, read_pgm

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR


@pytest.fixture(scope="session")
def iris():
    return read_csv(DATA_DIR / "iris.csv")


@pytest.fixture(scope="session")
def wine():
    return read_csv(DATA_DIR / "wine.csv")


@pytest.fixture(scope="session")
def scene():
    return read_pgm(DATA_DIR / "scene.pgm")


@pytest.fixture(scope="session")
def ridges():
    return read_pgm(DATA_DIR / "ridges.pgm")


@pytest.fixture
def rng():
    return np.random.default_rng(20240816)
