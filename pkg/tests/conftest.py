from __future__ import annotations

import os

import pytest

from utils import ROOT_PATH
from surface.windTreeTable import generated_table, load_table, square_table
from cylinders.classifier import WindTreeSurface

TABLES_PATH = os.path.join(ROOT_PATH, 'tables')

def _square_table():
    return square_table('1/2', '1/2')

def _plus_table():
    return generated_table('plus')

@pytest.fixture
def square_half():
    return _square_table()

@pytest.fixture
def plus_table():
    return _plus_table()

@pytest.fixture(scope='module')
def square_surface():
    return WindTreeSurface(_square_table())

@pytest.fixture
def table_path():
    def path(name):
        return os.path.join(TABLES_PATH, name)
    return path

@pytest.fixture
def sample_tables():
    return {name: load_table(os.path.join(TABLES_PATH, name)) for name in sorted(os.listdir(TABLES_PATH))}
