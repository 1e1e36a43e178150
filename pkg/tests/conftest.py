import json

import numpy as np
import pytest

from app import create_app


@pytest.fixture
def app(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return create_app('testing')


@pytest.fixture
def runner(app):
    return app.test_cli_runner()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def write_coords(tmp_path):
    """Write a coordinate document and return its path"""

    def write(kind, entries, name='coords.json', **extra):
        data = {
            'kind': kind,
            'model': 'H',
            'entries': [{'edge': list(edge), 'value': value} for edge, value in entries],
            **extra,
        }
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding='utf-8')
        return str(path)

    return write
