import json

import pytest

from widebeam import SystemConfig


@pytest.fixture
def cfg16():
    return SystemConfig(f_c=140e9, B=10e9, N=16, L=32)


@pytest.fixture
def write_config(tmp_path):
    """Write a flat JSON config next to the test and return its path."""

    def _write(name="config.json", **overrides):
        path = tmp_path / name
        path.write_text(json.dumps(overrides), encoding="utf-8")
        return str(path)

    return _write
