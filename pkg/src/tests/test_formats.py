"""Unit tests for CSV/JSON output and input file loading.

Run with: uv run pytest src/tests/test_formats.py -v
"""

import json

import numpy as np
import pytest

from src.dmc import bssc_triple
from src.exceptions import CodebookError, ToolkitError
from src.formats import (
    format_number,
    load_channel,
    load_codebook,
    read_json,
    region_to_csv,
    table_to_csv,
    to_json,
    write_text,
)
from src.region import triangle


class TestNumbers:
    @pytest.mark.parametrize(
        "value, text",
        [
            (0.0, "0"),
            (-0.0, "0"),
            (1.0, "1"),
            (1 / 3, "0.333333333333"),
            (np.float64(0.25), "0.25"),
        ],
    )
    def test_format_number(self, value, text):
        assert format_number(value) == text


class TestCsv:
    def test_table(self):
        assert table_to_csv(("a", "b"), [(1, 0.5), (2, -0.0)]) == "a,b\n1,0.5\n2,0\n"

    def test_region(self):
        assert region_to_csv(triangle(0.5)) == "R0,R1\n0,0.5\n0.5,0\n"


class TestJson:
    def test_numpy_values_and_key_order(self):
        text = to_json({"b": np.float64(0.5), "a": np.int64(2), "c": np.array([1, 2]), "d": np.bool_(True)})
        assert text.endswith("}\n")
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text) == {"a": 2, "b": 0.5, "c": [1, 2], "d": True}

    def test_unserializable(self):
        with pytest.raises(TypeError):
            to_json({"x": object()})

    def test_invalid_json_file(self, tmp_path):
        path = write_text(tmp_path / "bad.json", "{not json")
        with pytest.raises(ToolkitError):
            read_json(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            read_json(tmp_path / "missing.json")


class TestLoaders:
    def test_write_creates_directories(self, tmp_path):
        path = write_text(tmp_path / "a" / "b" / "out.csv", "x\n1\n")
        assert path.read_bytes() == b"x\n1\n"

    def test_load_channel(self, tmp_path):
        path = write_text(tmp_path / "triple.json", json.dumps(bssc_triple(0.2).to_dict()))
        triple = load_channel(path)
        assert np.allclose(triple.y3.matrix, [[0.8, 0.2], [0.2, 0.8]])

    def test_load_codebook(self, tmp_path):
        doc = {"n": 2, "codewords": {"0,0": "00", "0,1": "11"}}
        cb = load_codebook(write_text(tmp_path / "cb.json", json.dumps(doc)))
        assert cb.codewords == {(0, 0): "00", (0, 1): "11"}

    def test_load_bad_codebook(self, tmp_path):
        path = write_text(tmp_path / "cb.json", json.dumps({"n": 2, "codewords": {"0,0": "0"}}))
        with pytest.raises(CodebookError):
            load_codebook(path)
