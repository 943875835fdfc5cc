"""
Unit tests for state, partition and spectrum parsing and JSON encoding.
"""

import json

import numpy as np
import pytest

from qinfo.core.errors import InvalidChannel, InvalidPartition, InvalidState, StateParseError
from qinfo.io import (
    density_from_json,
    density_to_json,
    format_partition,
    load_channel,
    load_density,
    parse_floats,
    parse_partition,
    parse_spectrum,
    parse_state_spec,
    save_channel,
    save_density,
)
from qinfo.state.factory import bell
from qinfo.timechannel.channels import depolarizing_channel


class TestStateSpecs:
    """Test parse_state_spec."""

    @pytest.mark.parametrize("spec,dims", [
        ("bell", (2, 2)),
        ("ghz3", (2, 2, 2)),
        ("W3", (2, 2, 2)),
        ("ghz:4", (2, 2, 2, 2)),
        ("w:3", (2, 2, 2)),
        ("mixed:3", (3,)),
        ("bloch:0,0,1", (2,)),
        ("pure:1.2,0.3", (2,)),
        ("diag:0.2,0.3,0.5", (3,)),
    ])
    def test_named(self, spec, dims):
        assert parse_state_spec(spec).dims == dims

    @pytest.mark.parametrize("spec", ["cat", "bell:2", "mixed", "mixed:2.5", "diag:0.5,,0.5", "file:"])
    def test_parse_errors(self, spec):
        with pytest.raises(StateParseError):
            parse_state_spec(spec)

    def test_invalid_parameters_are_invalid_state(self):
        with pytest.raises(InvalidState):
            parse_state_spec("diag:0.5,0.6")

    def test_missing_file(self, tmp_path):
        with pytest.raises(StateParseError):
            parse_state_spec(f"file:{tmp_path / 'missing.json'}")

    def test_file_round_trip(self, tmp_path, w_state):
        path = tmp_path / "w.json"
        save_density(w_state, path)
        loaded = parse_state_spec(f"file:{path}")
        assert loaded.dims == (2, 2, 2)
        assert np.allclose(loaded.mat, w_state.mat)


class TestDensityJson:
    """Test density operator JSON decoding."""

    def test_round_trip(self, bell_state):
        assert np.allclose(density_from_json(density_to_json(bell_state)).mat, bell_state.mat)

    def test_missing_keys(self):
        with pytest.raises(StateParseError):
            density_from_json({"matrix": []})

    def test_bad_shape(self):
        with pytest.raises(StateParseError):
            density_from_json({"dims": [2], "matrix": [[1, 0], [0, 0]]})

    def test_fractional_dims(self):
        data = {"dims": [2.7, 2], "matrix": density_to_json(bell())["matrix"]}
        with pytest.raises(StateParseError, match="dims"):
            density_from_json(data)

    def test_size_mismatch(self):
        data = {"dims": [3], "matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]}
        with pytest.raises(StateParseError):
            density_from_json(data)

    def test_not_positive(self):
        data = {"dims": [2], "matrix": [[[1.1, 0], [0, 0]], [[0, 0], [-0.1, 0]]]}
        with pytest.raises(InvalidState):
            density_from_json(data)

    def test_invalid_json_file(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(StateParseError):
            load_density(path)

    def test_channel_round_trip(self, tmp_path):
        path = tmp_path / "channel.json"
        save_channel(depolarizing_channel(2, 0.5), path)
        assert len(load_channel(path).ops) == 4

    def test_incomplete_channel(self, tmp_path):
        path = tmp_path / "channel.json"
        path.write_text(json.dumps({"kraus": [[[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]]}))
        with pytest.raises(InvalidChannel):
            load_channel(path)


class TestPartitionsAndSpectra:
    """Test parse_partition and parse_spectrum."""

    def test_singletons(self):
        labels = parse_partition("0|1|2", 3)
        assert [l.indices for l in labels] == [(0,), (1,), (2,)]

    def test_grouped(self):
        assert [l.indices for l in parse_partition("01|2", 3)] == [(0, 1), (2,)]
        assert [l.indices for l in parse_partition("0,2|1", 3)] == [(0, 2), (1,)]

    def test_format(self):
        assert format_partition(parse_partition("0,2|1", 3)) == "0,2|1"

    @pytest.mark.parametrize("spec", ["0||1", "a|b", "00|1"])
    def test_parse_errors(self, spec):
        with pytest.raises(StateParseError):
            parse_partition(spec, 2)

    def test_overlap(self):
        with pytest.raises(InvalidPartition):
            parse_partition("01|1", 2)

    def test_incomplete(self):
        with pytest.raises(InvalidPartition):
            parse_partition("0|1", 3)

    def test_spectrum(self):
        spec = parse_spectrum("0.2, 0.8")
        assert np.allclose(spec.eigenvalues, [0.8, 0.2])

    def test_spectrum_errors(self):
        with pytest.raises(StateParseError):
            parse_spectrum("0.5;0.5")
        with pytest.raises(InvalidState):
            parse_spectrum("0.5,0.6")

    def test_floats(self):
        assert parse_floats("1, 2.5") == [1.0, 2.5]
