"""
Unit tests for the typer command-line interface.
"""

import json

import pytest
from typer.testing import CliRunner

from qinfo.cli import EXIT_FAILED, EXIT_INVALID_STATE, EXIT_USAGE, app
from qinfo.core.types import SuiteLevel
from qinfo.validation import InvariantCheck, default_registry

H2_08 = 0.7219280948873623


@pytest.fixture
def runner():
    return CliRunner()


def _json(result):
    """First JSON document in the command output; log lines may surround it."""
    text = result.output
    starts = [i for i in (text.find("{"), text.find("[")) if i >= 0]
    assert starts, text
    data, _ = json.JSONDecoder().raw_decode(text[min(starts):])
    return data


@pytest.mark.usefixtures("clean_env")
class TestCompute:
    """Test the compute command."""

    def test_bell_entropies(self, runner):
        result = runner.invoke(app, ["compute", "--state", "bell", "--quantities", "S,Sc"])
        assert result.exit_code == 0, result.output
        data = _json(result)
        assert data["S"] == pytest.approx(0.0, abs=1e-12)
        assert data["Sc"] == pytest.approx(2.0)
        assert data["dims"] == [2, 2]

    def test_maximally_mixed(self, runner):
        result = runner.invoke(app, ["compute", "-s", "mixed:4", "-q", "Sc"])
        assert result.exit_code == 0
        assert _json(result)["Sc"] == pytest.approx(0.0, abs=1e-12)

    def test_ghz_informations(self, runner):
        result = runner.invoke(app, ["compute", "-s", "ghz3", "-q", "I"])
        assert result.exit_code == 0
        data = _json(result)
        assert data["I"]["A:B"] == pytest.approx(1.0)
        assert data["I"]["AB:C"] == pytest.approx(2.0)
        assert data["parts"] == "0|1|2"

    def test_grouped_ledger(self, runner):
        result = runner.invoke(app, ["compute", "-s", "w3", "-q", "ledger", "-p", "0|12"])
        assert result.exit_code == 0
        ledger = _json(result)["ledger"]
        assert ledger["balanced"] is True
        assert ledger["S_c_total"] == pytest.approx(3.0)
        assert "I(A:BC)" in ledger

    def test_unknown_quantity(self, runner):
        result = runner.invoke(app, ["compute", "-s", "bell", "-q", "Q"])
        assert result.exit_code == EXIT_USAGE

    def test_unparseable_state(self, runner):
        result = runner.invoke(app, ["compute", "-s", "bell:2"])
        assert result.exit_code == EXIT_USAGE

    def test_invalid_state(self, runner):
        result = runner.invoke(app, ["compute", "-s", "diag:0.5,0.6"])
        assert result.exit_code == EXIT_INVALID_STATE

    def test_invalid_file_state(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"dims": [2], "matrix": [[[1.1, 0], [0, 0]], [[0, 0], [-0.1, 0]]]}))
        result = runner.invoke(app, ["compute", "-s", f"file:{path}"])
        assert result.exit_code == EXIT_INVALID_STATE

    def test_single_part_information(self, runner):
        result = runner.invoke(app, ["compute", "-s", "bell", "-q", "I", "-p", "01"])
        assert result.exit_code == EXIT_USAGE

    def test_bad_partition(self, runner):
        result = runner.invoke(app, ["compute", "-s", "bell", "-q", "I", "-p", "0|0"])
        assert result.exit_code == EXIT_USAGE


@pytest.mark.usefixtures("clean_env")
class TestTcorr:
    """Test the tcorr command."""

    def test_analytic(self, runner):
        result = runner.invoke(app, ["tcorr", "--spectrum", "0.8,0.2"])
        assert result.exit_code == 0
        data = _json(result)
        assert data["mutual_information"] == pytest.approx(1.0 - H2_08, abs=1e-9)
        assert data["difference"] == pytest.approx(0.0, abs=1e-9)
        assert data["p1"] == pytest.approx([0.5, 0.5])
        assert data["equivalent_intermediates"] is True

    def test_monte_carlo(self, runner, tmp_path):
        csv_path = tmp_path / "counts.csv"
        result = runner.invoke(app, [
            "tcorr", "--spectrum", "0.8,0.2", "--mode", "mc", "--n", "20000",
            "--shards", "2", "--seed", "3", "--counts-csv", str(csv_path),
        ])
        assert result.exit_code == 0, result.output
        mc = _json(result)["monte_carlo"]
        assert mc["n_samples"] == 20000
        assert mc["seed"] == 3
        assert mc["shards"] == 2
        assert csv_path.read_text().startswith("s1,s2,count")

    def test_invalid_spectrum(self, runner):
        result = runner.invoke(app, ["tcorr", "--spectrum", "0.5,0.6"])
        assert result.exit_code == EXIT_USAGE

    def test_unparseable_spectrum(self, runner):
        result = runner.invoke(app, ["tcorr", "--spectrum", "a,b"])
        assert result.exit_code == EXIT_USAGE


@pytest.mark.usefixtures("clean_env")
class TestTableCommand:
    """Test the table command."""

    def test_bell_csv(self, runner):
        result = runner.invoke(app, [
            "table", "bell", "--format", "csv", "--restarts", "2", "--max-iters", "300", "--seed", "1",
        ])
        assert result.exit_code == 0
        assert "bell,rho_A,rho_B,rho_AB" in result.output

    def test_unknown_state(self, runner):
        result = runner.invoke(app, ["table", "cat"])
        assert result.exit_code == EXIT_USAGE


@pytest.mark.usefixtures("clean_env")
class TestValidateCommand:
    """Test the validate command."""

    def test_list(self, runner):
        result = runner.invoke(app, ["validate", "--list"])
        assert result.exit_code == 0
        assert "named_state_fixtures" in _json(result)

    def test_single_check(self, runner):
        result = runner.invoke(app, ["validate", "fast", "--check", "named_state_fixtures"])
        assert result.exit_code == 0
        data = _json(result)
        assert data["passed"] is True
        assert data["n_checks"] == 1

    def test_unknown_check(self, runner):
        result = runner.invoke(app, ["validate", "--check", "no_such_check"])
        assert result.exit_code == EXIT_USAGE

    def test_failing_check(self, runner):
        default_registry.register(InvariantCheck("always_fails", lambda: (False, "no"), SuiteLevel.FAST))
        try:
            result = runner.invoke(app, ["validate", "--check", "always_fails"])
            assert result.exit_code == EXIT_FAILED
        finally:
            default_registry.unregister("always_fails")


@pytest.mark.usefixtures("clean_env")
class TestConfigCommands:
    """Test config create, validate and show."""

    def test_create_then_validate(self, runner, tmp_path):
        path = tmp_path / "cfg.yaml"
        assert runner.invoke(app, ["config", "create", "-o", str(path)]).exit_code == 0
        assert path.exists()
        assert runner.invoke(app, ["config", "validate", str(path)]).exit_code == 0

    def test_validate_reports_issues(self, runner, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"optimizer": {"fd_step": 0.5}}))
        assert runner.invoke(app, ["config", "validate", str(path)]).exit_code == EXIT_USAGE

    def test_validate_rejects_bad_values(self, runner, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"threads": 0}))
        assert runner.invoke(app, ["config", "validate", str(path)]).exit_code == EXIT_USAGE

    def test_show_json(self, runner):
        result = runner.invoke(app, ["config", "show", "--json"])
        assert result.exit_code == 0
        data = _json(result)
        assert data["optimizer"]["restarts"] == 32
        assert data["table_precision"] == 6

    def test_config_file_used_by_commands(self, runner, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"table_precision": 2}))
        result = runner.invoke(app, [
            "table", "bell", "-f", "csv", "-c", str(path), "--restarts", "1", "--max-iters", "200",
        ])
        assert result.exit_code == 0
        assert "S_c,0.00,0.00,2.00" in result.output

    def test_missing_config_file(self, runner, tmp_path):
        result = runner.invoke(app, ["compute", "-s", "bell", "-c", str(tmp_path / "none.json")])
        assert result.exit_code == EXIT_USAGE
