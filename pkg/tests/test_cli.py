import json

import pytest
from click.testing import CliRunner

from src.cli.commands import cli

from .factories import THREEFOLD_PHI


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


def _write_pair(tmp_path, phi, w_generators=(), psi=None, name="pair.json"):
    n = len(phi)
    data = {
        "n": n,
        "w_generators": list(w_generators),
        "psi": psi or [[0] * n for _ in range(n)],
        "phi": [[str(value) for value in row] for row in phi],
    }
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


class TestSub:
    def test_json(self, runner):
        result = runner.invoke(cli, ["sub", "--dim", "3"])
        assert result.exit_code == 0
        assert len(json.loads(result.stdout)["classes"]) == 4

    def test_text(self, runner):
        result = runner.invoke(cli, ["sub", "--dim", "5", "--format", "text"])
        assert result.exit_code == 0
        assert result.stdout.startswith("Sub(5): 16 classes")


class TestClassify:
    def test_threefold_csv(self, runner):
        result = runner.invoke(cli, ["classify", "--dim", "3", "--format", "csv"])
        assert result.exit_code == 0
        lines = result.stdout.strip().splitlines()
        assert lines[0] == "w_generators,psi_id,count"
        assert lines[-1] == "total,,4"
        assert len(lines) == 6

    def test_single_class(self, runner):
        result = runner.invoke(cli, ["classify", "--dim", "3", "--w", "011"])
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["total"] == 1
        assert report["rows"][0]["w_generators"] == ["110"]

    def test_trivial_class(self, runner):
        result = runner.invoke(cli, ["classify", "--dim", "3", "--w", "0"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["rows"][0]["w_generators"] == []

    def test_writes_to_a_file(self, runner, tmp_path):
        out = tmp_path / "reports" / "n3.json"
        result = runner.invoke(cli, ["classify", "--dim", "3", "--out", str(out)])
        assert result.exit_code == 0
        assert json.loads(out.read_text())["total"] == 4
        assert result.stdout == ""

    @pytest.mark.parametrize("n", ["4", "7"])
    def test_unsupported_dimension(self, runner, n):
        result = runner.invoke(cli, ["classify", "--dim", n])
        assert result.exit_code == 1
        assert "❌" in result.stderr

    def test_bad_generators(self, runner):
        result = runner.invoke(cli, ["classify", "--dim", "3", "--w", "100"])
        assert result.exit_code == 1
        assert "standard generator" in result.stderr

    def test_unknown_option(self, runner):
        result = runner.invoke(cli, ["classify", "--dim", "3", "--bogus"])
        assert result.exit_code == 1

    def test_unknown_command(self, runner):
        assert runner.invoke(cli, ["frobnicate"]).exit_code == 1


class TestCheck:
    def test_threefold_pair(self, runner, tmp_path):
        path = _write_pair(tmp_path, THREEFOLD_PHI)
        result = runner.invoke(cli, ["check", path])
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["torsion_free"] is True
        assert report["input_normalized"] is True
        assert report["oracle_is_manifold"] is True
        assert report["agreement"] is True

    def test_unnormalized_pair(self, runner, tmp_path):
        phi = [["1+t", "0", "0"], ["0", "1", "1"], ["1+t", "1", "1"]]
        result = runner.invoke(cli, ["check", _write_pair(tmp_path, phi)])
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["input_normalized"] is False
        assert report["normalized"]["phi"] == [["1", "0", "0"], ["0", "1", "1"], ["1", "1", "1"]]

    def test_bad_diagonal(self, runner, tmp_path):
        phi = [["t", "0", "0"], ["0", "1", "1"], ["1", "1", "1"]]
        result = runner.invoke(cli, ["check", _write_pair(tmp_path, phi)])
        assert result.exit_code == 2
        assert "diagonal must be 1" in result.stderr

    def test_malformed_token(self, runner, tmp_path):
        phi = [["1", "0", "0"], ["0", "1", "T"], ["1", "1", "1"]]
        result = runner.invoke(cli, ["check", _write_pair(tmp_path, phi)])
        assert result.exit_code == 2
        assert "malformed Klein token" in result.stderr

    def test_dimension_mismatch(self, runner, tmp_path):
        result = runner.invoke(cli, ["check", _write_pair(tmp_path, THREEFOLD_PHI, w_generators=["11000"])])
        assert result.exit_code == 2

    def test_invalid_json(self, runner, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        result = runner.invoke(cli, ["check", str(path)])
        assert result.exit_code == 2
        assert "not valid JSON" in result.stderr

    def test_missing_file(self, runner, tmp_path):
        assert runner.invoke(cli, ["check", str(tmp_path / "absent.json")]).exit_code == 1


class TestCanon:
    def test_threefold_pair_is_canonical(self, runner, tmp_path):
        path = _write_pair(tmp_path, THREEFOLD_PHI, w_generators=["011"])
        result = runner.invoke(cli, ["canon", path])
        assert result.exit_code == 0
        canonical = json.loads(result.stdout)
        assert canonical["w_generators"] == ["110"]
        assert canonical["phi"] == [["1", "0", "0"], ["0", "1", "1"], ["1", "1", "1"]]


class TestBound7:
    def test_text(self, runner):
        result = runner.invoke(cli, ["bound7"])
        assert result.exit_code == 0
        assert result.stdout.splitlines() == [
            f"matrix_count: {2 ** 46 * 443}",
            "group_order: 645120",
            "bound: 48321790784",
            "excess: 64/315",
        ]

    def test_json(self, runner):
        result = runner.invoke(cli, ["bound7", "--format", "json"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["bound"] == 48321790784
