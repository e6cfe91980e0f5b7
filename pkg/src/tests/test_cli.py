"""Tests for the rrkit command line: exit codes, output files and JSON.

Run with: uv run pytest src/tests/test_cli.py -v
"""

import json

import pytest

from src.bounds.bsscbsc import SUM_RATE_CAP
from src.cli import EXIT_ERROR, EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main
from src.formats import write_text


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for name in ("RRKIT_THREADS", "RRKIT_LOG_LEVEL", "RRKIT_CONFIG"):
        monkeypatch.delenv(name, raising=False)


def run(tmp_path, capsys, *argv):
    """Run rrkit in tmp_path; returns (exit code, parsed stdout JSON or None)."""
    code = main(["--log-level", "ERROR", "--out-dir", str(tmp_path), *argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


class TestRegion:
    def test_capacity_csv(self, tmp_path, capsys):
        code, doc = run(tmp_path, capsys, "region", "--p", "0.25", "--bound", "capacity", "--out", "cap.csv")
        assert code == EXIT_PASS
        assert doc["regime"] == "NoSumRate"
        lines = (tmp_path / "cap.csv").read_text().splitlines()
        assert lines[0] == "R0,R1"
        assert lines[1] == "0,0.311278124459"
        r0, r1 = map(float, lines[-1].split(","))
        assert r0 == pytest.approx(0.188721875541, abs=1e-11)
        assert r1 == pytest.approx(0.0, abs=1e-12)
        assert doc["r1_max"] == pytest.approx(SUM_RATE_CAP, abs=1e-12)

    def test_output_is_deterministic(self, tmp_path, capsys):
        run(tmp_path, capsys, "region", "--p", "0.3", "--bound", "region-a", "--out", "a.csv")
        run(tmp_path, capsys, "region", "--p", "0.3", "--bound", "region-a", "--out", "b.csv")
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_default_output_name(self, tmp_path, capsys):
        code, doc = run(tmp_path, capsys, "region", "--p", "0.1", "--bound", "capacity")
        assert code == EXIT_PASS
        assert (tmp_path / "region.csv").exists()
        assert doc["regime"] == "SumRateOnly"

    @pytest.mark.parametrize(
        "p, bound, extra, label",
        [
            ("0.3", "region-a", [], "NoSumRate"),
            ("0.2", "inner", ["--grid", "5", "--aux-card", "1"], "ThreeConstraint"),
            ("0.1", "bound3", ["--grid", "5", "--aux-card", "1"], "SumRateOnly"),
        ],
    )
    def test_regime_for_every_bound(self, tmp_path, capsys, p, bound, extra, label):
        code, doc = run(tmp_path, capsys, "region", "--p", p, "--bound", bound, *extra)
        assert code == EXIT_PASS
        assert doc["regime"] == label

    def test_generic_bound_from_json(self, tmp_path, capsys):
        triple = {"y1": [[0.5, 0.5], [0.0, 1.0]], "y2": [[1.0, 0.0], [0.5, 0.5]], "y3": [[1.0, 0.0], [0.0, 1.0]]}
        path = write_text(tmp_path / "triple.json", json.dumps(triple))
        code, doc = run(tmp_path, capsys, "region", "--channel", str(path), "--bound", "det-y3", "--grid", "101")
        assert code == EXIT_PASS
        assert doc["r0_max"] == pytest.approx(SUM_RATE_CAP, abs=1e-12)
        assert "regime" not in doc

    def test_missing_p_is_usage_error(self, tmp_path, capsys):
        code, doc = run(tmp_path, capsys, "region", "--bound", "capacity")
        assert code == EXIT_USAGE
        assert doc is None

    def test_closed_form_needs_bsscbsc(self, tmp_path, capsys):
        code, _ = run(tmp_path, capsys, "region", "--channel", "x.json", "--bound", "capacity")
        assert code == EXIT_USAGE

    def test_p_out_of_range(self, tmp_path, capsys):
        with pytest.raises(SystemExit) as exc:
            run(tmp_path, capsys, "region", "--p", "0.7", "--bound", "capacity")
        assert exc.value.code == 2

    def test_missing_channel_file(self, tmp_path, capsys):
        code, doc = run(
            tmp_path, capsys, "region", "--channel", str(tmp_path / "nope.json"), "--bound", "inner", "--out", "r.csv"
        )
        assert code == EXIT_ERROR
        assert doc is None
        assert not (tmp_path / "r.csv").exists()


class TestVerify:
    """Verdict JSON and exit status of the verification commands."""

    def test_pmax(self, tmp_path, capsys):
        code, doc = run(tmp_path, capsys, "verify", "pmax")
        assert code == EXIT_PASS
        assert doc["pass"] is True
        assert doc["p_max"] == pytest.approx(0.184, abs=1e-3)

    def test_po(self, tmp_path, capsys):
        code, doc = run(tmp_path, capsys, "verify", "po")
        assert code == EXIT_PASS
        assert doc["slope"] == pytest.approx(-1.0, abs=1e-4)

    def test_claim1_fails_for_small_p(self, tmp_path, capsys):
        code, doc = run(tmp_path, capsys, "verify", "claim1", "--p", "0.03")
        assert code == EXIT_FAIL
        assert doc["pass"] is False

    def test_lemma1(self, tmp_path, capsys):
        code, doc = run(tmp_path, capsys, "verify", "lemma1", "--trials", "200")
        assert code == EXIT_PASS
        assert len(doc["runs"]) == 3

    def test_symmetry_random(self, tmp_path, capsys):
        code, doc = run(tmp_path, capsys, "verify", "symmetry", "--random", "--n", "5", "--seed", "7")
        assert code == EXIT_PASS
        assert doc["invariants"] is True
        assert doc["relabel_error"] <= 1e-12

    def test_symmetry_codebook_file(self, tmp_path, capsys):
        path = write_text(tmp_path / "cb.json", json.dumps({"n": 2, "codewords": {"0,0": "00"}}))
        code, doc = run(tmp_path, capsys, "verify", "symmetry", "--codebook", str(path))
        assert code == EXIT_PASS
        assert doc["same_receiver_gap"] > 0.01

    def test_appendix_writes_table(self, tmp_path, capsys):
        code, doc = run(tmp_path, capsys, "verify", "appendix")
        assert code == EXIT_PASS
        lines = (tmp_path / "fig3.csv").read_text().splitlines()
        assert lines[0] == "x,R,S"
        assert len(lines) == 2002

    def test_bad_config(self, tmp_path, capsys):
        path = write_text(tmp_path / "c.yaml", "grids:\n  bogus: 1\n")
        code = main(["--config", str(path), "verify", "pmax"])
        assert code == EXIT_USAGE


class TestFigure:
    def test_fig2_gap(self, tmp_path, capsys):
        code, doc = run(tmp_path, capsys, "figure", "fig2", "--p", "0.25")
        assert code == EXIT_PASS
        assert doc["gap"] > 1e-3
        lines = (tmp_path / "fig2.csv").read_text().splitlines()
        assert lines[0] == "R0,inner,region_a"
        assert len(lines) == 502

    def test_fig2_no_gap_below_p_max(self, tmp_path, capsys):
        _, doc = run(tmp_path, capsys, "figure", "fig2", "--p", "0.1", "--out", "low.csv")
        assert doc["gap"] <= 1e-6
        assert doc["regime"] == "SumRateOnly"
