"""End-to-end runs of every CLI subcommand."""

import pytest

from barriercover.cli import main
from barriercover.reporting import parse_csv


def test_identities_writes_report(tmp_path, capsys):
    out = tmp_path / "ident.csv"
    assert main(["identities", "--max-m", "4", "--max-d", "4",
                 "--out", str(out)]) == 0
    table = parse_csv(out)
    assert table.columns == ("identity_id", "instance", "lhs", "rhs", "pass")
    assert all(row[4] == "true" for row in table.rows)
    assert "0 failures" in capsys.readouterr().out


def test_exact_integer_and_fractional(tmp_path, capsys):
    out = tmp_path / "exact.csv"
    assert main(["exact", "--n", "2", "--a", "1", "--out", str(out)]) == 0
    table = parse_csv(out)
    assert table.meta["total"] == "19/48"
    assert main(["exact", "--n", "2", "--a", "0.5"]) == 0
    assert "expected anchor cost" in capsys.readouterr().out


def test_convergence_with_figure(tmp_path):
    out = tmp_path / "conv.csv"
    svg = tmp_path / "conv.svg"
    assert main(["convergence", "--a", "2", "--n-list", "4,8", "--trials", "10",
                 "--seed", "1", "--out", str(out), "--svg", str(svg)]) == 0
    table = parse_csv(out)
    assert [row[0] for row in table.rows] == [4, 8]
    assert svg.exists() and svg.stat().st_size > 0


def test_threshold(tmp_path):
    out = tmp_path / "thr.csv"
    assert main(["threshold", "--a", "2", "--n-list", "10", "--beta-list", "2",
                 "--trials", "5", "--grid", "1024", "--seed", "2",
                 "--out", str(out)]) == 0
    table = parse_csv(out)
    assert table.columns[-1] == "ratio"
    assert 0 < table.rows[0][-1] <= 1.0 + 1e-9


def test_alg1(tmp_path):
    out = tmp_path / "alg1.csv"
    assert main(["alg1", "--a", "2", "--n-list", "200,400", "--trials", "30",
                 "--seed", "3", "--f", "7", "--out", str(out)]) == 0
    table = parse_csv(out)
    assert "fitted_slope" in table.meta
    assert all(row[6] == "True" for row in table.rows)


def test_claim1(tmp_path, capsys):
    out = tmp_path / "c1.csv"
    assert main(["claim1", "--n", "1000", "--a", "2", "--out", str(out)]) == 0
    assert "tail_le_chernoff" in capsys.readouterr().out
    table = parse_csv(out)
    quantities = {row[0] for row in table.rows}
    assert {"exact_tail", "chernoff_value", "union_bound", "claim_bound"} <= quantities


def test_scaling(capsys):
    assert main(["scaling", "--a", "2", "--x", "0.5", "--m", "10",
                 "--trials", "400", "--seed", "4"]) == 0
    assert "passed=True" in capsys.readouterr().out


def test_oracle(tmp_path):
    out = tmp_path / "oracle.csv"
    assert main(["oracle", "--n", "10", "--a", "2", "--f", "7",
                 "--grid", "512", "--seed", "5", "--out", str(out)]) == 0
    table = parse_csv(out)
    assert table.columns == ("i", "initial", "final", "displacement")
    assert len(table.rows) == 10
    assert table.meta["covered"] == "true"


def test_unknown_command_rejected():
    with pytest.raises(SystemExit):
        main(["nonsense"])
