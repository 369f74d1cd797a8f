"""Tests for the plot scripts; they consume harness CSVs only."""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import ber
import stats
from csvdata import decoder_label, load_rows, series

from tbmap.cli import main as tbmap_main

HEADER = (
    "decoder,code,ebn0_db,frames,info_bits,bit_errors,ber,"
    "avg_updates,avg_subtrellises,wrap,mu,seed"
)


@pytest.fixture(scope="module")
def stats_csv(tmp_path_factory):
    """Real harness output: maa and ah side by side on the conv code."""
    out = tmp_path_factory.mktemp("csv") / "stats.csv"
    rc = tbmap_main(
        [
            "stats", "--code", "conv", "--snr", "0:4:2", "--frames", "30",
            "--wrap", "40", "--seed", "5", "--out", str(out),
        ]
    )
    assert rc == 0
    return out


@pytest.fixture(scope="module")
def ber_csvs(tmp_path_factory):
    d = tmp_path_factory.mktemp("csv")
    outs = []
    for dec, extra in (("maa", []), ("ah", ["--wrap", "10"])):
        out = d / f"{dec}.csv"
        rc = tbmap_main(
            [
                "ber", "--code", "golay", "--decoder", dec, "--snr", "0:2:1",
                "--frames", "60", "--seed", "5", "--out", str(out), *extra,
            ]
        )
        assert rc == 0
        outs.append(out)
    return outs


class TestCsvData:
    def test_series_grouping(self, stats_csv):
        rows = load_rows([stats_csv])
        upd = series(rows, "avg_updates")
        assert set(upd) == {"maa", "ah (wrap=40)"}
        xs, ys = upd["ah (wrap=40)"]
        assert xs == [0.0, 2.0, 4.0]
        assert ys == [22528.0] * 3  # the flat baseline
        mxs, mys = upd["maa"]
        assert mys[0] > mys[1] > mys[2] >= 22008.0  # decreasing toward the floor

    def test_subtrellis_series_skips_ah(self, stats_csv):
        rows = load_rows([stats_csv])
        subs = series(rows, "avg_subtrellises")
        assert set(subs) == {"maa"}

    def test_missing_columns_rejected(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b\n1,2\n")
        with pytest.raises(ValueError):
            load_rows([bad])

    def test_empty_rejected(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text(HEADER + "\n")
        with pytest.raises(ValueError):
            load_rows([empty])

    def test_decoder_labels(self):
        assert decoder_label({"decoder": "ah", "wrap": "40"}) == "ah (wrap=40)"
        assert decoder_label({"decoder": "mu-maa", "mu": "4"}) == "4-maa"
        assert decoder_label({"decoder": "maa", "wrap": "", "mu": ""}) == "maa"


class TestBerPlot:
    def test_multi_csv_chart(self, ber_csvs, tmp_path):
        out = tmp_path / "ber.png"
        rc = ber.main(["--in", *map(str, ber_csvs), "--out", str(out)])
        assert rc == 0
        assert out.exists() and out.stat().st_size > 1000

    def test_single_row_csv(self, tmp_path):
        src = tmp_path / "one.csv"
        src.write_text(
            HEADER + "\nmaa,golay,2.0,60,1440,50,0.0347,1500.0,1.2,,,5\n"
        )
        out = tmp_path / "one.png"
        assert ber.main(["--in", str(src), "--out", str(out)]) == 0
        assert out.exists()

    def test_error_on_bad_input(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b\n1,2\n")
        rc = ber.main(["--in", str(bad), "--out", str(tmp_path / "x.png")])
        assert rc == 1
        assert not (tmp_path / "x.png").exists()


class TestStatsPlot:
    def test_chart_from_harness_csv(self, stats_csv, tmp_path):
        out = tmp_path / "stats.png"
        rc = stats.main(["--in", str(stats_csv), "--out", str(out)])
        assert rc == 0
        assert out.exists() and out.stat().st_size > 1000

    def test_error_on_empty(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text(HEADER + "\n")
        rc = stats.main(["--in", str(empty), "--out", str(tmp_path / "x.png")])
        assert rc == 1

    def test_idempotent_rerun(self, stats_csv, tmp_path):
        out = tmp_path / "stats.png"
        assert stats.main(["--in", str(stats_csv), "--out", str(out)]) == 0
        first = out.stat().st_size
        assert stats.main(["--in", str(stats_csv), "--out", str(out)]) == 0
        assert out.stat().st_size == first
