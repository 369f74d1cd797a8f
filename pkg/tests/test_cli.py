import subprocess
import sys

import numpy as np
import pytest

import tbmap as tb
from tbmap.cli import CSV_FIELDS, main, parse_snr_grid


def run_cli(*argv):
    return main(list(argv))


def read_csv(path):
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    rows = [dict(zip(header, ln.split(","))) for ln in lines[1:]]
    return header, rows


class TestSnrGrid:
    def test_inclusive_both_ends(self):
        g = parse_snr_grid("0:5:0.5")
        assert len(g) == 11 and g[0] == 0.0 and g[-1] == 5.0

    def test_single_point(self):
        assert parse_snr_grid("5:5:1") == [5.0]

    def test_float_end_within_tolerance(self):
        g = parse_snr_grid("0:0.3:0.1")
        assert g == [0.0, 0.1, 0.2, 0.3]

    def test_rejects_bad_grids(self):
        for bad in ("5:4:1", "0:1:0", "1:2", "a:b:c"):
            with pytest.raises(ValueError):
                parse_snr_grid(bad)


class TestBerCommand:
    def test_writes_csv_schema(self, tmp_path):
        out = tmp_path / "ber.csv"
        rc = run_cli(
            "ber", "--code", "golay", "--decoder", "maa", "--snr", "1:2:1",
            "--frames", "5", "--seed", "3", "--out", str(out),
        )
        assert rc == 0
        header, rows = read_csv(out)
        assert header == list(CSV_FIELDS)
        assert len(rows) == 2
        assert rows[0]["decoder"] == "maa" and rows[0]["code"] == "golay"
        assert rows[0]["frames"] == "5"
        assert rows[0]["wrap"] == "" and rows[0]["mu"] == ""
        float(rows[0]["ber"])  # parses

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["ber", "--code", "golay", "--decoder", "ah", "--wrap", "10",
                "--snr", "2:2:1", "--frames", "8", "--seed", "7"]
        run_cli(*args, "--out", str(a))
        run_cli(*args, "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_ah_updates_in_csv(self, tmp_path):
        out = tmp_path / "ah.csv"
        run_cli(
            "ber", "--code", "conv", "--decoder", "ah", "--wrap", "40",
            "--snr", "0:1:1", "--frames", "2", "--out", str(out),
        )
        _, rows = read_csv(out)
        assert all(r["avg_updates"] == "22528.0" for r in rows)
        assert all(r["wrap"] == "40" for r in rows)

    def test_usage_error_mu_with_ah(self, tmp_path):
        with pytest.raises(SystemExit) as e:
            run_cli(
                "ber", "--code", "golay", "--decoder", "ah", "--mu", "4",
                "--snr", "1:1:1", "--frames", "2", "--out", str(tmp_path / "x.csv"),
            )
        assert e.value.code == 2

    def test_usage_error_mu_maa_without_mu(self, tmp_path):
        with pytest.raises(SystemExit) as e:
            run_cli(
                "ber", "--code", "golay", "--decoder", "mu-maa",
                "--snr", "1:1:1", "--frames", "2", "--out", str(tmp_path / "x.csv"),
            )
        assert e.value.code == 2

    def test_usage_error_bad_grid(self, tmp_path):
        with pytest.raises(SystemExit) as e:
            run_cli(
                "ber", "--code", "golay", "--decoder", "maa", "--snr", "3:1:1",
                "--frames", "2", "--out", str(tmp_path / "x.csv"),
            )
        assert e.value.code == 2

    def test_mu_maa_runs(self, tmp_path):
        out = tmp_path / "mu.csv"
        rc = run_cli(
            "ber", "--code", "golay", "--decoder", "mu-maa", "--mu", "4",
            "--snr", "2:2:1", "--frames", "5", "--out", str(out),
        )
        assert rc == 0
        _, rows = read_csv(out)
        assert rows[0]["mu"] == "4"


class TestStatsCommand:
    def test_side_by_side(self, tmp_path):
        out = tmp_path / "stats.csv"
        rc = run_cli(
            "stats", "--code", "golay", "--snr", "1:2:1", "--frames", "3",
            "--wrap", "10", "--out", str(out),
        )
        assert rc == 0
        _, rows = read_csv(out)
        assert [r["decoder"] for r in rows] == ["maa", "maa", "ah", "ah"]
        ah_rows = [r for r in rows if r["decoder"] == "ah"]
        assert all(r["avg_updates"] == "1408.0" for r in ah_rows)
        maa_rows = [r for r in rows if r["decoder"] == "maa"]
        assert all(r["avg_subtrellises"] != "" for r in maa_rows)

    def test_optional_mu_rows(self, tmp_path):
        out = tmp_path / "stats.csv"
        run_cli(
            "stats", "--code", "golay", "--snr", "2:2:1", "--frames", "2",
            "--mu", "4", "--out", str(out),
        )
        _, rows = read_csv(out)
        assert {r["decoder"] for r in rows} == {"maa", "ah", "mu-maa"}


class TestTrellisInfo:
    def test_conv_report(self, capsys):
        assert run_cli("trellis-info", "--code", "conv") == 0
        out = capsys.readouterr().out
        assert "3072 total" in out
        assert "subtrellises: 64" in out
        assert "2493 states, 4860 edges" in out
        assert "128 per section" in out

    def test_golay_report(self, capsys):
        assert run_cli("trellis-info", "--code", "golay") == 0
        out = capsys.readouterr().out
        assert "per boundary: 16" in out
        assert "subtrellises: 16" in out
        assert "32 per section" in out

    def test_spec_file_and_dump(self, tmp_path, capsys):
        spec = tmp_path / "toy.txt"
        spec.write_text("tbt n=3 bps=1\nrow 7 span 0 3\n")
        dump = tmp_path / "edges.txt"
        assert run_cli(
            "trellis-info", "--spec", str(spec), "--dump", str(dump)
        ) == 0
        out = capsys.readouterr().out
        assert "sections: 3" in out
        lines = dump.read_text().strip().splitlines()
        # 1 state at boundary 0 (row starts there), 2 at boundaries 1, 2
        assert len(lines) == 2 + 2 + 2
        assert lines[0].split()[0] == "0"

    def test_unknown_code_rejected(self):
        with pytest.raises(SystemExit) as e:
            run_cli("trellis-info", "--code", "hamming")
        assert e.value.code == 2

    def test_missing_file_is_usage_error(self):
        with pytest.raises(SystemExit) as e:
            run_cli("trellis-info", "--spec", "/nonexistent/path.txt")
        assert e.value.code == 2


class TestDecodeCommand:
    def test_zero_noise_golay_with_trace(self, tmp_path, capsys):
        code = tb.make_code("golay")
        info = tb.FrameRng(31, 0).bits(12)
        cw = code.encode(info)
        r = 1.0 - 2.0 * cw.astype(float)
        f = tmp_path / "rx.txt"
        f.write_text(" ".join(f"{v:.1f}" for v in r))
        rc = run_cli(
            "decode", "--code", "golay", "--decoder", "maa", "--input", str(f),
            "--ebn0", "6.0", "--trace",
        )
        assert rc == 0
        out = capsys.readouterr().out
        assert "decisions: " + "".join(map(str, cw)) in out
        assert "forward winners:" in out
        opened = [ln for ln in out.splitlines() if ln.startswith("opened:")]
        assert len(opened) == 1 and opened[0].count("fwd->") == 1

    def test_uniform_input_all_half(self, tmp_path, capsys):
        f = tmp_path / "rx.txt"
        f.write_text(" ".join(["0.0"] * 24))
        rc = run_cli(
            "decode", "--code", "golay", "--decoder", "exact", "--input", str(f),
            "--ebn0", "2.0",
        )
        assert rc == 0
        out = capsys.readouterr().out
        for line in out.splitlines():
            parts = line.split()
            if parts and parts[0].isdigit():
                assert parts[1] == "0.5" and parts[2] == "0.5"

    def test_malformed_input_rejected(self, tmp_path):
        f = tmp_path / "rx.txt"
        f.write_text("0.1 0.2 banana")
        with pytest.raises(SystemExit) as e:
            run_cli(
                "decode", "--code", "golay", "--decoder", "maa",
                "--input", str(f), "--ebn0", "2.0",
            )
        assert e.value.code == 2

    def test_wrong_length_rejected(self, tmp_path):
        f = tmp_path / "rx.txt"
        f.write_text(" ".join(["0.0"] * 10))
        with pytest.raises(SystemExit) as e:
            run_cli(
                "decode", "--code", "golay", "--decoder", "maa",
                "--input", str(f), "--ebn0", "2.0",
            )
        assert e.value.code == 2

    def test_trace_consistency_conv(self, tmp_path, capsys):
        # winner-sequence length matches the phase-2 section advances
        code = tb.make_code("conv")
        params = tb.ChannelParams(0.0, 0.5)
        rng = tb.FrameRng(33, 0)
        cw = code.encode(rng.bits(48))
        r = tb.awgn_transmit(cw, params, rng)
        f = tmp_path / "rx.txt"
        f.write_text(" ".join(f"{float(v)!r}" for v in r))
        rc = run_cli(
            "decode", "--code", "conv", "--decoder", "maa", "--input", str(f),
            "--ebn0", "0.0", "--trace",
        )
        assert rc == 0
        out = capsys.readouterr().out
        wt = tb.awgn_edge_weights(code.trellis, r, params)
        app = tb.maa_decode(wt)
        fwd_line = [ln for ln in out.splitlines() if ln.startswith("forward winners:")][0]
        assert len(fwd_line.split()) - 2 == len(app.trace.winners_fwd)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tbmap", "trellis-info", "--code", "golay"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "subtrellises: 16" in proc.stdout
