"""Small BER sweep for the Golay code, written to CSV and charted.

Produces demo_out/golay_{maa,4maa,ah}.csv with the harness CSV schema, then
renders demo_out/golay_ber.png with the plot script.  Frame counts are kept
small; raise FRAMES (or use --min-errors via the CLI) for smoother curves.
"""

import pathlib
import subprocess
import sys

from tbmap.cli import main as tbmap_cli

HERE = pathlib.Path(__file__).resolve().parent
ROOT = HERE.parent
OUT = HERE / "demo_out"
OUT.mkdir(exist_ok=True)

FRAMES = 400
runs = [
    ("golay_maa.csv", ["--decoder", "maa"]),
    ("golay_4maa.csv", ["--decoder", "mu-maa", "--mu", "4"]),
    ("golay_ah.csv", ["--decoder", "ah", "--wrap", "10"]),
]
csvs = []
for name, extra in runs:
    path = OUT / name
    rc = tbmap_cli(
        [
            "ber", "--code", "golay", "--snr", "0:4:1",
            "--frames", str(FRAMES), "--min-errors", "60", "--seed", "7",
            "--out", str(path), *extra,
        ]
    )
    if rc != 0:
        sys.exit(rc)
    csvs.append(str(path))

png = OUT / "golay_ber.png"
subprocess.run(
    [sys.executable, str(ROOT / "plots" / "ber.py"), "--in", *csvs, "--out", str(png)],
    check=True,
)
print(f"wrote {png}")
