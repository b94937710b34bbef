"""PSNR benchmark grid over noise densities, via the CLI entry point.

Equivalent shell usage:

    contourdenoise benchmark clean.pgm --densities 0.1,0.3,0.5 \
        --methods median,amf,contour --seed 7 --out rows.json
"""

import json
from pathlib import Path

from contourdenoise import save_image_file
from contourdenoise.cli import main
from contourdenoise.synthetic import blocks

out_dir = Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

fixture = out_dir / "bench_clean.pgm"
save_image_file(blocks(128, seed=9), fixture)
rows_path = out_dir / "bench_rows.json"

code = main([
    "benchmark", str(fixture),
    "--densities", "0.1,0.3,0.5",
    "--methods", "median,amf,contour",
    "--seed", "7",
    "--out", str(rows_path),
])
assert code == 0

rows = json.loads(rows_path.read_text())
print(f"\n{len(rows)} rows written to {rows_path}")
print("per-cell seeds:", [r["seed"] for r in rows])
