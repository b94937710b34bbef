"""Contour-orientation estimation with the 24-template stencil bank.

Shows the bank layout, responses on oriented structures, and that median
prefiltering keeps the orientation map usable under heavy impulse noise.
"""

import math
from pathlib import Path

import numpy as np

from contourdenoise import (
    NoiseConfig,
    best_stencil,
    detect_noise,
    encode_stencil_map_pgm,
    inject_noise,
    label_stencils,
    stencil_map,
    template_bank,
)

out_dir = Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

bank = template_bank()
print("template bank: 24 stencils, 3 direction classes x 8 each")
for t in (bank[0], bank[2], bank[9], bank[16]):
    print(f"  {t.direction_class:>10} k={t.index_in_class}  "
          f"angle {math.degrees(t.angle):7.2f} deg  matrix rows {t.matrix.tolist()}")

# a vertical step edge: winners hug the edge with both sampled neighbors on
# their own side, so the response stays zero
edge = np.full((16, 16), 50.0)
edge[:, 8:] = 200.0
label = best_stencil(edge, 7, 8)
print(f"\nvertical edge, pixel left of the boundary: template {label.template_id} "
      f"({bank[label.template_id].direction_class}), response {label.response}")

# winners on a smooth oriented ramp concentrate in the matching class
y, x = np.mgrid[0:32, 0:32].astype(np.float64)
ramp = 150.0 / (1.0 + np.exp(-(y - 15.5) * 1.2)) + 0.1 * x * x
smap = label_stencils(ramp)
near_edge = smap.template_ids[14:18, 2:30]
h_share = (near_edge < 8).mean()
print(f"horizontal ramp edge rows: {h_share:.0%} of winners are horizontal-class")

# orientation maps survive 40% noise thanks to the median prefilter
clean = ramp * 0.8 + 20.0
clean_ids = label_stencils(clean).template_ids
noisy, _ = inject_noise(clean, NoiseConfig(density=0.4, seed=3))
smap_noisy, warnings = stencil_map(noisy, detect_noise(noisy))
with_prefilter = (smap_noisy.template_ids == clean_ids).mean()
without = (label_stencils(noisy).template_ids == clean_ids).mean()
print(f"labels matching the clean map after 40% corruption: "
      f"{with_prefilter:.0%} with prefilter vs {without:.0%} without "
      f"({warnings} prefilter fallbacks)")

(out_dir / "stencil_ids.pgm").write_bytes(encode_stencil_map_pgm(smap_noisy))
print(f"label map (ids x10) written to {out_dir}/stencil_ids.pgm")
