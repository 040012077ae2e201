"""Dynamics of the time-T map near and off resonance.

At eps = 0 every point of a resonant level (T_c = (m/n) T) is an
m-periodic point of the map, and a cycle winds n loops before closing;
an incommensurate T instead fills the invariant curve densely.  At
eps > 0 the continuum collapses to isolated periodic points: a saddle
and a center, whose island chain twists when the phase t0 changes.
"""

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from subharmonics import (
    PlanarState,
    SystemSpec,
    free_pendulum,
    resonance_from_level,
    scan,
    sine_forcing,
    strobo_iterate,
    winding_angle,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

sys0 = free_pendulum()
x0 = PlanarState(0.0, 1.6)

fig, axes = plt.subplots(2, 2, figsize=(11, 9))

# resonance 1/3: three points, one loop
spec31 = resonance_from_level(1.6, 3, 1)
orbit = strobo_iterate(x0, 0.0, sys0, spec31.T, 3)
axes[0, 0].plot([p.u for p in orbit.points], [p.v for p in orbit.points], "o")
loops = round(-winding_angle(x0, 0.0, sys0, 3 * spec31.T) / (2 * math.pi))
axes[0, 0].set_title(f"T = T_c/3: period 3, {loops} loop")

# resonance 2/5: five points, two loops (iterates skip a point each step)
spec52 = resonance_from_level(1.6, 5, 2)
orbit = strobo_iterate(x0, 0.0, sys0, spec52.T, 5)
axes[0, 1].plot([p.u for p in orbit.points], [p.v for p in orbit.points], "o-")
loops = round(-winding_angle(x0, 0.0, sys0, 5 * spec52.T) / (2 * math.pi))
axes[0, 1].set_title(f"T = 2 T_c/5: period 5, {loops} loops")

# incommensurate: the invariant curve fills up instead of closing
orbit = strobo_iterate(x0, 0.0, sys0, spec31.T_c / math.sqrt(2.0), 500)
axes[1, 0].plot([p.u for p in orbit.points], [p.v for p in orbit.points], ".", ms=2)
axes[1, 0].set_title("T = T_c/sqrt(2): no return")

# eps > 0: island chain around the 3-periodic resonance
sys_eps = SystemSpec(sine_forcing(spec31.omega), 0.2)
offsets = np.linspace(-0.4, 0.4, 13)
seeds = [PlanarState(0.0, 1.6 + float(s)) for s in offsets]
for orbit in scan(seeds, 0.0, sys_eps, spec31.T, 400):
    axes[1, 1].plot([p.u for p in orbit.points], [p.v for p in orbit.points],
                    ",", ms=1)
axes[1, 1].set_title("eps = 0.2, t0 = 0: island chain")

for ax in axes.ravel():
    ax.set_xlabel("u")
    ax.set_ylabel("v")
fig.tight_layout()
fig.savefig(OUT / "stroboscopic_islands.png", dpi=150)
print(f"wrote {OUT / 'stroboscopic_islands.png'}")

# the same scan at t0 = 1 shows the same islands, twisted
fig2, ax = plt.subplots(figsize=(6, 5))
for orbit in scan(seeds, 1.0, sys_eps, spec31.T, 400):
    ax.plot([p.u for p in orbit.points], [p.v for p in orbit.points], ",", ms=1)
ax.set_title("eps = 0.2, t0 = 1: twisted islands")
ax.set_xlabel("u")
ax.set_ylabel("v")
fig2.tight_layout()
fig2.savefig(OUT / "stroboscopic_islands_t0_1.png", dpi=150)
print(f"wrote {OUT / 'stroboscopic_islands_t0_1.png'}")
