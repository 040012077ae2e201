"""Phase portraits of the pendulum, free and weakly forced.

The free pendulum fills the region inside the separatrix with closed
orbits around the elliptic point at the origin; the separatrix itself
joins the saddles at (+-pi, 0).  Switching on a weak periodic torque
destroys most closed curves; what survives near a resonance is the
island structure explored in the other demos.
"""

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from subharmonics import PlanarState, SystemSpec, free_pendulum, integrate, sine_forcing
from subharmonics.dynamics import make_field_rhs

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)


def trajectory(sys, seed, duration=40.0, samples=2000):
    times = np.linspace(0.0, duration, samples)
    res = integrate(make_field_rhs(sys), seed, 0.0, duration, dense_points=times)
    return res.samples


fig, axes = plt.subplots(1, 2, figsize=(12, 5), sharex=True, sharey=True)

sys0 = free_pendulum()
for v0 in (0.4, 0.8, 1.2, 1.6, 1.9, 1.99):
    tr = trajectory(sys0, [0.0, v0])
    axes[0].plot(tr[:, 0], tr[:, 1], lw=0.7)
# a rotational orbit outside the separatrix for contrast
tr = trajectory(sys0, [0.0, 2.1])
axes[0].plot(np.mod(tr[:, 0] + math.pi, 2 * math.pi) - math.pi, tr[:, 1], ",", ms=1)
axes[0].set_title("free pendulum")

sys_forced = SystemSpec(sine_forcing(2.0), 0.2)
for v0 in (0.4, 0.8, 1.2, 1.6, 1.9):
    tr = trajectory(sys_forced, [0.0, v0], duration=120.0, samples=6000)
    axes[1].plot(np.mod(tr[:, 0] + math.pi, 2 * math.pi) - math.pi, tr[:, 1], ",", ms=1)
axes[1].set_title("forced, eps = 0.2")

for ax in axes:
    ax.set_xlabel("u")
    ax.axhline(0, color="k", lw=0.3)
axes[0].set_ylabel("v")
fig.tight_layout()
fig.savefig(OUT / "phase_portrait.png", dpi=150)
print(f"wrote {OUT / 'phase_portrait.png'}")
