"""The librational period, two ways.

Return-time computation on the section {u = 0} against the closed form
4 K(v0/2).  The curve starts at 2*pi for tiny oscillations and has a
vertical asymptote at the separatrix energy c = 1, which is why the
inversion (finding the level for a prescribed period) uses bisection.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from subharmonics import period_of_level, period_oracle

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

v_grid = np.linspace(0.05, 1.995, 120)
periods = np.array([period_of_level(float(v)) for v in v_grid])
oracle = np.array([period_oracle(float(v)) for v in v_grid])
energies = 0.5 * v_grid**2 - 1.0

print(f"largest return-time vs closed-form gap: {np.max(np.abs(periods - oracle)):.2e}")

fig, axes = plt.subplots(1, 2, figsize=(11, 4))
axes[0].plot(v_grid, periods, label="return time")
axes[0].plot(v_grid, oracle, "--", label="4 K(v0/2)")
axes[0].set_xlabel("v0")
axes[1].plot(energies, periods)
axes[1].axvline(1.0, color="r", lw=0.8, ls=":", label="separatrix c = 1")
axes[1].set_xlabel("c")
for ax in axes:
    ax.axhline(2 * np.pi, color="k", lw=0.5, ls=":")
    ax.set_ylabel("T_c")
    ax.legend()
fig.tight_layout()
fig.savefig(OUT / "period_curve.png", dpi=150)
print(f"wrote {OUT / 'period_curve.png'}")
