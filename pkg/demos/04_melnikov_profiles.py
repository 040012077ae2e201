"""Persistence profiles M(t0) for three torque spectra.

For the 1/3 resonance with a single-harmonic torque the profile is a
pure sine of the forcing frequency: two simple zeros per period, one
seeding a saddle and one a center.  For the 2/3 resonance the same
torque gives an identically zero profile (first order undecided, and
map scans show no surviving chain); adding a second harmonic restores
simple zeros.  Cranking the second harmonic's weight high enough bends
extra zeros into the 1/3 profile, each one an extra orbit.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from subharmonics import ic_on_axis, melnikov_profile, resonance_from_level, sine_forcing
from subharmonics.dynamics import ForcingSpec, ForcingTerm

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)


def two_harmonic(omega, weight):
    return ForcingSpec(omega, (ForcingTerm(1.0, 1, "sine"),
                               ForcingTerm(weight, 2, "cosine")))


fig, axes = plt.subplots(2, 2, figsize=(11, 8))

spec31 = resonance_from_level(1.6, 3, 1)
x16 = ic_on_axis(spec31.c)
for ax, forcing, label in (
    (axes[0, 0], sine_forcing(spec31.omega), "sin(w t)"),
    (axes[0, 1], two_harmonic(spec31.omega, 1e7), "sin(w t) + 1e7 cos(2 w t)"),
):
    profile = melnikov_profile(x16, spec31, forcing, sample_count=160)
    ax.plot(profile.samples[:, 0], profile.samples[:, 1], lw=0.9)
    for z, _ in profile.zeros:
        ax.axvline(z, color="r", lw=0.4, ls=":")
    ax.axhline(0, color="k", lw=0.4)
    ax.set_title(f"1/3 resonance, g = {label}: {len(profile.zeros)} zeros")

spec23 = resonance_from_level(1.7, 3, 2)
x17 = ic_on_axis(spec23.c)
degenerate = melnikov_profile(x17, spec23, sine_forcing(spec23.omega), sample_count=64)
axes[1, 0].plot(degenerate.samples[:, 0], degenerate.samples[:, 1])
axes[1, 0].set_title(f"2/3 resonance, g = sin(w t): identically zero = "
                     f"{degenerate.degenerate}")

restored = melnikov_profile(x17, spec23, two_harmonic(spec23.omega, 4.0),
                            sample_count=160)
axes[1, 1].plot(restored.samples[:, 0], restored.samples[:, 1], lw=0.9)
for z, _ in restored.zeros:
    axes[1, 1].axvline(z, color="r", lw=0.4, ls=":")
axes[1, 1].axhline(0, color="k", lw=0.4)
axes[1, 1].set_title("2/3 resonance, g = sin + 4 cos(2 w t)")
print(f"2/3 two-harmonic first zero: {restored.zeros[0][0]:.6f} "
      f"(T_c/12 = {spec23.T_c / 12:.6f})")

for ax in axes.ravel():
    ax.set_xlabel("t0")
    ax.set_ylabel("M")
fig.tight_layout()
fig.savefig(OUT / "melnikov_profiles.png", dpi=150)
print(f"wrote {OUT / 'melnikov_profiles.png'}")
