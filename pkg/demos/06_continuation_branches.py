"""Following orbits in the forcing strength.

Each converged orbit reseeds the next solve at a slightly larger eps.
The saddle born at phase 0 is followed to eps = 0.17; the center born
at phase T/2 survives far beyond, here to eps = 2.9, keeping |trace| < 2
the whole way.  The 2/3 orbit (two loops per three map steps) needs the
two-harmonic torque and is followed to eps = 0.5, where its closure
trajectory still winds exactly twice around the origin.
"""

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from subharmonics import (
    SystemSpec,
    continue_in_epsilon,
    ic_on_axis,
    integrate,
    newton_strobo,
    resonance_from_level,
    sine_forcing,
    winding_angle,
)
from subharmonics.dynamics import ForcingSpec, ForcingTerm, make_field_rhs

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)


def closure(record, samples=1200):
    times = record.t0 + np.linspace(0.0, record.m * record.T, samples)
    res = integrate(make_field_rhs(record.system), record.x_eps.as_array(),
                    record.t0, times[-1], dense_points=times)
    return times, res.samples


spec = resonance_from_level(1.6, 3, 1)
forcing = sine_forcing(spec.omega)
seed = ic_on_axis(spec.c)
sys_small = SystemSpec(forcing, 0.01)

saddle0, _ = newton_strobo(seed, 0.0, sys_small, 3, spec.T)
saddle_branch = continue_in_epsilon(saddle0, 0.17)
print(f"saddle branch: {len(saddle_branch)} steps to eps = "
      f"{saddle_branch[-1].epsilon}, final x = {saddle_branch[-1].x_eps}")

elliptic0, _ = newton_strobo(seed, spec.T / 2, sys_small, 3, spec.T)
elliptic_branch = continue_in_epsilon(elliptic0, 2.9)
print(f"elliptic branch: {len(elliptic_branch)} steps to eps = "
      f"{elliptic_branch[-1].epsilon}, final x = {elliptic_branch[-1].x_eps}")

fig, axes = plt.subplots(1, 3, figsize=(15, 4.2))
for branch, label in ((saddle_branch, "saddle (t0 = 0)"),
                      (elliptic_branch, "elliptic (t0 = T/2)")):
    eps = [r.epsilon for r in branch]
    trace = [float(np.trace(r.monodromy)) for r in branch]
    axes[0].plot(eps, trace, ".-", label=label)
axes[0].axhline(2, color="k", lw=0.5, ls=":")
axes[0].axhline(-2, color="k", lw=0.5, ls=":")
axes[0].set_xlabel("eps")
axes[0].set_ylabel("trace of the monodromy")
axes[0].set_xscale("log")
axes[0].legend()

_, tr = closure(elliptic_branch[-1])
axes[1].plot(tr[:, 0], tr[:, 1], lw=0.8)
pts = elliptic_branch[-1]
axes[1].plot([pts.x_eps.u], [pts.x_eps.v], "ro")
axes[1].set_title(f"elliptic orbit at eps = {pts.epsilon}")
axes[1].set_xlabel("u")
axes[1].set_ylabel("v")

# the 2/3 orbit under the two-harmonic torque
spec23 = resonance_from_level(1.7, 3, 2)
forcing23 = ForcingSpec(spec23.omega, (ForcingTerm(1.0, 1, "sine"),
                                       ForcingTerm(4.0, 2, "cosine")))
start23, _ = newton_strobo(ic_on_axis(spec23.c), spec23.T_c / 12,
                           SystemSpec(forcing23, 0.01), 3, spec23.T)
branch23 = continue_in_epsilon(start23, 0.5)
final = branch23[-1]
loops = -winding_angle(final.x_eps, final.t0, final.system, 3 * spec23.T) / (2 * math.pi)
print(f"2/3 branch: {len(branch23)} steps to eps = {final.epsilon}, "
      f"closure loops = {loops:.9f}")

_, tr = closure(final)
axes[2].plot(tr[:, 0], tr[:, 1], lw=0.8)
axes[2].plot([final.x_eps.u], [final.x_eps.v], "ro")
axes[2].set_title(f"2/3 orbit at eps = {final.epsilon}: {round(loops)} loops per 3T")
axes[2].set_xlabel("u")
axes[2].set_ylabel("v")

fig.tight_layout()
fig.savefig(OUT / "continuation_branches.png", dpi=150)
print(f"wrote {OUT / 'continuation_branches.png'}")
