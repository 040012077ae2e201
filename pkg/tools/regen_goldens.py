#!/usr/bin/env python3
"""Regenerate the golden outputs for the reference configurations.

Run from the repository root after an intentional behavior change:

    python3 tools/regen_goldens.py

The regression test diffs fresh runs byte-for-byte against these files,
so regenerate only when the change in output is understood and wanted.
"""

import sys
from pathlib import Path

from subharmonics.cli import main

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"

REFERENCE_RUNS = {
    "period_curve": "period_curve_ref.json",
    "strobo_scan": "strobo_scan_ref.json",
    "melnikov": "melnikov_ref.json",
    "find_po": "find_po_ref.json",
}

COMMAND_OF = {
    "period_curve": "period-curve",
    "strobo_scan": "strobo-scan",
    "melnikov": "melnikov",
    "find_po": "find-po",
}


def regenerate() -> int:
    for name, config in REFERENCE_RUNS.items():
        out = GOLDEN / name
        out.mkdir(parents=True, exist_ok=True)
        for old in out.glob("*.csv"):
            old.unlink()
        code = main([COMMAND_OF[name], "--config", str(ROOT / "configs" / config),
                     "--out", str(out)])
        if code != 0:
            print(f"{name}: FAILED with exit code {code}", file=sys.stderr)
            return code
        print(f"{name}: wrote {sorted(p.name for p in out.glob('*.csv'))}")
    return 0


if __name__ == "__main__":
    sys.exit(regenerate())
