"""Command-line front end: experiment orchestration and plot-ready tables.

Subcommands
-----------
phase-portrait   trajectories of a seed grid, columns seed_id,t,u,v,H
period-curve     librational period against the section speed and energy
strobo-scan      iterate clouds of the time-T map near a resonance
melnikov         persistence-integral profile and its simple zeros
find-po          full pipeline: profile -> seeds -> Newton -> continuation

Examples
--------
  subharmonics period-curve --out out
  subharmonics strobo-scan --m 3 --n 1 --v0 1.6 --eps 0.2 --t0 0 --out out
  subharmonics melnikov --m 3 --n 2 --v0 1.7 --forcing "1*sin(1),4*cos(2)" --out out
  subharmonics find-po --config configs/find_po_ref.json --out out

Settings resolve in three layers: built-in defaults, then the JSON file
given with --config, then explicit flags.  Every output file embeds the
fully resolved configuration in its comment header, so a file is enough
to reproduce itself.  Identical configurations produce byte-identical
files: values are printed with a fixed number of significant digits and
all orderings are fixed.

Exit status: 0 when every requested output was produced, 2 for
configuration errors, 3 for numerical failures (partial outputs are
kept).
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from pathlib import Path

import numpy as np

from .dynamics import (
    ForcingSpec,
    ForcingTerm,
    PlanarState,
    SystemSpec,
    free_pendulum,
    hamiltonian,
    make_field_rhs,
)
from .errors import (
    ConfigError,
    IntegrationError,
    NewtonFailure,
    NoSimpleZeros,
    StepTooSmall,
    SubharmonicsError,
)
from .integrator import DEFAULT_CONFIG, integrate
from .melnikov import melnikov_profile, melnikov_seeds
from .solvers import (
    continue_in_epsilon,
    deduplicate_records,
    newton_poincare,
    newton_strobo,
    orbit_cycle,
)
from .strobo import scan
from .unperturbed import (
    ic_on_axis,
    level_for_period,
    period_of_level,
    period_oracle,
    resonance_from_level,
)

TWO_PI = 2.0 * math.pi

_OUTPUT_DEFAULTS = {"directory": ".", "format": "csv", "precision": 15}
_SYSTEM_DEFAULTS = {
    "forcing": [{"amplitude": 1.0, "harmonic": 1, "kind": "sine"}],
    "epsilon": 0.0,
}

_EXPERIMENT_DEFAULTS = {
    "phase-portrait": {
        "v0_values": [0.4, 0.8, 1.2, 1.6],
        "include_separatrix": False,
        "duration": 30.0,
        "samples": 600,
        "t0": 0.0,
    },
    "period-curve": {"v0_min": 0.1, "v0_max": 1.9, "count": 200},
    "strobo-scan": {
        "m": None,
        "n": None,
        "v0": None,
        "c": None,
        "t0": 0.0,
        "iterations": 300,
        "seed_line": {"kind": "vertical", "count": 9, "halfwidth_scale": 2.0,
                      "halfwidth": None},
    },
    "melnikov": {"m": None, "n": None, "v0": None, "c": None, "samples": 256},
    "find-po": {
        "m": None,
        "n": None,
        "v0": None,
        "c": None,
        "solver": "strobo",
        "seed_zero_index": None,
        "t0_bar": None,
        "continue_to": None,
        "melnikov_samples": 128,
        "closure_samples": 400,
    },
}

_FORCING_TERM_RE = re.compile(
    r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*\*\s*(sin|cos)\s*\(\s*(\d+)\s*\)\s*$"
)


# --- configuration plumbing --------------------------------------------------

def _merge(base: dict, override: dict) -> dict:
    out = dict(base)
    for key, val in override.items():
        if isinstance(val, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], val)
        else:
            out[key] = val
    return out


def _parse_forcing_string(text: str) -> list[dict]:
    terms = []
    for chunk in text.split(","):
        match = _FORCING_TERM_RE.match(chunk)
        if not match:
            raise ConfigError(
                f"cannot parse forcing term {chunk!r}; expected e.g. '1*sin(1),4*cos(2)'"
            )
        amp, kind, harmonic = match.groups()
        terms.append(
            {
                "amplitude": float(amp),
                "harmonic": int(harmonic),
                "kind": "sine" if kind == "sin" else "cosine",
            }
        )
    return terms


def _resolve_config(command: str, args: argparse.Namespace) -> dict:
    resolved = {
        "command": command,
        "system": dict(_SYSTEM_DEFAULTS),
        "experiment": dict(_EXPERIMENT_DEFAULTS[command]),
        "output": dict(_OUTPUT_DEFAULTS),
    }
    if args.config is not None:
        try:
            loaded = json.loads(Path(args.config).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}")
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}")
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a JSON object")
        resolved = _merge(resolved, loaded)

    flags_system = {}
    if getattr(args, "eps", None) is not None:
        flags_system["epsilon"] = args.eps
    if getattr(args, "forcing", None) is not None:
        flags_system["forcing"] = _parse_forcing_string(args.forcing)
    if getattr(args, "omega", None) is not None:
        flags_system["omega"] = args.omega
    if getattr(args, "period", None) is not None:
        flags_system["T"] = args.period

    flags_experiment = {}
    for flag, key in (
        ("m", "m"), ("n", "n"), ("v0", "v0"), ("t0", "t0"),
        ("duration", "duration"), ("samples", "samples"),
        ("count", "count"), ("v0_min", "v0_min"), ("v0_max", "v0_max"),
        ("iterations", "iterations"), ("solver", "solver"),
        ("seed_zero_index", "seed_zero_index"), ("t0_bar", "t0_bar"),
        ("continue_to", "continue_to"), ("melnikov_samples", "melnikov_samples"),
        ("closure_samples", "closure_samples"),
    ):
        val = getattr(args, flag, None)
        if val is not None:
            flags_experiment[key] = val
    if getattr(args, "include_separatrix", False):
        flags_experiment["include_separatrix"] = True

    flags_output = {}
    if args.out is not None:
        flags_output["directory"] = args.out
    if getattr(args, "format", None) is not None:
        flags_output["format"] = args.format
    if getattr(args, "precision", None) is not None:
        flags_output["precision"] = args.precision

    resolved = _merge(
        resolved,
        {"system": flags_system, "experiment": flags_experiment, "output": flags_output},
    )

    out = resolved["output"]
    if out["format"] not in ("csv", "json"):
        raise ConfigError(f"output format must be csv or json, got {out['format']!r}")
    if not isinstance(out["precision"], int) or out["precision"] < 1:
        raise ConfigError("output precision must be a positive integer")
    if "omega" in resolved["system"] and "T" in resolved["system"]:
        raise ConfigError("give exactly one of omega and T, not both")
    return resolved


def _forcing_terms(cfg_terms) -> tuple[ForcingTerm, ...]:
    if isinstance(cfg_terms, str):
        cfg_terms = _parse_forcing_string(cfg_terms)
    terms = []
    for item in cfg_terms:
        try:
            terms.append(
                ForcingTerm(
                    float(item["amplitude"]),
                    int(item.get("harmonic", 1)),
                    item.get("kind", "sine"),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad forcing term {item!r}: {exc}")
    return tuple(terms)


def _explicit_period(system_cfg: dict) -> float | None:
    if "T" in system_cfg:
        return float(system_cfg["T"])
    if "omega" in system_cfg:
        if not system_cfg["omega"] > 0:
            raise ConfigError("omega must be positive")
        return TWO_PI / float(system_cfg["omega"])
    return None


def _resolve_resonance(resolved: dict):
    """ResonanceSpec plus SystemSpec from (m, n, v0 | c | T)."""
    exp = resolved["experiment"]
    system_cfg = resolved["system"]
    m, n = exp.get("m"), exp.get("n")
    if m is None or n is None:
        raise ConfigError("this experiment needs both m and n")
    m, n = int(m), int(n)
    v0 = exp.get("v0")
    c = exp.get("c")
    T_given = _explicit_period(system_cfg)
    if v0 is not None and c is not None:
        raise ConfigError("give v0 or c, not both")
    if c is not None:
        v0 = ic_on_axis(float(c)).v
    if v0 is not None:
        if T_given is not None:
            raise ConfigError("the forcing period is derived from (m, n, v0); "
                              "do not give omega or T as well")
        spec = resonance_from_level(float(v0), m, n)
    elif T_given is not None:
        spec = level_for_period(T_given, m, n)
    else:
        raise ConfigError("give v0 (or c), or a forcing period via omega/T")
    forcing = ForcingSpec(spec.omega, _forcing_terms(system_cfg["forcing"]))
    sys_spec = SystemSpec(forcing, float(system_cfg["epsilon"]))
    return spec, sys_spec


# --- deterministic table output ----------------------------------------------

def _fmt(value, precision: int) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if v == 0.0:
            v = 0.0  # normalize the sign of zero
        return "%.*g" % (precision, v)
    return str(value)


def _write_table(directory: Path, name: str, resolved: dict, columns, rows,
                 extra_comments=()) -> Path:
    out = resolved["output"]
    precision = out["precision"]
    # the destination does not describe the experiment; keep headers
    # byte-identical regardless of where the run writes
    embedded = _merge(resolved, {"output": {"directory": "."}})
    config_line = json.dumps(embedded, sort_keys=True, separators=(",", ":"))
    if out["format"] == "json":
        path = directory / f"{name}.json"
        payload = {
            "config": json.loads(config_line),
            "notes": list(extra_comments),
            "columns": list(columns),
            "rows": [[_fmt(v, precision) for v in row] for row in rows],
        }
        path.write_text(json.dumps(payload, sort_keys=True, indent=1) + "\n")
        return path
    path = directory / f"{name}.csv"
    with open(path, "w", newline="\n") as fh:
        fh.write(f"# config: {config_line}\n")
        for comment in extra_comments:
            fh.write(f"# {comment}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v, precision) for v in row) + "\n")
    return path


def _out_dir(resolved: dict) -> Path:
    directory = Path(resolved["output"]["directory"])
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory: {exc}")
    return directory


# --- subcommands --------------------------------------------------------------

def cmd_phase_portrait(resolved: dict) -> int:
    exp = resolved["experiment"]
    system_cfg = resolved["system"]
    eps = float(system_cfg["epsilon"])
    T_given = _explicit_period(system_cfg)
    if eps > 0.0 and T_given is None:
        raise ConfigError("a forced portrait (eps > 0) needs omega or T")
    omega = TWO_PI / T_given if T_given else 1.0
    sys_spec = SystemSpec(ForcingSpec(omega, _forcing_terms(system_cfg["forcing"])), eps)

    seeds = [PlanarState(0.0, float(v)) for v in exp["v0_values"]]
    if exp["include_separatrix"]:
        # just inside and just outside the homoclinic level H = 1
        seeds.append(PlanarState(0.0, math.sqrt(2.0 * (0.99 + 1.0))))
        seeds.append(PlanarState(0.0, math.sqrt(2.0 * (1.01 + 1.0))))

    duration = float(exp["duration"])
    count = int(exp["samples"])
    t0 = float(exp["t0"])
    times = t0 + np.linspace(0.0, duration, count)
    rhs = make_field_rhs(sys_spec)

    directory = _out_dir(resolved)
    rows, status = [], []
    for sid, seed in enumerate(seeds):
        try:
            res = integrate(rhs, seed.as_array(), t0, t0 + duration, DEFAULT_CONFIG,
                            dense_points=times)
        except IntegrationError as exc:
            status.append((sid, "failed", f"{type(exc).__name__}: {exc}"))
            continue
        for t, y in zip(times, res.samples):
            rows.append((sid, float(t), float(y[0]), float(y[1]),
                         hamiltonian(PlanarState.from_array(y))))
        status.append((sid, "ok", ""))
    _write_table(directory, "trajectories", resolved,
                 ("seed_id", "t", "u", "v", "H"), rows)
    _write_table(directory, "status", resolved, ("seed_id", "status", "detail"), status)
    return 0 if any(s[1] == "ok" for s in status) else 3


def cmd_period_curve(resolved: dict) -> int:
    exp = resolved["experiment"]
    v_min, v_max = float(exp["v0_min"]), float(exp["v0_max"])
    count = int(exp["count"])
    if not (0.0 < v_min < v_max < 2.0):
        raise ConfigError("the grid must satisfy 0 < v0_min < v0_max < 2")
    if count < 2:
        raise ConfigError("count must be at least 2")
    rows = []
    for v0 in np.linspace(v_min, v_max, count):
        v0 = float(v0)
        T_c = period_of_level(v0)
        rows.append((v0, 0.5 * v0 * v0 - 1.0, T_c, period_oracle(v0)))
    _write_table(_out_dir(resolved), "period_curve", resolved,
                 ("v0", "c", "T_c", "T_oracle"), rows)
    return 0


def _seed_line(exp: dict, spec, eps: float) -> list[PlanarState]:
    line = exp["seed_line"]
    kind = line.get("kind", "vertical")
    count = int(line.get("count", 9))
    if count < 1:
        raise ConfigError("seed_line count must be >= 1")
    halfwidth = line.get("halfwidth")
    if halfwidth is None:
        halfwidth = float(line.get("halfwidth_scale", 2.0)) * eps
        if halfwidth == 0.0:
            halfwidth = 0.05  # unforced scans still want a visible spread
    halfwidth = float(halfwidth)
    offsets = np.linspace(-halfwidth, halfwidth, count) if count > 1 else np.array([0.0])
    v0 = math.sqrt(2.0 * (spec.c.c + 1.0))
    if kind == "vertical":
        return [PlanarState(0.0, v0 + float(s)) for s in offsets]
    if kind == "diagonal":
        # diagonal point (v1, v1) on the same energy level as (0, v0)
        lo, hi = 0.0, 2.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if 0.5 * mid * mid - math.cos(mid) < spec.c.c:
                lo = mid
            else:
                hi = mid
        v1 = 0.5 * (lo + hi)
        return [PlanarState(v1 + float(s), v1 + float(s)) for s in offsets]
    if kind == "segment":
        try:
            a = [float(x) for x in line["from"]]
            b = [float(x) for x in line["to"]]
        except (KeyError, TypeError, ValueError):
            raise ConfigError("segment seed_line needs 'from' and 'to' points [u, v]")
        fracs = np.linspace(0.0, 1.0, count) if count > 1 else np.array([0.5])
        return [
            PlanarState(a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1]))
            for f in fracs
        ]
    raise ConfigError(f"unknown seed_line kind {kind!r}")


def cmd_strobo_scan(resolved: dict) -> int:
    exp = resolved["experiment"]
    spec, sys_spec = _resolve_resonance(resolved)
    seeds = _seed_line(exp, spec, sys_spec.epsilon)
    t0 = float(exp["t0"])
    iterations = int(exp["iterations"])
    if iterations < 1:
        raise ConfigError("iterations must be >= 1")

    orbits = scan(seeds, t0, sys_spec, spec.T, iterations)
    directory = _out_dir(resolved)
    rows, status = [], []
    for sid, orbit in enumerate(orbits):
        for j, p in enumerate(orbit.points):
            rows.append((sid, j, p.u, p.v))
        status.append((sid, "ok" if orbit.error is None else "failed",
                       orbit.error or ""))
    _write_table(directory, "strobo_scan", resolved,
                 ("seed_id", "iter", "u", "v"), rows,
                 extra_comments=(f"T: {spec.T!r}", f"T_c: {spec.T_c!r}"))
    _write_table(directory, "status", resolved, ("seed_id", "status", "detail"), status)
    return 0 if any(s[1] == "ok" for s in status) else 3


def cmd_melnikov(resolved: dict) -> int:
    exp = resolved["experiment"]
    spec, sys_spec = _resolve_resonance(resolved)
    x0 = ic_on_axis(spec.c)
    profile = melnikov_profile(x0, spec, sys_spec.forcing, int(exp["samples"]))
    directory = _out_dir(resolved)
    _write_table(directory, "melnikov_profile", resolved, ("t0", "M"),
                 [(float(t), float(v)) for t, v in profile.samples],
                 extra_comments=(f"mT: {spec.period_mT!r}",))
    notes = ["identically-zero: true"] if profile.degenerate else []
    _write_table(directory, "melnikov_zeros", resolved, ("t0_zero", "slope"),
                 [(t, s) for t, s in profile.zeros], extra_comments=notes)
    if profile.degenerate:
        print("melnikov: profile is identically zero (no simple zeros)")
    return 0


def cmd_find_po(resolved: dict) -> int:
    exp = resolved["experiment"]
    spec, sys_spec = _resolve_resonance(resolved)
    if sys_spec.epsilon <= 0.0:
        raise ConfigError("find-po needs eps > 0; the unforced resonance is a continuum")
    solver = exp["solver"]
    if solver not in ("strobo", "poincare"):
        raise ConfigError(f"solver must be 'strobo' or 'poincare', got {solver!r}")
    x0 = ic_on_axis(spec.c)
    directory = _out_dir(resolved)

    if exp["t0_bar"] is not None:
        seeds = [(x0, float(exp["t0_bar"]))]
    else:
        profile = melnikov_profile(x0, spec, sys_spec.forcing,
                                   int(exp["melnikov_samples"]))
        seeds = melnikov_seeds(profile)  # raises NoSimpleZeros when degenerate
        index = exp["seed_zero_index"]
        if index is not None:
            index = int(index)
            if not 0 <= index < len(seeds):
                raise ConfigError(
                    f"seed_zero_index {index} out of range; {len(seeds)} zeros found"
                )
            seeds = [seeds[index]]

    iterate_rows, status_rows = [], []
    records, record_seed = [], []
    for sid, (seed_point, t0_bar) in enumerate(seeds):
        try:
            if solver == "strobo":
                rec, rep = newton_strobo(seed_point, t0_bar, sys_spec, spec.m, spec.T)
            else:
                rec, rep = newton_poincare(seed_point.v, t0_bar, sys_spec,
                                           spec.n, spec.m, spec.T)
        except NewtonFailure as exc:
            rep = exc.report
            status_rows.append((sid, rep.failure_kind or "failed",
                                rep.iteration_count, -1))
        else:
            records.append(rec)
            record_seed.append(sid)
            status_rows.append((sid, "converged", rep.iteration_count, len(records) - 1))
        for it, (point, resid) in enumerate(rep.iterates):
            iterate_rows.append((sid, it, float(point[0]), float(point[1]), resid))

    unique = deduplicate_records(records)
    position = {id(r): i for i, r in enumerate(records)}
    kept_ids = [position[id(r)] for r in unique]

    solver_note = ("iterate columns are (u, v)" if solver == "strobo"
                   else "iterate columns are (v0, t0)")
    _write_table(directory, "newton_iterates", resolved,
                 ("seed_index", "iteration", "p1", "p2", "residual"),
                 iterate_rows, extra_comments=(solver_note,))
    _write_table(directory, "status", resolved,
                 ("seed_index", "outcome", "iterations", "record_id"), status_rows)

    exit_code = 0
    continuation_rows, record_rows, cycle_rows, closure_rows = [], [], [], []
    for oid, rec in enumerate(unique):
        final = rec
        if exp["continue_to"] is not None:
            try:
                branch = continue_in_epsilon(rec, float(exp["continue_to"]))
            except StepTooSmall as exc:
                branch = exc.records
                exit_code = 3
                print(f"find-po: continuation of orbit {oid} stalled at "
                      f"eps = {exc.last_eps}", file=sys.stderr)
            for step, b in enumerate(branch):
                continuation_rows.append((oid, step, b.epsilon, b.x_eps.u, b.x_eps.v,
                                          b.residual, b.stability))
            if branch:
                final = branch[-1]

        mult = final.multipliers
        record_rows.append(
            (oid, record_seed[kept_ids[oid]], rec.t0, final.x_eps.u, final.x_eps.v,
             final.m, final.n, final.epsilon, final.residual,
             float(np.trace(final.monodromy)),
             mult[0].real, mult[0].imag, mult[1].real, mult[1].imag,
             final.stability)
        )
        for j, p in enumerate(orbit_cycle(final)):
            cycle_rows.append((oid, j, p.u, p.v))
        closure_times = final.t0 + np.linspace(0.0, final.m * final.T,
                                               int(exp["closure_samples"]))
        res = integrate(make_field_rhs(final.system), final.x_eps.as_array(),
                        final.t0, closure_times[-1], DEFAULT_CONFIG,
                        dense_points=closure_times)
        for t, y in zip(closure_times, res.samples):
            closure_rows.append((oid, float(t), float(y[0]), float(y[1])))

    _write_table(directory, "records", resolved,
                 ("orbit_id", "seed_index", "t0", "u", "v", "m", "n", "epsilon",
                  "residual", "trace", "mult1_re", "mult1_im", "mult2_re",
                  "mult2_im", "stability"), record_rows)
    _write_table(directory, "cycle", resolved, ("orbit_id", "iterate", "u", "v"),
                 cycle_rows)
    _write_table(directory, "closure", resolved, ("orbit_id", "t", "u", "v"),
                 closure_rows)
    if exp["continue_to"] is not None:
        _write_table(directory, "continuation", resolved,
                     ("orbit_id", "step", "epsilon", "u", "v", "residual",
                      "stability"), continuation_rows)
    if not unique:
        print("find-po: no seed converged", file=sys.stderr)
        return 3
    return exit_code


_COMMANDS = {
    "phase-portrait": cmd_phase_portrait,
    "period-curve": cmd_period_curve,
    "strobo-scan": cmd_strobo_scan,
    "melnikov": cmd_melnikov,
    "find-po": cmd_find_po,
}


# --- argument parsing ----------------------------------------------------------

def _add_common(sp: argparse.ArgumentParser):
    sp.add_argument("--config", help="JSON run configuration")
    sp.add_argument("--out", help="output directory")
    sp.add_argument("--format", choices=("csv", "json"), help="output format")
    sp.add_argument("--precision", type=int, help="significant digits in outputs")
    sp.add_argument("--eps", type=float, help="forcing strength")
    sp.add_argument("--forcing", help="spectrum, e.g. '1*sin(1),4*cos(2)'")
    sp.add_argument("--omega", type=float, help="forcing frequency")
    sp.add_argument("--T", dest="period", type=float, help="forcing period")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subharmonics",
        description="Subharmonic periodic orbits of the forced pendulum",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("phase-portrait", help="integrate a grid of seeds")
    _add_common(sp)
    sp.add_argument("--t0", type=float, help="initial phase")
    sp.add_argument("--duration", type=float, help="time span per seed")
    sp.add_argument("--samples", type=int, help="samples per trajectory")
    sp.add_argument("--include-separatrix", action="store_true",
                    dest="include_separatrix",
                    help="add seeds just inside and outside the homoclinic level")

    sp = sub.add_parser("period-curve", help="tabulate the librational period")
    _add_common(sp)
    sp.add_argument("--v0-min", dest="v0_min", type=float)
    sp.add_argument("--v0-max", dest="v0_max", type=float)
    sp.add_argument("--count", type=int)

    sp = sub.add_parser("strobo-scan", help="iterate seed lines under the time-T map")
    _add_common(sp)
    sp.add_argument("--m", type=int, help="map period of the resonance")
    sp.add_argument("--n", type=int, help="loop count of the resonance")
    sp.add_argument("--v0", type=float, help="section speed fixing the level")
    sp.add_argument("--t0", type=float, help="map phase")
    sp.add_argument("--iterations", type=int)

    sp = sub.add_parser("melnikov", help="persistence profile and its zeros")
    _add_common(sp)
    sp.add_argument("--m", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--v0", type=float)
    sp.add_argument("--samples", type=int)

    sp = sub.add_parser("find-po", help="profile, seeds, Newton, continuation")
    _add_common(sp)
    sp.add_argument("--m", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--v0", type=float)
    sp.add_argument("--solver", choices=("strobo", "poincare"))
    sp.add_argument("--seed-zero-index", dest="seed_zero_index", type=int)
    sp.add_argument("--t0-bar", dest="t0_bar", type=float,
                    help="bypass the profile and shoot from this phase")
    sp.add_argument("--continue-to", dest="continue_to", type=float)
    sp.add_argument("--melnikov-samples", dest="melnikov_samples", type=int)
    sp.add_argument("--closure-samples", dest="closure_samples", type=int)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        resolved = _resolve_config(args.command, args)
        return _COMMANDS[args.command](resolved)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NoSimpleZeros as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SubharmonicsError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
