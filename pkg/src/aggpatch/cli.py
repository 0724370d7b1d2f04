"""Command-line front end: scenario wiring and deterministic artifacts.

One command per process.  Scenarios read a single JSON config document
(``--config``) optionally overridden by flags, and write JSON/CSV files
into ``--out``.  Outputs are byte-deterministic: fields are emitted in a
fixed order and every float is formatted with 17 significant digits.  All
files embed the config hash and the truncation-residual report.

Exit codes: 0 ok, 2 config error, 3 domain error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from pathlib import Path

from . import __version__
from .analysis import box_count, box_dimension
from .cantor import CantorGapGenerator
from .errors import CollisionError, ConfigError, DomainError, VerificationError
from .flow import evolve, snapshot_to_json, trajectory
from .intervals import (
    Interval,
    IntervalUnion,
    hull,
    interval_union_to_json,
    measure,
    normalize,
    truncate,
)
from .inverse_compact import inverse_compact, verify_pushforward
from .inverse_open import inverse_open
from .measures import (
    COS_SURROGATE,
    MONOMIAL_X,
    MONOMIAL_X2,
    MONOMIAL_X3,
    convergence_table,
)
from .oracle import cluster, discretize, integrate, particle_velocities
from .skeleton import atomic_measure_from_pairs, skeleton, skeleton_bounds

TEST_FUNCTIONS = {
    "x": MONOMIAL_X,
    "x2": MONOMIAL_X2,
    "x3": MONOMIAL_X3,
    "cos8": COS_SURROGATE,
}

DEFAULT_T_GRID_K = range(1, 21)


# ---------------------------------------------------------------------------
# deterministic rendering

def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def render_json(value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        body = ",\n".join(
            f"{pad}  {json.dumps(str(k))}: {render_json(v, indent + 1)}"
            for k, v in value.items()
        )
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        body = ",\n".join(f"{pad}  {render_json(v, indent + 1)}" for v in value)
        return "[\n" + body + "\n" + pad + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fmt_float(value)
    if isinstance(value, int):
        return str(value)
    if value is None:
        return "null"
    return json.dumps(str(value))


def config_hash(config: dict) -> str:
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def write_json(path: Path, doc: dict) -> None:
    path.write_text(render_json(doc) + "\n", encoding="utf-8")


def write_csv(path: Path, header: list[str], rows, meta: dict) -> None:
    lines = [f"# {k}={v}" for k, v in meta.items()]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(fmt_float(v) if isinstance(v, float) else str(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


PLOT_SCRIPT = """\
#!/usr/bin/env python3
\"\"\"Generic plot helper: `python {name} <csv file> <x column> <y column>`.\"\"\"
import csv
import sys

import matplotlib.pyplot as plt

path, xcol, ycol = sys.argv[1], sys.argv[2], sys.argv[3]
with open(path) as fh:
    rows = [r for r in csv.DictReader(l for l in fh if not l.startswith("#"))]
xs = [float(r[xcol]) for r in rows]
ys = [float(r[ycol]) for r in rows]
plt.plot(xs, ys, "o-")
plt.xlabel(xcol)
plt.ylabel(ycol)
plt.tight_layout()
plt.savefig(path.rsplit(".", 1)[0] + ".png", dpi=150)
"""


# ---------------------------------------------------------------------------
# config handling

def load_config(args: argparse.Namespace) -> dict:
    config: dict = {}
    if args.config:
        try:
            config = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(config, dict):
            raise ConfigError("config document must be a JSON object")
    for key in ("set", "atoms"):
        inline = getattr(args, key.replace("-", "_"), None)
        if inline is not None:
            try:
                config[key] = json.loads(inline)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"--{key} is not valid JSON: {exc}") from exc
    for key in ("depth", "particles", "t_final", "seed", "dt", "total_mass", "middle"):
        value = getattr(args, key, None)
        if value is not None:
            config[key] = value
    return config


def parse_patch(config: dict):
    data = config.get("set")
    if data is None:
        raise ConfigError("config needs a 'set': [[left, right], ...]")
    if not isinstance(data, list) or not all(
        isinstance(p, list) and len(p) == 2 for p in data
    ):
        raise ConfigError("'set' must be a list of [left, right] pairs")
    union = normalize(data)
    result = truncate(
        union,
        max_intervals=config.get("max_intervals"),
        min_length=float(config.get("min_interval_length", 0.0)),
    )
    if not result.union:
        raise ConfigError("'set' is empty after normalization and truncation")
    return result


def parse_t_grid(config: dict) -> list[float]:
    if "t_grid" in config:
        grid = config["t_grid"]
        if not isinstance(grid, list) or not grid:
            raise ConfigError("'t_grid' must be a nonempty list of times")
        return [float(t) for t in grid]
    return [1.0 - 0.5 ** k for k in DEFAULT_T_GRID_K]


def parse_generator(config: dict) -> CantorGapGenerator:
    middle = float(config.get("middle", 1.0 / 3.0))
    hull_pair = config.get("hull", [0.0, 1.0])
    if not (isinstance(hull_pair, list) and len(hull_pair) == 2):
        raise ConfigError("'hull' must be [left, right]")
    return CantorGapGenerator(middle, Interval(float(hull_pair[0]), float(hull_pair[1])))


# ---------------------------------------------------------------------------
# scenario handlers

def run_evolve(config: dict, out: Path) -> int:
    patch = parse_patch(config)
    grid = parse_t_grid(config)
    snapshots = [snapshot_to_json(evolve(patch.union, t)) for t in grid]
    write_json(out / "evolve.json", {
        "config_hash": config_hash(config),
        "truncation": patch.report(),
        "initial_set": interval_union_to_json(patch.union),
        "snapshots": snapshots,
    })
    if config.get("trajectories"):
        alphas = [e for iv in patch.union for e in (iv.left, iv.right)]
        rows = [
            (alpha, t, trajectory(patch.union, alpha, t))
            for alpha in alphas
            for t in grid
        ]
        write_csv(out / "trajectories.csv", ["alpha", "t", "x"], rows, {
            "config_hash": config_hash(config),
            "dropped_mass": fmt_float(patch.dropped_mass),
        })
    return 0


def run_skeleton(config: dict, out: Path) -> int:
    patch = parse_patch(config)
    atoms = skeleton(patch.union)
    lo, hi = skeleton_bounds(patch.union)
    write_json(out / "skeleton.json", {
        "config_hash": config_hash(config),
        "truncation": patch.report(),
        "atoms": [{"x": x, "mass": c} for x, c in atoms],
        "bounds": [lo, hi],
        "total_mass": atoms.total_mass,
    })
    return 0


def run_inverse_open(config: dict, out: Path) -> int:
    pairs = config.get("atoms")
    if not isinstance(pairs, list) or not pairs:
        raise ConfigError("config needs 'atoms': [{'x': .., 'mass': ..}, ...]")
    try:
        mu = atomic_measure_from_pairs((a["x"], a["mass"]) for a in pairs)
    except (TypeError, KeyError) as exc:
        raise ConfigError("each atom needs 'x' and 'mass' fields") from exc
    union = inverse_open(mu)
    roundtrip = skeleton(union)
    write_json(out / "inverse_open.json", {
        "config_hash": config_hash(config),
        "truncation": None,
        "set": interval_union_to_json(union),
        "measure": measure(union),
        "roundtrip_atom_count": len(roundtrip),
        "requested_atom_count": len(mu),
    })
    return 0


def run_inverse_compact(config: dict, out: Path) -> int:
    generator = parse_generator(config)
    depth = int(config.get("depth", 8))
    total_mass = float(config.get("total_mass", 2.0))
    mu = generator.natural_measure(total_mass)
    construction = inverse_compact(generator, mu, depth)
    doc = construction.to_json()
    write_json(out / "inverse_compact.json", {
        "config_hash": config_hash(config),
        "truncation": {
            "residual_length": construction.residual_length,
            "resolution_mass": construction.resolution_mass,
        },
        **doc,
    })
    return 0


def run_verify_pushforward(config: dict, out: Path) -> int:
    generator = parse_generator(config)
    depth = int(config.get("depth", 8))
    total_mass = float(config.get("total_mass", 2.0))
    probes = int(config.get("fiber_probes", 1000))
    rng = random.Random(int(config.get("seed", 0)))
    mu = generator.natural_measure(total_mass)
    construction = inverse_compact(generator, mu, depth)
    report = verify_pushforward(construction)

    c, d = generator.hull.left, generator.hull.right
    fiber_spread = 0.0
    for _ in range(probes):
        y = c + (d - c) * rng.random()
        x_minus, x_plus = construction.fiber(y)
        spread = abs(construction.limit_map(x_plus) - construction.limit_map(x_minus))
        if spread > fiber_spread:
            fiber_spread = spread
    doc = {
        "config_hash": config_hash(config),
        "truncation": {
            "residual_length": construction.residual_length,
            "resolution_mass": construction.resolution_mass,
        },
        "fiber_probes": probes,
        "max_fiber_value_spread": fiber_spread,
        **report.to_json(),
    }
    write_json(out / "verify_pushforward.json", doc)
    if not report.passed:
        raise VerificationError(
            f"pushforward mismatch {report.max_error:.3e} exceeds tolerance "
            f"{report.tolerance:.3e}"
        )
    return 0


def run_oracle(config: dict, out: Path) -> int:
    patch = parse_patch(config)
    n = int(config.get("particles", 1000))
    t_final = float(config.get("t_final", 0.999))
    dt = config.get("dt")
    dt = float(dt) if dt is not None else None
    scheme = str(config.get("scheme", "rk4"))
    tol = float(config.get("cluster_tol", 1e-2))

    system = discretize(patch.union, n)
    total_steps = max(1, int(t_final / (dt if dt is not None else (1.0 - t_final) / 100.0)))
    store_every = max(1, total_steps // int(config.get("csv_samples", 200)))
    result = integrate(system, dt, t_final, scheme=scheme, store_every=store_every)

    rows = []
    for i, t in enumerate(result.times):
        positions = result.positions[i]
        vels = particle_velocities(positions, result.weight)
        step = i * store_every if i < len(result.times) - 1 else result.steps
        for pid in range(positions.size):
            rows.append((step, float(t), pid, float(positions[pid]), float(vels[pid])))
    write_csv(out / "oracle.csv", ["step", "t", "particle_id", "x", "v"], rows, {
        "config_hash": config_hash(config),
        "dropped_mass": fmt_float(patch.dropped_mass),
    })

    empirical = cluster(result.final_positions, result.weight, tol)
    exact = skeleton(patch.union)
    comparison = []
    if len(empirical) == len(exact):
        for (xe, ce), (xs_, cs) in zip(empirical, exact):
            comparison.append({
                "empirical_x": xe,
                "exact_x": xs_,
                "position_error": abs(xe - xs_),
                "empirical_mass": ce,
                "exact_mass": cs,
                "mass_error": abs(ce - cs),
            })
    write_json(out / "oracle.json", {
        "config_hash": config_hash(config),
        "truncation": patch.report(),
        "particles": n,
        "weight": result.weight,
        "t_final": t_final,
        "cluster_tol": tol,
        "empirical_atoms": [{"x": x, "mass": c} for x, c in empirical],
        "exact_atoms": [{"x": x, "mass": c} for x, c in exact],
        "atom_count_matches": len(empirical) == len(exact),
        "comparison": comparison,
    })
    return 0


def run_dimension(config: dict, out: Path) -> int:
    if "cantor" in config:
        spec = config["cantor"]
        if not isinstance(spec, dict):
            raise ConfigError("'cantor' must be an object with 'middle' and 'depth'")
        generator = parse_generator(spec)
        depth = int(spec.get("depth", 10))
        from .intervals import CompactSet

        target = CompactSet(generator.hull, IntervalUnion(generator.gaps(depth)))
        min_scale = generator.cell_width(depth)
        default_ladder = [
            generator.hull.length * generator.side ** k for k in range(2, 9)
        ]
    elif "atoms" in config:
        mu = atomic_measure_from_pairs(
            (a["x"], a["mass"]) for a in config["atoms"]
        )
        target = mu
        min_scale = None
        span = mu.positions[-1] - mu.positions[0] if len(mu) > 1 else 1.0
        default_ladder = [span * 0.5 ** k for k in range(1, 11)]
    elif "set" in config:
        patch = parse_patch(config)
        mu = skeleton(patch.union)
        target = mu
        min_scale = None
        span = mu.positions[-1] - mu.positions[0] if len(mu) > 1 else 1.0
        default_ladder = [span * 0.5 ** k for k in range(1, 11)]
    else:
        raise ConfigError("dimension needs one of 'cantor', 'atoms', or 'set'")

    ladder = [float(e) for e in config.get("eps_ladder", default_ladder)]
    fit = box_dimension(target, ladder, min_scale=min_scale)
    write_csv(out / "dimension.csv", ["eps", "count"],
              list(zip(fit.eps, fit.counts)),
              {"config_hash": config_hash(config)})
    write_json(out / "dimension.json", {
        "config_hash": config_hash(config),
        "truncation": None,
        **fit.to_json(),
    })
    return 0


def run_converge(config: dict, out: Path) -> int:
    patch = parse_patch(config)
    names = config.get("functions", list(TEST_FUNCTIONS))
    unknown = [n for n in names if n not in TEST_FUNCTIONS]
    if unknown:
        raise ConfigError(f"unknown test functions {unknown}; choose from {list(TEST_FUNCTIONS)}")
    ks = config.get("k_values", list(DEFAULT_T_GRID_K))
    rows = convergence_table(
        patch.union, {n: TEST_FUNCTIONS[n] for n in names}, [int(k) for k in ks]
    )
    write_csv(
        out / "converge.csv",
        ["k", "t", "f_id", "pairing", "limit", "error", "bound"],
        [(r["k"], r["t"], r["f_id"], r["pairing"], r["limit"], r["error"], r["bound"])
         for r in rows],
        {"config_hash": config_hash(config),
         "dropped_mass": fmt_float(patch.dropped_mass)},
    )
    return 0


HANDLERS = {
    "evolve": run_evolve,
    "skeleton": run_skeleton,
    "inverse-open": run_inverse_open,
    "inverse-compact": run_inverse_compact,
    "verify-pushforward": run_verify_pushforward,
    "oracle": run_oracle,
    "dimension": run_dimension,
    "converge": run_converge,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aggpatch",
        description="Exact 1-d aggregation-patch dynamics up to blow-up.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in HANDLERS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config document")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--set", help="inline JSON [[left, right], ...]")
        p.add_argument("--atoms", help="inline JSON [{'x': .., 'mass': ..}, ...]")
        p.add_argument("--depth", type=int, help="gap enumeration depth")
        p.add_argument("--particles", type=int, help="oracle particle count")
        p.add_argument("--t-final", dest="t_final", type=float, help="oracle final time")
        p.add_argument("--dt", type=float, help="oracle step size")
        p.add_argument("--total-mass", dest="total_mass", type=float)
        p.add_argument("--middle", type=float, help="removed middle fraction")
        p.add_argument("--seed", type=int, help="seed for randomized probes")
        p.add_argument("--emit-plot-script", action="store_true")
    return parser


def _error_record(code: int, kind: str, message: str) -> int:
    sys.stderr.write(render_json({
        "error": {"exit_code": code, "type": kind, "message": message}
    }) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        code = HANDLERS[args.command](config, out)
        if args.emit_plot_script:
            script = out / f"plot_{args.command.replace('-', '_')}.py"
            script.write_text(PLOT_SCRIPT.format(name=script.name), encoding="utf-8")
        return code
    except ConfigError as exc:
        return _error_record(2, "config", str(exc))
    except (DomainError, CollisionError) as exc:
        return _error_record(3, "domain", str(exc))
    except VerificationError as exc:
        return _error_record(4, "verification", str(exc))


if __name__ == "__main__":
    sys.exit(main())
