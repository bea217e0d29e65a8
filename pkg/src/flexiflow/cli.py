"""Command-line interface.

Subcommands: simulate, profile, sweep, pareto, scale, sensitivity.
Exit codes: 0 success, 1 config or I/O error, 2 simulation fault.
All outputs are deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import datapacks, dse, reports
from .carbon import DeploymentScenario
from .errors import FlexiFlowError
from .iss.machine import load_program, profile_memory
from .profile import WorkloadProfile

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_FAULT = 2

DEFAULT_MAX_STEPS = 100_000_000


class _Parser(argparse.ArgumentParser):
    # Usage errors are configuration errors (exit 1), not simulation faults.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise FlexiFlowError(message)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _run_binary(args) -> tuple:
    manifest = datapacks.load_manifest(Path(args.manifest))
    image = Path(args.binary).read_bytes()
    machine = load_program(
        image,
        base=manifest["base"],
        entry=manifest["entry"],
        sp_init=manifest["sp_init"],
        mem_size=manifest["mem_size"],
    )
    trace = machine.run(args.max_steps)
    return manifest, image, trace


def _cmd_simulate(args) -> int:
    _manifest, _image, trace = _run_binary(args)
    _emit(reports.dump_json(trace.to_json_obj()), args.out)
    return EXIT_FAULT if trace.halt_reason == "fault" else EXIT_OK


def _cmd_profile(args) -> int:
    manifest, image, trace = _run_binary(args)
    nvm_kb, vm_kb = profile_memory(image, trace, manifest["globals_bytes"])
    name = args.name or Path(args.binary).stem
    profile = WorkloadProfile.from_trace(name, trace, nvm_kb=nvm_kb, vm_kb=vm_kb)
    _emit(reports.dump_json(profile.to_json_obj()), args.out)
    return EXIT_FAULT if trace.halt_reason == "fault" else EXIT_OK


def _load_models(args):
    cores = datapacks.load_cores(args.cores)
    foundry = datapacks.load_foundry(args.foundry)
    mem = datapacks.load_memory_model(args.memory)
    return cores, foundry, mem


def _nearest_index(grid: np.ndarray, value: float) -> int:
    return int(np.argmin(np.abs(np.log(grid) - np.log(value))))


def _cmd_sweep(args) -> int:
    cores, foundry, mem = _load_models(args)
    profile = datapacks.load_profile(args.workload)
    source = datapacks.resolve_energy_source(args.source)
    dm = dse.sweep(
        cores,
        profile,
        lifetime_range=tuple(args.lifetime_range),
        freq_range=tuple(args.freq_range),
        points_per_decade=args.points_per_decade,
        source=source,
        foundry=foundry,
        mem=mem,
    )
    _emit(reports.decision_map_csv(dm), args.out_csv)
    if args.out_json:
        obj = dm.to_json_obj()
        obj["workload"] = profile.name
        star = _star_cell(dm, profile, cores, source, foundry, mem)
        if star is not None:
            obj["star"] = star
        Path(args.out_json).write_text(reports.dump_json(obj), encoding="utf-8")
    return EXIT_OK


def _star_cell(dm, profile, cores, source, foundry, mem):
    """Mark the workload's default deployment scenario on the map, if known."""
    if profile.default_lifetime_s is None or profile.default_exec_per_s is None:
        return None
    lifetime = profile.default_lifetime_s
    freq = profile.default_exec_per_s
    scenario = DeploymentScenario(lifetime_s=lifetime, exec_per_s=freq, source=source)
    try:
        best, _reports = dse.select_optimal(cores, profile, scenario, foundry, mem)
        optimal = best.name
    except FlexiFlowError:
        optimal = dse.INFEASIBLE
    return {
        "lifetime_s": lifetime,
        "exec_per_s": freq,
        "optimal": optimal,
        "row": _nearest_index(dm.lifetimes_s, lifetime),
        "col": _nearest_index(dm.frequencies_hz, freq),
    }


def _cmd_pareto(args) -> int:
    cores, foundry, mem = _load_models(args)
    profiles = datapacks.load_variants(Path(args.variants))
    scenario = datapacks.load_scenario(Path(args.scenario))
    variants = dse.evaluate_variants(profiles, cores, scenario, foundry, mem)
    frontier = dse.pareto_frontier(variants)
    _emit(reports.pareto_csv(variants, frontier), args.out)
    return EXIT_OK


def _cmd_scale(args) -> int:
    systems = datapacks.load_scale_scenarios(Path(args.scenario) if args.scenario else None)
    _emit(reports.scale_csv(systems), args.out)
    return EXIT_OK


def _cmd_sensitivity(args) -> int:
    cores, foundry, mem = _load_models(args)
    profile = datapacks.load_profile(args.workload)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    grid = dict(
        lifetime_range=tuple(args.lifetime_range),
        freq_range=tuple(args.freq_range),
        points_per_decade=args.points_per_decade,
    )
    written = []
    if args.kind == "energy":
        catalog = datapacks.load_energy_sources()
        names = args.sources.split(",") if args.sources else sorted(catalog)
        sources = [datapacks.resolve_energy_source(n.strip(), catalog) for n in names]
        maps = dse.sensitivity_energy(cores, profile, sources, foundry=foundry, mem=mem, **grid)
        for name in sorted(maps):
            path = out_dir / f"sensitivity_energy_{name}.csv"
            path.write_text(reports.decision_map_csv(maps[name]), encoding="utf-8")
            written.append(path)
    else:
        source = datapacks.resolve_energy_source(args.source)
        one, two = dse.sensitivity_mix(
            cores, profile, source=source, foundry=foundry, mem=mem, **grid
        )
        for label, dm in (("one_stage", one), ("two_stage", two)):
            path = out_dir / f"sensitivity_mix_{label}.csv"
            path.write_text(reports.decision_map_csv(dm), encoding="utf-8")
            written.append(path)
    for path in written:
        print(path)
    return EXIT_OK


def _add_grid_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--lifetime-range",
        nargs=2,
        type=float,
        default=list(dse.DEFAULT_LIFETIME_RANGE),
        metavar=("LO_S", "HI_S"),
        help="lifetime grid span in seconds",
    )
    p.add_argument(
        "--freq-range",
        nargs=2,
        type=float,
        default=list(dse.DEFAULT_FREQ_RANGE),
        metavar=("LO_HZ", "HI_HZ"),
        help="execution frequency grid span in 1/s",
    )
    p.add_argument(
        "--points-per-decade", type=int, default=dse.DEFAULT_POINTS_PER_DECADE
    )


def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cores", type=Path, default=None, help="cores JSON (default: data pack)")
    p.add_argument("--foundry", type=Path, default=None, help="foundry JSON (default: sample)")
    p.add_argument("--memory", type=Path, default=None, help="memory model JSON (default: data pack)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="flexiflow", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a flat binary and emit its execution trace")
    p.add_argument("binary")
    p.add_argument("manifest")
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("profile", help="run a binary and emit a workload profile")
    p.add_argument("binary")
    p.add_argument("manifest")
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p.add_argument("--name", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("sweep", help="carbon-optimal core per lifetime x frequency cell")
    p.add_argument("--workload", required=True, help="profile JSON path or shipped workload name")
    p.add_argument("--source", default="us_grid", help="energy source name or intensity")
    _add_model_args(p)
    _add_grid_args(p)
    p.add_argument("--out-csv", default=None)
    p.add_argument("--out-json", default=None)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("pareto", help="accuracy vs carbon frontier over algorithm variants")
    p.add_argument("--variants", required=True)
    p.add_argument("--scenario", required=True)
    _add_model_args(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_pareto)

    p = sub.add_parser("scale", help="at-scale savings, break-even and car equivalents")
    p.add_argument("--scenario", default=None, help="scale JSON (default: shipped beef scenario)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_scale)

    p = sub.add_parser("sensitivity", help="decision-map ablations")
    p.add_argument("kind", choices=("energy", "mix"))
    p.add_argument("--workload", required=True)
    p.add_argument("--sources", default=None, help="comma-separated source names (energy kind)")
    p.add_argument("--source", default="us_grid", help="energy source (mix kind)")
    _add_model_args(p)
    _add_grid_args(p)
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=_cmd_sensitivity)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except FlexiFlowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
