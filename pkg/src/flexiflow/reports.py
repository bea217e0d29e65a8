"""Deterministic report emission.

JSON uses sorted keys and shortest round-trip floats, so emitted files
reload and re-emit byte-identically. CSV uses '.' decimals, ',' field
separators, LF line endings and 6 significant digits.
"""

from __future__ import annotations

import json

from .dse import AlgorithmVariant, DecisionMap
from .scale import DEFAULT_EFFECTIVENESS_RATES, ScaleScenario, break_even, car_equivalent, net_savings

CSV_SIG_DIGITS = 6


def sig(x: float) -> str:
    """Render a number with 6 significant digits."""
    return f"{x:.{CSV_SIG_DIGITS}g}"


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def render_decision_map_csv(lifetimes, frequencies, cells) -> str:
    lines = ["lifetime_s," + ",".join(sig(f) for f in frequencies)]
    for lifetime, row in zip(lifetimes, cells):
        lines.append(sig(lifetime) + "," + ",".join(row))
    return "\n".join(lines) + "\n"


def decision_map_csv(dm: DecisionMap) -> str:
    """Rows are lifetimes, columns are frequencies, cells name the optimal core."""
    cells = [
        [dm.optimal_name(i, j) for j in range(len(dm.frequencies_hz))]
        for i in range(len(dm.lifetimes_s))
    ]
    return render_decision_map_csv(dm.lifetimes_s, dm.frequencies_hz, cells)


def parse_decision_map_csv(text: str):
    """Inverse of render_decision_map_csv; parsed maps re-emit byte-identically."""
    lines = text.strip("\n").split("\n")
    frequencies = [float(x) for x in lines[0].split(",")[1:]]
    lifetimes, cells = [], []
    for line in lines[1:]:
        parts = line.split(",")
        lifetimes.append(float(parts[0]))
        cells.append(parts[1:])
    return lifetimes, frequencies, cells


def pareto_csv(variants: list[AlgorithmVariant], frontier: list[AlgorithmVariant]) -> str:
    on_frontier = {v.name for v in frontier}
    lines = ["variant,accuracy,optimal_core,total_kg,on_frontier"]
    for v in sorted(variants, key=lambda v: (v.total_kg, v.name)):
        lines.append(
            ",".join(
                [
                    v.name,
                    sig(v.accuracy),
                    v.optimal_core,
                    sig(v.total_kg),
                    "true" if v.name in on_frontier else "false",
                ]
            )
        )
    return "\n".join(lines) + "\n"


def scale_csv(systems: list[ScaleScenario], rates=DEFAULT_EFFECTIVENESS_RATES) -> str:
    """One row per system configuration: savings and car equivalents per rate, then break-even."""
    header = ["system", "device_footprint_kg"]
    header += [f"savings_kg_p{rate:g}" for rate in rates]
    header += [f"cars_p{rate:g}" for rate in rates]
    header.append("break_even_pct")
    lines = [",".join(header)]
    for s in systems:
        savings = [net_savings(rate, s) for rate in rates]
        row = [s.name, sig(s.device_footprint_kg)]
        row += [sig(v) for v in savings]
        row += [sig(car_equivalent(v, s)) for v in savings]
        p_star = break_even(s)
        row.append(sig(p_star * 100.0) if p_star <= 1.0 else "never breaks even")
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
