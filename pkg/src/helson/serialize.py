"""JSON, CSV and SVG output for construction results and measures.

JSON keys come in a fixed order so that identical runs produce identical
files. Reals are written in Python's shortest round-trip form, so
reloading a file gives bit-identical floats.
"""

from __future__ import annotations

import contextlib
import csv
import io
import json
import math
import sys

import numpy as np

from .construction import (
    ConstructionParams,
    ConstructionResult,
    Level,
    ScheduledApproximant,
    enumerate_sign_functions,
)
from .gauge import parse_gauge
from .measures import AtomicMeasure


@contextlib.contextmanager
def _big_ints():
    # count-only levels carry integers with thousands of digits
    setter = getattr(sys, "set_int_max_str_digits", None)
    if setter is None:
        yield
        return
    old = sys.get_int_max_str_digits()
    setter(0)
    try:
        yield
    finally:
        setter(old)


def params_to_dict(params: ConstructionParams) -> dict:
    return {
        "d": params.d,
        "side": params.side,
        "corners": [list(c) for c in params.corners],
        "epsilon": params.epsilon,
        "depth": params.depth,
        "function_cap": params.function_cap,
        "frequency_budget": params.frequency_budget,
        "max_cubes": params.max_cubes,
        "gauge": params.gauge.to_spec() if params.gauge is not None else None,
        "seed": params.seed,
    }


def params_from_dict(data: dict) -> ConstructionParams:
    d = int(data["d"])
    gauge = data.get("gauge")
    return ConstructionParams(
        d=d,
        side=float(data["side"]),
        corners=tuple(tuple(float(x) for x in c) for c in data["corners"]),
        epsilon=float(data["epsilon"]),
        depth=int(data["depth"]),
        function_cap=int(data.get("function_cap", 64)),
        frequency_budget=int(data.get("frequency_budget", 200)),
        max_cubes=int(data.get("max_cubes", 250_000)),
        gauge=parse_gauge(gauge, d) if gauge else None,
        seed=int(data.get("seed", 0)),
    )


def result_to_dict(result: ConstructionResult) -> dict:
    levels = []
    for lv in result.levels:
        entry = {
            "j": lv.j,
            "side": lv.side,
            "cubes": lv.corners.tolist() if lv.explicit else [],
            "frequency": lv.frequency,
            "count": lv.count,
            "log_side": lv.log_side,
            "checkpoint": lv.checkpoint,
            "explicit": lv.explicit,
        }
        if lv.lattice is not None:
            entry["lattice"] = lv.lattice.tolist()
        if lv.parents is not None:
            entry["parents"] = lv.parents.tolist()
        levels.append(entry)
    return {
        "dimension": result.d,
        "epsilon": result.params.epsilon,
        "c": result.c,
        "frequencies": result.frequencies,
        "levels": levels,
        "schedule": [
            {"j": e.level, "s": e.coordinate, "function_id": e.function_id, "checkpoint": e.checkpoint_level}
            for e in result.schedule
        ],
        "constants": {"c3": result.c3, "c4": result.c4},
        "flags": {"round_truncated": result.round_truncated},
        "params": params_to_dict(result.params),
    }


def result_from_dict(data: dict) -> ConstructionResult:
    params = params_from_dict(data["params"])
    d = params.d
    levels = []
    for item in data["levels"]:
        explicit = item["explicit"]
        lattice = item.get("lattice")
        parents = item.get("parents")
        levels.append(
            Level(
                j=item["j"],
                side=float(item["side"]),
                log_side=float(item["log_side"]),
                count=int(item["count"]),
                frequency=item["frequency"],
                checkpoint=bool(item["checkpoint"]),
                corners=np.asarray(item["cubes"], dtype=float).reshape(-1, d) if explicit else None,
                lattice=np.asarray(lattice, dtype=np.int64).reshape(-1, d) if lattice is not None else None,
                parents=np.asarray(parents, dtype=np.int64) if parents is not None else None,
            )
        )
    freqs = {lv.j: lv.frequency for lv in levels}
    schedule = [
        ScheduledApproximant(e["j"], e["s"], e["function_id"], freqs[e["j"]], e["checkpoint"])
        for e in data["schedule"]
    ]
    families = {}
    for cp in sorted({e.checkpoint_level for e in schedule}):
        families[cp] = enumerate_sign_functions(levels[cp], params.function_cap, params.seed)
    return ConstructionResult(
        params,
        levels,
        schedule,
        families,
        float(data["c"]),
        float(data["constants"]["c3"]),
        float(data["constants"]["c4"]),
        bool(data["flags"]["round_truncated"]),
    )


def dumps_result(result: ConstructionResult) -> str:
    with _big_ints():
        return json.dumps(result_to_dict(result), separators=(",", ":"))


def loads_result(text: str) -> ConstructionResult:
    with _big_ints():
        return result_from_dict(json.loads(text))


def save_result(result: ConstructionResult, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_result(result))


def load_result(path) -> ConstructionResult:
    with open(path) as fh:
        return loads_result(fh.read())


# ---------------------------------------------------------------------------
# CSV


def atoms_csv(mu: AtomicMeasure) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"x_{s + 1}" for s in range(mu.d)] + ["weight_re", "weight_im"])
    for pt, w in zip(mu.points, mu.weights):
        writer.writerow([repr(float(x)) for x in pt] + [repr(float(w.real)), repr(float(w.imag))])
    return buf.getvalue()


def cubes_csv(result: ConstructionResult, levels=None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    d = result.d
    writer.writerow(["level", "id", "parent"] + [f"x_{s + 1}" for s in range(d)] + ["side"])
    for lv in result.levels:
        if levels is not None and lv.j not in levels:
            continue
        if not lv.explicit:
            continue
        parents = lv.parents if lv.parents is not None else [""] * lv.count
        for i, (row, par) in enumerate(zip(lv.corners, parents)):
            writer.writerow([lv.j, i, par if par == "" else int(par)] + [repr(float(x)) for x in row] + [repr(lv.side)])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# SVG

_STROKES = ["#1b4f72", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e", "#2e4053"]


def svg_document(result: ConstructionResult, levels=None, size: int = 800) -> str:
    """Nested cubes of a planar construction on the viewport ``[0, 2 pi]^2``.

    One ``<g>`` per level, one ``<rect>`` per cube; the deepest rendered
    level is filled.
    """
    if result.d != 2:
        raise ValueError("SVG rendering needs d = 2")
    chosen = [lv for lv in result.levels if lv.explicit and (levels is None or lv.j in levels)]
    if not chosen:
        raise ValueError("no explicit level selected for rendering")
    deepest = chosen[-1].j
    span = 2 * math.pi
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {span!r} {span!r}">',
        # second coordinate points up
        f'<g transform="matrix(1 0 0 -1 0 {span!r})">',
    ]
    for lv in chosen:
        color = _STROKES[lv.j % len(_STROKES)]
        fill = color if lv.j == deepest else "none"
        out.append(
            f'<g id="level-{lv.j}" stroke="{color}" fill="{fill}" '
            f'stroke-width="1" vector-effect="non-scaling-stroke">'
        )
        s = repr(float(lv.side))
        for x, y in lv.corners:
            out.append(f'<rect x="{float(x)!r}" y="{float(y)!r}" width="{s}" height="{s}"/>')
        out.append("</g>")
    out += ["</g>", "</svg>", ""]
    return "\n".join(out)
