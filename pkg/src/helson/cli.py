"""Command-line entry point: ``helson <subcommand> [options]``.

Exit codes: 0 success (or every check passed), 1 a verification failed,
2 bad configuration or usage.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from dataclasses import dataclass

from . import serialize
from .construction import (
    ConstructionError,
    ConstructionParams,
    check_level,
    run_construction,
    validate_params,
    verify_approximation,
)
from .counterexample import ProductMeasureSpec, build_unitary_measure, exact_sup_grid, growth_demo
from .gauge import divergence_check, parse_gauge
from .hausdorff import (
    box_dimension_estimate,
    canonical_cover_sums,
    mass_bound_sample,
    verify_count_bound,
    verify_gauge_bound,
)
from .measures import (
    FourierBox,
    UndefinedRatioError,
    anchor_bound,
    anchor_check,
    helson_ratio,
    natural_measure,
    sign_pattern_measure,
    sup_fourier_box,
    total_variation,
)


# the closed-form sup equals eps at a cube's own level; allow for rounding
APPROX_RTOL = 1e-12


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    dimension: int = 2
    side: float = 1.0
    corners: list | None = None
    n0: int = 2
    epsilon: float = 1.0 - math.sqrt(2.0) / 2.0
    depth: int = 3
    function_cap: int = 64
    frequency_budget: int = 200
    max_cubes: int = 250_000
    gauge: str | None = "default"
    seed: int = 0
    K: int = 8
    trials: int = 1000
    out: str | None = None
    format: str = "json"

    def corner_list(self):
        if self.corners is not None:
            return tuple(tuple(float(x) for x in c) for c in self.corners)
        # along the diagonal, three sides apart
        return tuple((1.0 + 3.0 * i * self.side,) * self.dimension for i in range(self.n0))

    def params(self) -> ConstructionParams:
        gauge = self.gauge
        if gauge == "default":
            gauge = f"power:{self.dimension / 2!r}"
        try:
            g = parse_gauge(gauge, self.dimension) if gauge else None
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        params = ConstructionParams(
            d=self.dimension,
            side=self.side,
            corners=self.corner_list(),
            epsilon=self.epsilon,
            depth=self.depth,
            function_cap=self.function_cap,
            frequency_budget=self.frequency_budget,
            max_cubes=self.max_cubes,
            gauge=g,
            seed=self.seed,
        )
        problem = validate_params(params)
        if problem:
            raise ConfigError(problem)
        return params


def load_config(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        known = {f.name for f in dataclasses.fields(RunConfig)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = dataclasses.replace(cfg, **data)
    for name in ("dimension", "depth", "epsilon", "gauge", "K", "trials", "seed", "out", "format"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    return cfg


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _result(args, cfg: RunConfig):
    if getattr(args, "result", None):
        try:
            return serialize.load_result(args.result)
        except (OSError, KeyError, ValueError) as exc:
            raise ConfigError(f"cannot load result {args.result}: {exc}") from exc
    return run_construction(cfg.params())


# ---------------------------------------------------------------------------
# subcommands


def cmd_build(args, cfg):
    result = run_construction(cfg.params())
    _emit(serialize.dumps_result(result), cfg.out)
    return 0


def verification_report(result, trials: int = 1000, seed: int = 0) -> list[dict]:
    """Every finite-depth certificate of the construction, one row per check."""
    rows = []
    eps = result.params.epsilon
    for j in range(result.depth + 1):
        chk = check_level(result, j)
        rows.append({"check": f"level[{j}] invariants", "ok": chk.ok, "margin": None})
    deepest = result.deepest_explicit
    for e in result.schedule:
        if e.level > deepest or result.families[e.checkpoint_level].signs is None:
            continue
        err = verify_approximation(result, e)
        rows.append({"check": f"approximation j={e.level} s={e.coordinate} f={e.function_id}",
                     "ok": err <= eps + APPROX_RTOL, "margin": eps - err})
        bound = anchor_bound(result)
        for J in range(e.level, deepest + 1):
            val = anchor_check(result, e, J)
            rows.append({"check": f"anchor j={e.level} s={e.coordinate} J={J}",
                         "ok": val >= bound - 1e-9, "margin": val - bound})
    for m in verify_count_bound(result):
        rows.append({"check": f"count bound j={m.j}", "ok": m.ok, "margin": min(m.telescoped, m.per_step)})
    if result.params.gauge is not None:
        for m in verify_gauge_bound(result, result.params.gauge):
            rows.append({"check": f"gauge bound j={m.j}", "ok": m.ok, "margin": m.margin})
    if deepest >= 1:
        rep = mass_bound_sample(result, deepest, trials, seed)
        rows.append({"check": f"mass bound J={deepest} ({trials} balls)", "ok": rep.violations == 0,
                     "margin": -float(rep.violations)})
    return rows


def cmd_verify(args, cfg):
    result = _result(args, cfg)
    rows = verification_report(result, cfg.trials, cfg.seed)
    if cfg.format == "json":
        text = json.dumps(rows, indent=1)
    else:
        text = "\n".join(
            f"{'PASS' if r['ok'] else 'FAIL'}  {r['check']}"
            + ("" if r["margin"] is None else f"  margin={r['margin']:.6g}")
            for r in rows
        )
    _emit(text, cfg.out)
    return 0 if all(r["ok"] for r in rows) else 1


def _named_measure(name: str, result_fn):
    kind, *rest = name.split(":")
    try:
        if kind == "product":
            return build_unitary_measure(ProductMeasureSpec(int(rest[0])))
        result = result_fn()
        if kind == "natural":
            return natural_measure(result, int(rest[0]))
        if kind == "sign":
            J, idx = int(rest[0]), int(rest[1])
            entry = result.schedule[idx]
            return sign_pattern_measure(result, result.pattern_for(entry), J)
    except (IndexError, ValueError) as exc:
        raise ConfigError(f"bad measure {name!r}: {exc}") from exc
    raise ConfigError(f"unknown measure {name!r}; use natural:J, sign:J:ENTRY or product:N")


def cmd_fourier(args, cfg):
    mu = _named_measure(args.measure, lambda: _result(args, cfg))
    box = FourierBox(cfg.K)
    sup, argmax = sup_fourier_box(mu, box)
    report = {"measure": args.measure, "atoms": len(mu.weights), "K": cfg.K,
              "total_variation": total_variation(mu), "sup": sup, "argmax": list(argmax)}
    try:
        report["helson_ratio_upper"] = helson_ratio(mu, box)
    except UndefinedRatioError as exc:
        report["helson_ratio_upper"] = None
        report["note"] = str(exc)
    if args.measure.startswith("product:"):
        report["exact_sup"] = exact_sup_grid(ProductMeasureSpec(int(args.measure.split(":")[1])))
    _emit(json.dumps(report, indent=1), cfg.out)
    return 0


def cmd_hausdorff(args, cfg):
    result = _result(args, cfg)
    gauge = result.params.gauge
    if cfg.gauge not in (None, "default"):
        gauge = parse_gauge(cfg.gauge, result.d)
    with serialize._big_ints():
        report = {"counts": [str(n) for n in result.counts],
                  "frequencies": [str(p) for p in result.frequencies]}
        slope, resid = box_dimension_estimate(result)
        report["box_dimension_slope"] = slope
        report["box_dimension_residuals"] = resid.tolist()
        report["count_bound"] = [dataclasses.asdict(m) for m in verify_count_bound(result)]
        if gauge is not None:
            div = divergence_check(gauge)
            report["gauge"] = gauge.to_spec()
            report["diverging"] = div.diverging
            report["gauge_bound"] = [dict(dataclasses.asdict(m), ok=m.ok) for m in verify_gauge_bound(result, gauge)]
            report["canonical_cover_sums"] = canonical_cover_sums(result, gauge)
        _emit(json.dumps(report, indent=1), cfg.out)
    return 0


def cmd_product_demo(args, cfg):
    try:
        Ns = [int(x) for x in args.N.split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError(f"--N expects a comma-separated list of integers: {exc}") from exc
    rows = growth_demo(Ns)
    if cfg.format == "json":
        text = json.dumps([dataclasses.asdict(r) for r in rows], indent=1)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "total_variation", "sup", "ratio", "floor"])
        for r in rows:
            w.writerow([r.N, repr(r.total_variation), repr(r.sup), repr(r.ratio), repr(r.floor)])
        text = buf.getvalue()
    _emit(text, cfg.out)
    return 0


def cmd_plot(args, cfg):
    result = _result(args, cfg)
    if result.d != 2:
        raise ConfigError("plot needs a two-dimensional construction")
    _emit(serialize.svg_document(result), cfg.out)
    return 0


def cmd_export(args, cfg):
    result = _result(args, cfg)
    if args.what == "cubes":
        levels = None if args.level is None else {args.level}
        text = serialize.cubes_csv(result, levels)
    else:
        J = result.deepest_explicit if args.level is None else args.level
        text = serialize.atoms_csv(natural_measure(result, J))
    _emit(text, cfg.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--dimension", type=int)
    common.add_argument("--depth", type=int)
    common.add_argument("--epsilon", type=float)
    common.add_argument("--gauge", help="power:<alpha> | powerlog | table:t,h;t,h;...")
    common.add_argument("--K", type=int, help="Fourier box radius")
    common.add_argument("--trials", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--out")
    common.add_argument("--format", choices=["json", "csv", "svg", "text"])
    common.add_argument("--result", help="previously built result JSON instead of a fresh build")

    parser = argparse.ArgumentParser(prog="helson", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="run the construction, write JSON")
    sub.add_parser("verify", parents=[common], help="check every inequality; exit 1 on failure")
    p = sub.add_parser("fourier", parents=[common], help="Fourier sup and Helson ratio of a measure")
    p.add_argument("--measure", default="natural:1", help="natural:J | sign:J:ENTRY | product:N")
    sub.add_parser("hausdorff", parents=[common], help="gauge diagnostics and dimension estimate")
    p = sub.add_parser("product-demo", parents=[common], help="Helson ratio growth on product grids")
    p.add_argument("--N", default="1,2,4,8", help="comma-separated grid sizes")
    sub.add_parser("plot", parents=[common], help="SVG of a planar construction")
    p = sub.add_parser("export", parents=[common], help="CSV of cubes or atoms")
    p.add_argument("--what", choices=["cubes", "atoms"], default="cubes")
    p.add_argument("--level", type=int)
    return parser


COMMANDS = {
    "build": cmd_build,
    "verify": cmd_verify,
    "fourier": cmd_fourier,
    "hausdorff": cmd_hausdorff,
    "product-demo": cmd_product_demo,
    "plot": cmd_plot,
    "export": cmd_export,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
        if args.format is None and args.command == "product-demo":
            cfg.format = "csv" if not args.config else cfg.format
        if args.format is None and args.command == "verify":
            cfg.format = "text"
        return COMMANDS[args.command](args, cfg)
    except (ConfigError, ConstructionError, ValueError) as exc:
        print(f"helson: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
