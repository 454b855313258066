"""Command-line front end.

Subcommands: ``analytic``, ``simulate``, ``scaling``, ``cost``, ``validate``,
``figures``. Every command emits CSV in one fixed schema

    topology,scaling,c,n,lambda_e,lambda,source,value,ci_half_width,seed,alpha,flag

with source in {theory, simulation, bound}; alpha and flag are only used by
cost/figure-7 output (flag also carries PASS/FAIL for validate and "rep" for
per-replication rows). Each file starts with one ``#`` metadata comment
(version, rng, seed, and a hash of the run parameters — no timestamps), so
identical invocations produce byte-identical files.

Exit codes: 0 success, 1 validation failure, 2 usage or config error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from pathlib import Path

from . import __version__
from .core import (
    ConfigError,
    MobilityScaling,
    NetworkConfig,
    ScalingKind,
    Topology,
    load_config,
)
from .analytic import v_exchange_dc, v_symmetric
from .scaling import k_constant, scaling_sweep
from .cost import cost_sweep, optimal_cost, optimal_lambda
from .sim import RNG_NAME, _Z95, monte_carlo, run_replications

COLUMNS = [
    "topology", "scaling", "c", "n", "lambda_e", "lambda",
    "source", "value", "ci_half_width", "seed", "alpha", "flag",
]

_SCALING_ARG = {"linear": ScalingKind.LINEAR, "log": ScalingKind.LOG, "const": ScalingKind.CONST}
_TOPO_ARG = {"dc": Topology.DISCONNECTED, "fc": Topology.FULLY_CONNECTED}

FIGURE_IDS = ("fig2", "fig3", "fig4", "fig5", "fig6", "fig7")
# reference parameter set for the age figures: lam_e/lam ratios with lam = 1, c = 5
FIGURE_RATIOS = (0.5, 1.0, 2.0, 5.0)
FIGURE_C = 5.0
# cost figure: n = 1000, lam_e = 1, c = 1
FIG7_N = 1000
FIG7_LAM_E = 1.0
FIG7_C = 1.0


def _fmt(x) -> str:
    if x is None or x == "":
        return ""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def _row(topology=None, scaling=None, c=None, n=None, lam_e=None, lam=None,
         source=None, value=None, ci=None, seed=None, alpha=None, flag=None) -> dict:
    return {
        "topology": topology, "scaling": scaling, "c": c, "n": n,
        "lambda_e": lam_e, "lambda": lam, "source": source, "value": value,
        "ci_half_width": ci, "seed": seed, "alpha": alpha, "flag": flag,
    }


def _params_hash(params: dict) -> str:
    blob = json.dumps(params, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _emit(rows: list[dict], out: str | None, params: dict, json_out: str | None = None) -> None:
    seed = params.get("seed", "")
    meta = f"# gossip-age={__version__} rng={RNG_NAME} seed={seed} params_sha256={_params_hash(params)}\n"
    lines = [meta, ",".join(COLUMNS) + "\n"]
    lines += [",".join(_fmt(r[c]) for c in COLUMNS) + "\n" for r in rows]
    text = "".join(lines)
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)
    if json_out:
        doc = {"meta": {"version": __version__, "rng": RNG_NAME, "seed": seed,
                        "params_sha256": _params_hash(params)},
               "rows": [{c: r[c] for c in COLUMNS} for r in rows]}
        Path(json_out).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n",
                                  encoding="utf-8", newline="")


def _float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _lambda_grid(text: str) -> list[float]:
    """Comma list of values, or 'lo:hi:count' for a geometric grid."""
    if ":" in text:
        lo_s, hi_s, count_s = text.split(":")
        lo, hi, count = float(lo_s), float(hi_s), int(count_s)
        if not (0 < lo < hi and count >= 2):
            raise ConfigError(f"bad geometric grid spec {text!r}")
        ratio = (hi / lo) ** (1.0 / (count - 1))
        return [lo * ratio**k for k in range(count)]
    return _float_list(text)


def _config_from_args(args) -> NetworkConfig:
    """Config file first when given, then explicit flags override."""
    if args.config:
        cfg = load_config(args.config)
        n = args.n if args.n is not None else cfg.n
        lam_e = args.lam_e if args.lam_e is not None else cfg.lam_e
        lam = args.lam if args.lam is not None else cfg.lam
        topology = _TOPO_ARG[args.topology] if args.topology else cfg.topology
        if args.scaling:
            scaling = MobilityScaling(_SCALING_ARG[args.scaling],
                                      args.c if args.c is not None else cfg.scaling.c)
        elif args.c is not None:
            scaling = MobilityScaling(cfg.scaling.kind, args.c)
        else:
            scaling = cfg.scaling
        mobility = cfg.mobility_enabled and not args.no_mobility
    else:
        if args.n is None:
            raise ConfigError("either --config or --n is required")
        n = args.n
        lam_e = args.lam_e if args.lam_e is not None else 1.0
        lam = args.lam if args.lam is not None else 1.0
        topology = _TOPO_ARG[args.topology or "dc"]
        scaling = MobilityScaling(_SCALING_ARG[args.scaling or "linear"],
                                  args.c if args.c is not None else 1.0)
        mobility = not args.no_mobility
    return NetworkConfig(n=n, lam_e=lam_e, lam=lam, topology=topology,
                         scaling=scaling, mobility_enabled=mobility)


def _add_network_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file; explicit flags override its values")
    p.add_argument("--n", type=int)
    p.add_argument("--lambda-e", dest="lam_e", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--topology", choices=sorted(_TOPO_ARG))
    p.add_argument("--scaling", choices=["linear", "log", "const"])
    p.add_argument("--c", type=float)
    p.add_argument("--no-mobility", action="store_true")


def _add_out_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.add_argument("--json", dest="json_out", help="also write a JSON mirror")


# --- subcommands --------------------------------------------------------------

def _cmd_analytic(args) -> int:
    base = _config_from_args(args)
    ns = args.n_list if args.n_list else [base.n]
    rows = []
    for n in ns:
        cfg = NetworkConfig(n=n, lam_e=base.lam_e, lam=base.lam, topology=base.topology,
                            scaling=base.scaling, mobility_enabled=base.mobility_enabled)
        prof = v_symmetric(cfg)
        sizes = range(1, n + 1) if args.all_sizes else (1,)
        for j in sizes:
            rows.append(_row(
                topology=str(cfg.topology), scaling=str(cfg.scaling.kind), c=cfg.scaling.c,
                n=n, lam_e=cfg.lam_e, lam=cfg.lam, source="theory", value=prof.age(j),
                flag=None if j == 1 else f"size={j}",
            ))
    params = {"command": "analytic", "n_list": ns, "lambda_e": base.lam_e, "lambda": base.lam,
            "topology": str(base.topology), "scaling": str(base.scaling.kind),
            "c": base.scaling.c, "all_sizes": args.all_sizes}
    _emit(rows, args.out, params, args.json_out)
    return 0


def _cmd_simulate(args) -> int:
    cfg = _config_from_args(args)
    results = run_replications(
        cfg, args.horizon, args.reps, args.seed,
        exchange=args.exchange, lambda_m=args.lambda_m,
        warmup=args.warmup, workers=args.workers,
    )
    means = [r.network_avg_age for r in results]
    mean = sum(means) / len(means)
    if len(means) > 1:
        var = sum((m - mean) ** 2 for m in means) / (len(means) - 1)
        half = _Z95 * math.sqrt(var / len(means))
    else:
        half = None
    common = dict(topology=str(cfg.topology), scaling=str(cfg.scaling.kind),
                  c=cfg.scaling.c, n=cfg.n, lam_e=cfg.lam_e, lam=cfg.lam)
    rows = [_row(**common, source="simulation", value=mean, ci=half, seed=args.seed)]
    if args.per_rep:
        rows += [
            _row(**common, source="simulation", value=r.network_avg_age, seed=r.seed, flag="rep")
            for r in results
        ]
    params = {"command": "simulate", "n": cfg.n, "lambda_e": cfg.lam_e, "lambda": cfg.lam,
            "topology": str(cfg.topology), "scaling": str(cfg.scaling.kind), "c": cfg.scaling.c,
            "horizon": args.horizon, "reps": args.reps, "seed": args.seed,
            "warmup": args.warmup, "exchange": args.exchange, "lambda_m": args.lambda_m}
    _emit(rows, args.out, params, args.json_out)
    return 0


def _cmd_scaling(args) -> int:
    scaling = MobilityScaling(_SCALING_ARG[args.scaling], args.c)
    topology = _TOPO_ARG[args.topology]
    lam_e = args.lam_e if args.lam_e is not None else 1.0
    lam = args.lam if args.lam is not None else 1.0
    report = scaling_sweep(scaling, topology, args.n_list, lam_e, lam)
    rows = []
    for n, v1, bound in report.samples:
        common = dict(topology=args.topology, scaling=args.scaling, c=args.c,
                      n=n, lam_e=lam_e, lam=lam)
        rows.append(_row(**common, source="theory", value=v1))
        rows.append(_row(**common, source="bound", value=bound))
    params = {"command": "scaling", "scaling": args.scaling, "c": args.c,
            "topology": args.topology, "n_list": args.n_list,
            "lambda_e": lam_e, "lambda": lam}
    _emit(rows, args.out, params, args.json_out)
    return 0


def _cost_rows(alphas, grid, scaling_name, c, topology_name, n, lam_e) -> list[dict]:
    scaling = MobilityScaling(_SCALING_ARG[scaling_name], c)
    topology = _TOPO_ARG[topology_name]
    sweep = cost_sweep(alphas, grid, scaling, topology, n, lam_e)
    rows = []
    for r in sweep:
        common = dict(topology=topology_name, scaling=scaling_name, c=c,
                      n=n, lam_e=lam_e, alpha=r.alpha)
        rows.append(_row(**common, lam=r.lam, source="bound", value=r.bound_cost,
                         flag="argmin" if r.is_argmin_bound else None))
        rows.append(_row(**common, lam=r.lam, source="theory", value=r.exact_cost,
                         flag="argmin" if r.is_argmin_exact else None))
    seen = set()
    for r in sweep:
        if r.alpha in seen:
            continue
        seen.add(r.alpha)
        k = k_constant(scaling, n, lam_e)
        rows.append(_row(topology=topology_name, scaling=scaling_name, c=c, n=n,
                         lam_e=lam_e, alpha=r.alpha, lam=optimal_lambda(r.alpha, k),
                         source="bound", value=optimal_cost(r.alpha, k), flag="lambda_star"))
    return rows


def _cmd_cost(args) -> int:
    lam_e = args.lam_e if args.lam_e is not None else 1.0
    rows = _cost_rows(args.alphas, args.lambda_grid, args.scaling, args.c,
                      args.topology, args.n, lam_e)
    params = {"command": "cost", "alphas": args.alphas, "lambda_grid": args.lambda_grid,
            "scaling": args.scaling, "c": args.c, "topology": args.topology,
            "n": args.n, "lambda_e": lam_e}
    _emit(rows, args.out, params, args.json_out)
    return 0


def _validate_cells(args):
    """(label, config-or-exchange-params, theory) triples for the default grid."""
    cells = []
    if args.exchange:
        for n in args.n_list or [4, 10]:
            for lam_m in args.lambda_m_list:
                cells.append(("exchange", n, lam_m))
        return cells
    for topo in ("dc", "fc"):
        for sc in ("linear", "log", "const"):
            for n in args.n_list or [4, 16]:
                for ratio in args.ratios:
                    cells.append((topo, sc, n, ratio))
    return cells


def _cmd_validate(args) -> int:
    rows = []
    failures = 0
    cells = _validate_cells(args)
    for cell in cells:
        if args.exchange:
            _, n, lam_m = cell
            cfg = NetworkConfig(n=n, lam_e=1.0, lam=1.0, topology=Topology.DISCONNECTED,
                                scaling=MobilityScaling(ScalingKind.LINEAR))
            theory = v_exchange_dc(n, 1.0, 1.0)
            horizon = args.horizon_scale
            est = monte_carlo(cfg, horizon, args.reps, args.seed,
                              exchange=True, lambda_m=lam_m, workers=args.workers)
            label = f"exchange n={n} lambda_m={lam_m}"
            common = dict(topology="dc", scaling="linear", c=1.0, n=n, lam_e=1.0, lam=1.0)
        else:
            topo, sc, n, ratio = cell
            c = args.c if args.c is not None else FIGURE_C
            cfg = NetworkConfig(n=n, lam_e=ratio, lam=1.0, topology=_TOPO_ARG[topo],
                                scaling=MobilityScaling(_SCALING_ARG[sc], c))
            theory = v_symmetric(cfg).v1
            horizon = args.horizon_scale / ratio
            est = monte_carlo(cfg, horizon, args.reps, args.seed, workers=args.workers)
            label = f"{topo} {sc:6s} n={n:<3d} lam_e/lam={ratio}"
            common = dict(topology=topo, scaling=sc, c=c, n=n, lam_e=ratio, lam=1.0)
        se = est.half_width_95 / _Z95
        z = (est.mean - theory) / se if se > 0 else math.inf * (est.mean - theory or 0)
        ok = abs(z) <= 3.0
        failures += 0 if ok else 1
        print(f"{label}  theory={theory:.6f}  sim={est.mean:.6f} "
              f"+/- {est.half_width_95:.6f}  z={z:+.2f}  {'PASS' if ok else 'FAIL'}")
        rows.append(_row(**common, source="theory", value=theory))
        rows.append(_row(**common, source="simulation", value=est.mean,
                         ci=est.half_width_95, seed=args.seed,
                         flag="PASS" if ok else "FAIL"))
    print(f"{len(cells) - failures}/{len(cells)} cells pass")
    params = {"command": "validate", "exchange": args.exchange,
            "n_list": args.n_list, "ratios": args.ratios,
            "lambda_m_list": args.lambda_m_list, "c": args.c,
            "horizon_scale": args.horizon_scale, "reps": args.reps, "seed": args.seed}
    if args.out or args.json_out:
        _emit(rows, args.out, params, args.json_out)
    return 0 if failures == 0 else 1


_THEORY_NS = [2, 4, 8, 16, 32, 64, 128, 256, 512, 1024]
_SIM_NS = [2, 4, 8, 16, 32]


def _figure_rows(figure: str, args) -> list[dict]:
    if figure == "fig7":
        alphas = args.alphas or [0.1, 0.3, 0.5, 0.7, 0.9]
        grid = args.lambda_grid or _lambda_grid("0.05:10:60")
        rows = []
        for sc in ("linear", "log", "const"):
            rows += _cost_rows(alphas, grid, sc, FIG7_C, "dc", FIG7_N, FIG7_LAM_E)
        return rows
    scaling_name, want_theory, want_sim = {
        "fig2": ("linear", True, True),
        "fig3": ("log", True, False),
        "fig4": ("log", False, True),
        "fig5": ("const", True, False),
        "fig6": ("const", False, True),
    }[figure]
    rows = []
    for topo in ("dc", "fc"):
        for ratio in FIGURE_RATIOS:
            if want_theory:
                for n in args.n_list or _THEORY_NS:
                    cfg = NetworkConfig(n=n, lam_e=ratio, lam=1.0, topology=_TOPO_ARG[topo],
                                        scaling=MobilityScaling(_SCALING_ARG[scaling_name], FIGURE_C))
                    rows.append(_row(topology=topo, scaling=scaling_name, c=FIGURE_C, n=n,
                                     lam_e=ratio, lam=1.0, source="theory",
                                     value=v_symmetric(cfg).v1))
            if want_sim:
                for n in args.n_list or _SIM_NS:
                    cfg = NetworkConfig(n=n, lam_e=ratio, lam=1.0, topology=_TOPO_ARG[topo],
                                        scaling=MobilityScaling(_SCALING_ARG[scaling_name], FIGURE_C))
                    est = monte_carlo(cfg, args.horizon_scale / ratio, args.reps, args.seed,
                                      workers=args.workers)
                    rows.append(_row(topology=topo, scaling=scaling_name, c=FIGURE_C, n=n,
                                     lam_e=ratio, lam=1.0, source="simulation",
                                     value=est.mean, ci=est.half_width_95, seed=args.seed))
    return rows


def _cmd_figures(args) -> int:
    rows = _figure_rows(args.figure, args)
    params = {"command": "figures", "figure": args.figure, "n_list": args.n_list,
            "horizon_scale": args.horizon_scale, "reps": args.reps, "seed": args.seed,
            "alphas": args.alphas, "lambda_grid": args.lambda_grid}
    out = args.out or f"{args.figure}.csv"
    _emit(rows, out, params, args.json_out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gossip-age",
        description="Steady-state version age of gossip networks with contact mobility",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analytic", help="exact single-node age via the symmetric recursion")
    _add_network_flags(p)
    p.add_argument("--n-list", type=_int_list, help="comma list of n to sweep")
    p.add_argument("--all-sizes", action="store_true",
                   help="emit every subset cardinality, not just size 1")
    _add_out_flags(p)
    p.set_defaults(func=_cmd_analytic)

    p = sub.add_parser("simulate", help="Monte Carlo estimate of the network-average age")
    _add_network_flags(p)
    p.add_argument("--horizon", type=float, default=1e5)
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--seed", type=int, default=1234)
    p.add_argument("--warmup", type=float, default=0.0,
                   help="fraction of the horizon to discard")
    p.add_argument("--exchange", action="store_true", help="exchange-mobility baseline (DC only)")
    p.add_argument("--lambda-m", dest="lambda_m", type=float, default=0.0,
                   help="pairwise exchange rate (with --exchange)")
    p.add_argument("--per-rep", action="store_true", help="also emit one row per replication")
    p.add_argument("--workers", type=int, default=1)
    _add_out_flags(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("scaling", help="exact age vs closed-form bound across n")
    p.add_argument("--scaling", choices=["linear", "log", "const"], required=True)
    p.add_argument("--topology", choices=sorted(_TOPO_ARG), required=True)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--n-list", type=_int_list,
                   default=[2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048])
    p.add_argument("--lambda-e", dest="lam_e", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    _add_out_flags(p)
    p.set_defaults(func=_cmd_scaling)

    p = sub.add_parser("cost", help="age/mobility cost trade-off sweep")
    p.add_argument("--scaling", choices=["linear", "log", "const"], required=True)
    p.add_argument("--topology", choices=sorted(_TOPO_ARG), default="dc")
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--n", type=int, default=FIG7_N)
    p.add_argument("--lambda-e", dest="lam_e", type=float)
    p.add_argument("--alphas", type=_float_list, default=[0.1, 0.3, 0.5, 0.7, 0.9])
    p.add_argument("--lambda-grid", type=_lambda_grid, default=_lambda_grid("0.05:10:60"),
                   help="comma list, or lo:hi:count for a geometric grid")
    _add_out_flags(p)
    p.set_defaults(func=_cmd_cost)

    p = sub.add_parser("validate", help="simulation-vs-theory grid with z-score PASS/FAIL")
    p.add_argument("--n-list", type=_int_list, help="default 4,16 (4,10 with --exchange)")
    p.add_argument("--ratios", type=_float_list, default=[0.5, 1.0, 2.0, 5.0])
    p.add_argument("--c", type=float, help=f"default {FIGURE_C}")
    p.add_argument("--horizon-scale", type=float, default=1e6,
                   help="horizon = this / lam_e per cell")
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--seed", type=int, default=1234)
    p.add_argument("--exchange", action="store_true",
                   help="validate the exchange-mobility closed form instead")
    p.add_argument("--lambda-m-list", type=_float_list, default=[0.0, 1.0, 10.0])
    p.add_argument("--workers", type=int, default=1)
    _add_out_flags(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("figures", help="emit the CSV behind one of the predefined figure sweeps")
    p.add_argument("figure", choices=FIGURE_IDS)
    p.add_argument("--n-list", type=_int_list)
    p.add_argument("--horizon-scale", type=float, default=1e5,
                   help="simulated figures: horizon = this / lam_e")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=1234)
    p.add_argument("--alphas", type=_float_list, help="fig7 only")
    p.add_argument("--lambda-grid", type=_lambda_grid, help="fig7 only")
    p.add_argument("--workers", type=int, default=1)
    _add_out_flags(p)
    p.set_defaults(func=_cmd_figures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
