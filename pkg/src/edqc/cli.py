"""Command-line interface.

Results go to stdout (or ``--output``); progress and errors go to stderr.
Exit codes: 0 ok, 1 I/O or parse failure, 2 usage error, 3 size guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from itertools import product

from . import generators
from .ablation import Variant, ablation_report
from .analysis import (STEPS_GRID, THETA_GRID, UndefinedCorrelationError,
                       energy_density_correlation, parameter_sweep)
from .density import ExactGamma, count_internal_edges, density_from_counts
from .diffusion import DiffusionParams
from .driver import RunConfig, run_many
from .graph import GraphError, read_graph, write_edge_list
from .oracle import SizeGuardError, max_quasi_clique_bruteforce

log = logging.getLogger("edqc")

EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

FIND_COLUMNS = ["command", "dataset", "gamma", "steps", "theta", "seed", "size",
                "internal_edges", "density", "elapsed", "sources_processed", "source",
                "vertices"]


class InputError(Exception):
    pass


def _gamma(text: str) -> ExactGamma:
    try:
        return ExactGamma.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _theta(text: str) -> float:
    v = float(text)
    if not 0.0 <= v < 1.0:
        raise argparse.ArgumentTypeError("theta must lie in [0, 1)")
    return v


def _csv_list(kind):
    def parse(text):
        try:
            return tuple(kind(t) for t in text.split(",") if t.strip())
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise argparse.ArgumentTypeError(f"bad list {text!r}: {exc}") from None
    return parse


def _load(source: tuple[str, str]):
    kind, value = source
    if kind == "gen":
        return generators.from_spec(value)
    try:
        return read_graph(value)
    except OSError as exc:
        raise InputError(f"cannot read {value}: {exc.strerror or exc}") from None
    except (GraphError, UnicodeDecodeError) as exc:
        raise InputError(f"{value}: {exc}") from None


def _dataset_name(source) -> str:
    kind, value = source
    return f"gen:{value}" if kind == "gen" else value


def _sources(args, multi=False):
    picked = [("input", p) for p in (args.input or [])] + [("gen", g) for g in (args.gen or [])]
    if not picked:
        raise argparse.ArgumentTypeError("one of --input or --gen is required")
    if not multi and len(picked) > 1:
        raise argparse.ArgumentTypeError("give exactly one of --input or --gen")
    return picked


def _add_graph_args(p, multi=False):
    action = "append" if multi else "store"
    g = p.add_argument_group("graph source")
    g.add_argument("--input", action=action, metavar="PATH",
                   help="edge list or MatrixMarket file")
    g.add_argument("--gen", action=action, metavar="SPEC",
                   help="generator: kN, k4me, pathN, starN, er:n:p:seed, planted:n:p:k:seed")
    if not multi:
        # normalize to lists so _sources can treat both modes alike
        p.set_defaults(_single=True)


def _add_run_args(p, gamma_required=True, multi_gamma=False):
    if multi_gamma:
        p.add_argument("--gamma", type=_gamma, action="append", required=True,
                       help="density threshold (repeatable)")
    else:
        p.add_argument("--gamma", type=_gamma, required=gamma_required,
                       help="density threshold in (0, 1], at most 6 decimals")
    p.add_argument("--steps", type=_positive_int, default=3, help="diffusion rounds T")
    p.add_argument("--theta", type=_theta, default=0.001, help="activation threshold")
    p.add_argument("--seed", type=int, default=1, help="base seed")
    p.add_argument("--runs", type=_positive_int, default=1, help="runs with consecutive seeds")
    p.add_argument("--timeout", type=_positive_float, default=60.0,
                   help="wall-clock budget per run, seconds")
    p.add_argument("--workers", type=_positive_int, default=1)


def _add_output_args(p):
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--output", default="-", metavar="PATH", help="output file, '-' for stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edqc", description="Energy-diffusion quasi-clique discovery")
    parser.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("find", help="search for a large gamma-quasi-clique")
    _add_graph_args(p)
    _add_run_args(p)
    _add_output_args(p)

    p = sub.add_parser("oracle", help="exact maximum quasi-clique by brute force (n <= 24)")
    _add_graph_args(p)
    p.add_argument("--gamma", type=_gamma, required=True)
    _add_output_args(p)

    p = sub.add_parser("ablate", help="compare the full search against ablated variants")
    _add_graph_args(p, multi=True)
    _add_run_args(p, multi_gamma=True)
    p.add_argument("--variants", type=_csv_list(Variant), default=tuple(Variant),
                   help="comma-separated subset of: " + ", ".join(v.value for v in Variant))
    _add_output_args(p)

    p = sub.add_parser("correlate", help="density vs retained energy over random k-subsets")
    _add_graph_args(p)
    _add_run_args(p)
    p.add_argument("--count", type=_positive_int, default=1000, help="number of subsets")
    p.add_argument("--k", type=_positive_int, help="subset size (default: size found by search)")
    p.add_argument("--source", type=int, help="diffusion source label (default: from search)")
    _add_output_args(p)

    p = sub.add_parser("sweep", help="mean size over a (steps, theta) grid")
    _add_graph_args(p)
    _add_run_args(p)
    p.add_argument("--steps-grid", type=_csv_list(_positive_int), default=STEPS_GRID)
    p.add_argument("--theta-grid", type=_csv_list(_theta), default=THETA_GRID)
    _add_output_args(p)

    p = sub.add_parser("stats", help="n, m, max degree, density")
    _add_graph_args(p)
    _add_output_args(p)

    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    p.add_argument("spec", help="generator spec, as for --gen")
    p.add_argument("--output", default="-", metavar="PATH")
    return parser


def _emit(args, text: str) -> None:
    if args.output == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(args.output, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {args.output}: {exc.strerror or exc}") from None


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _labels(G, verts):
    return sorted(int(G.labels[v]) for v in verts)


def _config(args, gamma=None) -> RunConfig:
    return RunConfig(gamma or args.gamma, DiffusionParams(args.steps, args.theta),
                     args.timeout, args.seed, args.workers)


def _run_record(G, r) -> dict:
    return {
        "seed": r.seed,
        "size": r.size,
        "internal_edges": r.internal_edges,
        "density": float(r.density),
        "density_exact": f"{r.density.numerator}/{r.density.denominator}",
        "vertices": _labels(G, r.vertices),
        "source": None if r.source is None else int(G.labels[r.source]),
        "elapsed": r.elapsed,
        "sources_processed": r.sources_processed,
    }


def cmd_find(args) -> int:
    src = _sources(args)[0]
    G = _load(src)
    log.info("loaded %s: n=%d m=%d", _dataset_name(src), G.n, G.m)
    summary = run_many(G, _config(args), args.runs)
    runs = [_run_record(G, r) for r in summary.results]
    if args.format == "json":
        _emit(args, _json_text({
            "command": "find",
            "argv": args.argv,
            "dataset": _dataset_name(src),
            "gamma": str(args.gamma),
            "steps": args.steps,
            "theta": args.theta,
            "timeout": args.timeout,
            "workers": args.workers,
            "seeds": [r["seed"] for r in runs],
            "mean_size": summary.mean,
            "stddev_size": summary.stddev,
            "runs": runs,
        }))
    else:
        rows = [["find", _dataset_name(src), str(args.gamma), args.steps, args.theta, r["seed"],
                 r["size"], r["internal_edges"], r["density"], r["elapsed"],
                 r["sources_processed"], "" if r["source"] is None else r["source"],
                 " ".join(map(str, r["vertices"]))] for r in runs]
        _emit(args, _csv_text(FIND_COLUMNS, rows))
    return EXIT_OK


def cmd_oracle(args) -> int:
    src = _sources(args)[0]
    G = _load(src)
    S = max_quasi_clique_bruteforce(G, args.gamma)
    e = count_internal_edges(G, S)
    d = density_from_counts(e, len(S))
    rec = {"command": "oracle", "dataset": _dataset_name(src), "gamma": str(args.gamma),
           "size": len(S), "internal_edges": e, "density": float(d),
           "vertices": _labels(G, S)}
    if args.format == "json":
        _emit(args, _json_text(rec))
    else:
        rec["vertices"] = " ".join(map(str, rec["vertices"]))
        _emit(args, _csv_text(list(rec), [list(rec.values())]))
    return EXIT_OK


def cmd_ablate(args) -> int:
    sources = _sources(args, multi=True)
    graphs = [(_dataset_name(s), _load(s)) for s in sources]
    suite = [(f"{name}@{g}", G, g) for (name, G), g in product(graphs, args.gamma)]
    report = ablation_report(suite, _config(args, args.gamma[0]), args.runs, args.variants)
    if args.format == "json":
        _emit(args, _json_text({
            "command": "ablate", "argv": args.argv, "settings": report.settings,
            "runs": args.runs, "seed": args.seed,
            "variants": [{"variant": v.value, "best": report.best[v], "worst": report.worst[v],
                          "mean_sizes": [float(x) for x in report.means[v]]}
                         for v in report.variants],
        }))
    else:
        _emit(args, _csv_text(["variant", "best", "worst"] + report.settings, report.rows()))
    return EXIT_OK


def cmd_correlate(args) -> int:
    src = _sources(args)[0]
    G = _load(src)
    source = None
    if args.source is not None:
        try:
            source = G.id_of(args.source)
        except KeyError:
            raise argparse.ArgumentTypeError(f"--source {args.source} is not a vertex") from None
    rep = energy_density_correlation(G, args.count, DiffusionParams(args.steps, args.theta),
                                     args.seed, args.gamma, args.k, source, args.timeout)
    log.info("pearson r = %.4f over %d subsets of size %d", rep.pearson_r, args.count, rep.k)
    if args.format == "json":
        out = {"command": "correlate", "dataset": _dataset_name(src), "gamma": str(args.gamma)}
        out.update(rep.to_dict(G.labels))
        _emit(args, _json_text(out))
    else:
        buf = io.StringIO()
        rep.write_csv(buf)
        _emit(args, buf.getvalue())
    return EXIT_OK


def cmd_sweep(args) -> int:
    src = _sources(args)[0]
    G = _load(src)
    table = parameter_sweep(G, args.gamma, args.steps_grid, args.theta_grid, args.runs,
                            args.seed, args.timeout, args.workers)
    if args.format == "json":
        _emit(args, _json_text({"command": "sweep", "dataset": _dataset_name(src),
                                "gamma": str(args.gamma), "runs": args.runs,
                                "steps": list(table.steps), "thetas": list(table.thetas),
                                "mean_sizes": table.means}))
    else:
        buf = io.StringIO()
        table.write_csv(buf)
        _emit(args, buf.getvalue())
    return EXIT_OK


def cmd_stats(args) -> int:
    src = _sources(args)[0]
    G = _load(src)
    rec = {"dataset": _dataset_name(src), "n": G.n, "m": G.m, "max_degree": G.max_degree,
           "density": G.density()}
    if args.format == "json":
        _emit(args, _json_text(rec))
    else:
        _emit(args, _csv_text(list(rec), [list(rec.values())]))
    return EXIT_OK


def cmd_gen(args) -> int:
    G = generators.from_spec(args.spec)
    buf = io.StringIO()
    write_edge_list(G, buf)
    _emit(args, buf.getvalue())
    return EXIT_OK


COMMANDS = {"find": cmd_find, "oracle": cmd_oracle, "ablate": cmd_ablate,
            "correlate": cmd_correlate, "sweep": cmd_sweep, "stats": cmd_stats,
            "gen": cmd_gen}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = argv
    if getattr(args, "_single", False):
        args.input = [args.input] if args.input else None
        args.gen = [args.gen] if args.gen else None
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except argparse.ArgumentTypeError as exc:
        parser.print_usage(sys.stderr)
        print(f"edqc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"edqc {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    except SizeGuardError as exc:
        print(f"edqc {args.command}: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except UndefinedCorrelationError as exc:
        print(f"edqc {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # generator specs and out-of-range parameters
        print(f"edqc {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
