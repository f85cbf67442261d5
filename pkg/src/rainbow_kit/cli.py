"""Command-line front end: ``rainbow-kit <subcommand> ...``.

Exit codes: 0 success, 1 a verifier check or bound failed, 2 usage or IO error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import generators
from .colourers import ALGORITHMS, run_algorithm
from .colouring import EdgeColouring, SearchBudget, rc_exact, verify_rainbow_connected
from .dominating import GrowthParams, grow_2l_step_dominating, grow_girth_dominating
from .ears import DEFAULT_EAR_CAP
from .experiment import (ExperimentConfig, all_ok, export_dot, reports_csv, reports_json,
                         run_experiment)
from .graph import Graph, load_graph
from .metrics import compute_metrics, vertex_connectivity

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _value(text: str):
    if "," in text:
        return [_value(x) for x in text.split(",") if x]
    for kind in (int, float):
        try:
            return kind(text)
        except ValueError:
            pass
    return text


def parse_params(items) -> dict:
    out = {}
    for item in items:
        if "=" not in item:
            raise UsageError(f"parameter {item!r} is not key=value")
        k, v = item.split("=", 1)
        out[k] = _value(v)
    if "lengths" in out and not isinstance(out["lengths"], list):
        out["lengths"] = [out["lengths"]]
    return out


def read_graph(src: str, seed: int | None = None) -> Graph:
    """File path, ``-`` for stdin, or an inline ``family:key=value:key=value`` spec."""
    if src == "-":
        text = sys.stdin.read()
        return Graph.from_json(text) if text.lstrip().startswith("{") else Graph.from_text(text)
    if os.path.exists(src):
        return load_graph(src)
    if ":" in src:
        family, _, rest = src.partition(":")
        params = parse_params(x for x in rest.split(":") if x)
        return generators.gen_family(generators.FamilySpec(family, params), seed)
    raise UsageError(f"no such graph file: {src}")


def read_colouring(path: str) -> EdgeColouring:
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, list):
        return EdgeColouring.from_list(data)
    if "colouring" in data:
        data = data["colouring"]
    return EdgeColouring.from_dict(data)


def emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    spec = generators.FamilySpec(args.family, parse_params(args.param))
    g = generators.gen_family(spec, args.seed)
    emit(args, export_dot(g) if args.format == "dot" else g.to_json())
    return EXIT_OK


def cmd_metrics(args) -> int:
    g = read_graph(args.graph, args.seed)
    m = compute_metrics(g).as_dict()
    m["n"], m["m"] = g.n, g.m
    emit(args, json.dumps(m, indent=2, default=str))
    return EXIT_OK


def cmd_colour(args) -> int:
    g = read_graph(args.graph, args.seed)
    rep = run_algorithm(args.algorithm, g, kappa=args.kappa, l=args.l, seed=args.seed,
                        instance=args.graph, cap=args.cap_depth)
    col = rep.colouring
    if args.format == "dot":
        emit(args, export_dot(g, col))
    elif args.format == "csv":
        emit(args, reports_csv([rep]))
    else:
        emit(args, json.dumps({"report": rep.row(),
                               "colouring": None if col is None else col.to_dict()}, indent=2))
    if rep.error:
        print(f"error: {rep.error}", file=sys.stderr)
    return EXIT_OK if rep.ok and col is not None else EXIT_FAIL


def cmd_verify(args) -> int:
    g = read_graph(args.graph, args.seed)
    c = read_colouring(args.colouring)
    cert = verify_rainbow_connected(g, c)
    emit(args, json.dumps(cert.to_dict(), indent=None if args.brief else 2))
    return EXIT_OK if cert.complete else EXIT_FAIL


def cmd_rc_exact(args) -> int:
    g = read_graph(args.graph, args.seed)
    res = rc_exact(g, SearchBudget(max_edges=args.cap_edges))
    emit(args, json.dumps(res.to_dict(), indent=2))
    return EXIT_OK if res.conclusive else EXIT_FAIL


def cmd_dominate(args) -> int:
    g = read_graph(args.graph, args.seed)
    if args.girth is not None:
        d = grow_girth_dominating(g, GrowthParams(g=args.girth))
    else:
        k = vertex_connectivity(g) if args.kappa is None else args.kappa
        d = grow_2l_step_dominating(g, GrowthParams(l=args.l, kappa=k))
    emit(args, d.to_json(indent=2))
    return EXIT_OK


def cmd_experiment(args) -> int:
    try:
        with open(args.config) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {args.config}: {exc}")
    if args.seed is not None:
        data["seeds"] = [args.seed]
    if args.cap_edges is not None:
        data["cap_edges"] = args.cap_edges
    if args.cap_depth is not None:
        data["cap_depth"] = args.cap_depth
    if args.algorithm:
        data["algorithms"] = args.algorithm
    try:
        cfg = ExperimentConfig.from_dict(data)
    except (TypeError, ValueError, KeyError) as exc:
        raise UsageError(f"bad config: {exc}")
    if args.out:
        base = args.out
        cfg.out_csv = base + ".csv" if not base.endswith(".csv") else base
        cfg.out_json = os.path.splitext(cfg.out_csv)[0] + ".json"
    reports = run_experiment(cfg)
    if not args.out:
        sys.stdout.write(reports_json(reports) + "\n" if args.format == "json"
                         else reports_csv(reports))
    bad = [r for r in reports if not r.ok]
    for r in bad:
        print(f"FAIL {r.instance} {r.algorithm}: {r.error or 'bound or verifier'}",
              file=sys.stderr)
    return EXIT_OK if all_ok(reports) else EXIT_FAIL


def cmd_export_dot(args) -> int:
    g = read_graph(args.graph, args.seed)
    c = read_colouring(args.colouring) if args.colouring else None
    emit(args, export_dot(g, c))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rainbow-kit", description="Rainbow connection toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=("json",)):
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--out", default=None, help="write output here instead of stdout")
        sp.add_argument("--format", choices=fmt, default=fmt[0])

    sp = sub.add_parser("gen", help="generate a graph family instance")
    sp.add_argument("family", choices=generators.FAMILIES)
    sp.add_argument("param", nargs="*", help="key=value (lists comma separated)")
    common(sp, ("json", "dot"))
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("metrics", help="diameter, girth, connectivities")
    sp.add_argument("graph")
    common(sp)
    sp.set_defaults(func=cmd_metrics)

    sp = sub.add_parser("colour", help="rainbow colour a graph and check its bound")
    sp.add_argument("graph")
    sp.add_argument("--algorithm", "-a", choices=ALGORITHMS, default="two-connected")
    sp.add_argument("--kappa", type=int, default=None)
    sp.add_argument("--l", type=int, default=1)
    sp.add_argument("--cap-depth", type=int, default=DEFAULT_EAR_CAP)
    common(sp, ("json", "csv", "dot"))
    sp.set_defaults(func=cmd_colour)

    sp = sub.add_parser("verify", help="check a colouring for rainbow connectivity")
    sp.add_argument("graph")
    sp.add_argument("colouring")
    sp.add_argument("--brief", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("rc-exact", help="exact rainbow connection number (small graphs)")
    sp.add_argument("graph")
    sp.add_argument("--cap-edges", type=int, default=SearchBudget.max_edges)
    common(sp)
    sp.set_defaults(func=cmd_rc_exact)

    sp = sub.add_parser("dominate", help="grow a connected step-dominating set")
    sp.add_argument("graph")
    sp.add_argument("--l", type=int, default=1)
    sp.add_argument("--kappa", type=int, default=None)
    sp.add_argument("--girth", type=int, default=None, metavar="G",
                    help="use the high-girth growth with half-parameter G")
    common(sp)
    sp.set_defaults(func=cmd_dominate)

    sp = sub.add_parser("experiment", help="run a JSON experiment config")
    sp.add_argument("config")
    sp.add_argument("--cap-edges", type=int, default=None)
    sp.add_argument("--cap-depth", type=int, default=None)
    sp.add_argument("--algorithm", "-a", action="append", default=None)
    common(sp, ("csv", "json"))
    sp.set_defaults(func=cmd_experiment)

    sp = sub.add_parser("export-dot", help="DOT text, optionally coloured")
    sp.add_argument("graph")
    sp.add_argument("colouring", nargs="?")
    common(sp, ("dot",))
    sp.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
