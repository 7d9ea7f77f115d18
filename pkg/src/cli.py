"""Command-line entry point: ``blockade-lab <verb> ...``."""

import argparse
import json
import logging
import sys
from typing import Any, Callable, Optional

import pandas as pd
import yaml

from config.settings import GENERATOR_PARAMS, RELAX_ALIASES, get_settings
from src.blockades import Blockade
from src.cographs import (
    TauParams,
    clique_and_anticlique,
    homogeneous_in_cograph,
    is_cograph,
    is_tau_critical,
    largest_cograph,
)
from src.combs import Comb, comb_or_bound, compute_W_G, w_g_witness
from src.errors import BlockadeLabError, ConfigError, GraphError
from src.freeness import RainbowReading, is_k2_free, is_rainbow_k2_free, is_strongly_k2_free
from src.graphs import Graph, blockade_to_dict, dump_json, load_blockade, load_graph
from src.harness import GeneratorSpec, aggregate_frame, generate, run_suite, write_report
from src.lemma import (
    RelaxFactors,
    base_remark_dimensions,
    compute_constants,
    main_lemma_procedure,
    pure_blockade_from_rainbow22,
)

logger = logging.getLogger(__name__)

EXIT_USAGE = 2


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------

def _safe_float(value) -> Optional[float]:
    """Safely convert value to float."""
    if value is None:
        return None
    try:
        return float(value)
    except (ValueError, TypeError):
        return None


def _safe_int(value) -> Optional[int]:
    """Safely convert value to int; non-integral numbers are rejected."""
    if value is None:
        return None
    try:
        number = float(value)
    except (ValueError, TypeError):
        return None
    return int(number) if number.is_integer() else None


def parse_params(pairs: list[str]) -> dict[str, Any]:
    """``key=value`` pairs; values are read as YAML scalars or ``[lo, hi]`` ranges."""
    params = {}
    for pair in pairs or []:
        key, sep, raw = pair.partition("=")
        if not sep or not key:
            raise ConfigError(f"expected key=value, got {pair!r}", "--param")
        try:
            params[key.strip()] = yaml.safe_load(raw)
        except yaml.YAMLError as e:
            raise ConfigError(f"cannot parse value {raw!r}", f"--param {key}") from e
    return params


def parse_relax(text: Optional[str]) -> RelaxFactors:
    """``delta=0.5,width=2,len=1`` with aliases; omitted factors stay at 1."""
    values: dict[str, float] = {}
    for item in filter(None, (text or "").split(",")):
        key, _, raw = item.partition("=")
        name = RELAX_ALIASES.get(key.strip())
        if name is None:
            raise ConfigError(f"unknown relax factor {key.strip()!r}", "--relax")
        value = _safe_float(raw)
        if value is None or value <= 0:
            raise ConfigError(f"relax factor {key.strip()} needs a positive number", "--relax")
        values[name] = value
    return RelaxFactors(**values)


def parse_vertices(text: str, flag: str) -> list[int]:
    vertices = []
    for item in filter(None, text.split(",")):
        v = _safe_int(item)
        if v is None or v < 0:
            raise ConfigError(f"bad vertex {item!r}", flag)
        vertices.append(v)
    return vertices


def _emit(payload: Any, args: argparse.Namespace) -> None:
    rows = payload if isinstance(payload, list) else [payload]
    if args.format == "csv":
        text = pd.json_normalize(rows, sep=".").to_csv(index=False)
    else:
        text = "".join(json.dumps(row, sort_keys=True, default=str) + "\n" for row in rows)
    _write_text(text, args)


def _write_text(text: str, args: argparse.Namespace) -> None:
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _load(args: argparse.Namespace) -> tuple[Graph, Optional[Blockade]]:
    g = load_graph(args.graph)
    path = getattr(args, "blockade", None)
    return g, load_blockade(path, g) if path else None


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_gen(args: argparse.Namespace) -> int:
    params = parse_params(args.param)
    seed = get_settings().SEED if args.seed is None else args.seed
    rows = []
    for index in range(args.trials or 1):
        spec = GeneratorSpec(kind=args.kind, params=params, seed=seed, index=index)
        instance = generate(spec)
        if args.format == "csv":
            rows.append({
                **spec.to_dict(),
                "n": instance.graph.n,
                "edges": instance.graph.edge_count,
                "blocks": instance.blockade.length if instance.blockade else None,
            })
        else:
            rows.append({"spec": spec.to_dict(), **instance.to_dict()})
    if args.format == "json" and args.out and len(rows) == 1:
        # a single instance becomes a file the --graph/--blockade flags can read back
        dump_json(rows[0], args.out)
        return 0
    _emit(rows, args)
    return 0


def cmd_k2(args: argparse.Namespace) -> int:
    g, b = _load(args)
    reading = RainbowReading(args.reading)
    if args.strong:
        verdict = is_strongly_k2_free(g, args.k, args.distinct_witnesses)
        payload = {"mode": "strong", **verdict.to_dict()}
    elif b is not None:
        violation = is_rainbow_k2_free(g, b, args.k, reading=reading,
                                       distinct=args.distinct_witnesses)
        payload = {"mode": "rainbow", "reading": reading.value, "free": violation is None,
                   "violation": violation.to_dict() if violation else None}
    else:
        violation = is_k2_free(g, args.k, distinct=args.distinct_witnesses)
        payload = {"mode": "graph", "free": violation is None,
                   "violation": violation.to_dict() if violation else None}
    payload["k"] = args.k
    _emit(payload, args)
    return 0


def cmd_comb(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    if args.action == "wg":
        witness = w_g_witness(g, args.limit)
        payload = {"W_G": compute_W_G(g, args.limit),
                   "witness": witness.to_dict() if witness else None}
    else:
        if args.A is None or args.B is None:
            raise ConfigError("comb build needs --A and --B", "comb build")
        result = comb_or_bound(g, parse_vertices(args.A, "--A"), parse_vertices(args.B, "--B"),
                               args.gamma, args.d)
        branch = "comb" if isinstance(result, Comb) else "bound"
        payload = {"branch": branch, **result.to_dict()}
    _emit(payload, args)
    return 0


def cmd_cograph(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    if args.action == "check":
        tree = is_cograph(g)
        if args.format != "csv":
            # the cotree expression or NOT COGRAPH; csv keeps the tabular row
            _write_text(f"{tree if tree is not None else 'NOT COGRAPH'}\n", args)
            return 0
        payload = {"cograph": tree is not None, "cotree": tree.to_dict() if tree else None}
    elif args.action == "largest":
        best = largest_cograph(g, args.limit)
        payload = {"size": len(best), "vertices": sorted(best)}
    elif args.action == "homogeneous":
        tree = is_cograph(g)
        if tree is None:
            raise GraphError("homogeneous-set extraction needs a cograph")
        clique, anticlique = clique_and_anticlique(tree)
        h = homogeneous_in_cograph(tree)
        payload = {"vertices": sorted(h), "kind": "clique" if h == clique else "anticlique",
                   "clique": len(clique), "anticlique": len(anticlique)}
    else:
        if args.tau is None:
            raise ConfigError("cograph critical needs --tau", "--tau")
        payload = is_tau_critical(g, TauParams(args.tau), args.limit).to_dict()
    _emit(payload, args)
    return 0


def cmd_lemma(args: argparse.Namespace) -> int:
    if args.action == "constants":
        params = compute_constants(args.k, args.d, tau=args.tau, t=args.t)
        payload = params.to_dict()
        if args.t is not None and args.t >= 4:
            length, divisor = base_remark_dimensions(args.t)
            payload["base_case"] = {"length": length, "D_s": divisor}
        _emit(payload, args)
        return 0

    g, b = _load(args)
    if b is None:
        raise ConfigError(f"lemma {args.action} needs --blockade", "--blockade")
    if args.action == "basecase":
        result, tree = pure_blockade_from_rainbow22(g, b, args.s)
        _emit({**blockade_to_dict(result), "cotree": tree.to_dict()}, args)
        return 0

    if args.strict and args.relax:
        raise ConfigError("--strict and --relax are mutually exclusive", "lemma run")
    relaxed = None if args.strict else parse_relax(args.relax)
    params = compute_constants(args.k, args.d, tau=args.tau, t=b.length)
    trace = main_lemma_procedure(
        g, b, params, relaxed=relaxed, max_steps=args.max_steps,
        avoid_apex_block=not args.allow_apex_block,
        verify_preconditions=args.verify_preconditions,
    )
    _emit({"params": params.to_dict(), **trace.to_dict()}, args)
    return 0


def cmd_suite(args: argparse.Namespace) -> int:
    path = args.config or get_settings().DEFAULT_SUITE_FILE
    report = run_suite(path, seed=args.seed, trials=args.trials, max_workers=args.workers)
    write_report(report, args.out, args.format, stream=sys.stdout, timing=not args.no_timing)
    if args.summary:
        aggregate_frame(report).to_csv(args.summary, index=False)
        logger.info("Wrote suite summary to %s", args.summary)
    return report.exit_code


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "gen": cmd_gen,
    "k2": cmd_k2,
    "comb": cmd_comb,
    "cograph": cmd_cograph,
    "lemma": cmd_lemma,
    "suite": cmd_suite,
}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--format", choices=["json", "csv"], default="json")

    parser = argparse.ArgumentParser(prog="blockade-lab",
                                     description="Blockade, comb and cograph experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[common], help="generate seeded instances")
    gen.add_argument("--kind", required=True, choices=sorted(GENERATOR_PARAMS))
    gen.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")

    k2 = sub.add_parser("k2", parents=[common], help="(k choose 2)-freeness")
    k2.add_argument("action", choices=["check"])
    k2.add_argument("--graph", required=True)
    k2.add_argument("--k", type=int, required=True)
    k2.add_argument("--blockade")
    k2.add_argument("--strong", action="store_true")
    k2.add_argument("--distinct-witnesses", action="store_true")
    k2.add_argument("--reading", choices=[r.value for r in RainbowReading],
                    default=RainbowReading.DISTINCT_BLOCKS.value)

    comb = sub.add_parser("comb", parents=[common], help="comb dichotomy and W_G")
    comb.add_argument("action", choices=["build", "wg"])
    comb.add_argument("--graph", required=True)
    comb.add_argument("--A")
    comb.add_argument("--B")
    comb.add_argument("--gamma", type=float, default=1.0)
    comb.add_argument("--d", type=float, default=0.5)
    comb.add_argument("--limit", type=int)

    cograph = sub.add_parser("cograph", parents=[common], help="cograph tools")
    cograph.add_argument("action", choices=["check", "largest", "homogeneous", "critical"])
    cograph.add_argument("--graph", required=True)
    cograph.add_argument("--limit", type=int)
    cograph.add_argument("--tau", type=float)

    lemma = sub.add_parser("lemma", parents=[common], help="comb extraction and its constants")
    lemma.add_argument("action", choices=["run", "constants", "basecase"])
    lemma.add_argument("--graph")
    lemma.add_argument("--blockade")
    lemma.add_argument("--k", type=int, default=3)
    lemma.add_argument("--d", type=float, default=2.0)
    lemma.add_argument("--tau", type=float, default=None)
    lemma.add_argument("--t", type=int, default=None)
    lemma.add_argument("--s", type=int, default=1)
    lemma.add_argument("--relax", default=None, metavar="delta=X,width=Y,len=Z")
    lemma.add_argument("--strict", action="store_true")
    lemma.add_argument("--max-steps", type=int, default=None)
    lemma.add_argument("--allow-apex-block", action="store_true")
    lemma.add_argument("--verify-preconditions", action="store_true")

    suite = sub.add_parser("suite", parents=[common], help="run an acceptance suite file")
    suite.add_argument("config", nargs="?")
    suite.add_argument("--workers", type=int, default=None)
    suite.add_argument("--no-timing", action="store_true",
                       help="drop wall-clock fields so reruns compare equal")
    suite.add_argument("--summary", default=None, help="also write the per-suite table as CSV")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    settings = get_settings()
    logging.basicConfig(level=settings.LOG_LEVEL,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "lemma" and args.action == "run" and args.tau is None:
            raise ConfigError("lemma run needs --tau", "--tau")
        if args.command == "lemma" and args.action != "constants" and args.graph is None:
            raise ConfigError(f"lemma {args.action} needs --graph", "--graph")
        return COMMANDS[args.command](args)
    except (BlockadeLabError, ValueError, OSError) as e:
        logger.error("%s failed: %s", args.command, e)
        error = {"error": type(e).__name__, "message": str(e)}
        for attr in ("location", "reasons"):
            if getattr(e, attr, None):
                error[attr] = getattr(e, attr)
        sys.stdout.write(json.dumps(error, sort_keys=True) + "\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
