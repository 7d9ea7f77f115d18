"""Seeded generators for graphs and blockades."""

import logging
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from config.settings import GENERATOR_DEFAULTS, GENERATOR_PARAMS
from src.blockades import Blockade
from src.cographs import Cotree, is_cograph
from src.combs import Comb, comb_violations
from src.errors import ConfigError, GenerationError
from src.freeness import is_rainbow_k2_free
from src.graphs import Graph, blockade_to_dict, graph_to_dict, new_graph
from src.lemma import best_singleton_comb

logger = logging.getLogger(__name__)

_PROBABILITIES = {"p", "join_bias", "noise"}
_POSITIVE = {"n", "leaves", "t", "tooth_size", "k", "blocks", "block_size", "max_attempts",
             "a_size", "b_size", "width"}


# ---------------------------------------------------------------------------
# Specs and instances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorSpec:
    """A generator kind with parameters, the master seed and the instance's position.

    A parameter given as ``[lo, hi]`` is sampled per instance (integers inclusive).
    """

    kind: str
    params: dict[str, Any]
    seed: int
    index: int = 0
    stream: int = 0

    def rng(self) -> np.random.Generator:
        return np.random.default_rng([self.seed, self.stream, self.index])

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "params": self.params,
            "seed": self.seed,
            "index": self.index,
            "stream": self.stream,
        }


@dataclass
class GeneratedInstance:
    graph: Graph
    blockade: Optional[Blockade] = None
    comb: Optional[Comb] = None
    params: dict[str, Any] = field(default_factory=dict)
    meta: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "graph": graph_to_dict(self.graph),
            "blockade": blockade_to_dict(self.blockade) if self.blockade else None,
            "comb": self.comb.to_dict() if self.comb else None,
            "params": self.params,
            "meta": self.meta,
        }


def resolve_params(kind: str, params: dict[str, Any], rng: np.random.Generator) -> dict[str, Any]:
    """Fill defaults, sample ranges and validate the concrete values."""
    if kind not in GENERATOR_PARAMS:
        raise ConfigError(f"unknown generator kind {kind!r}", "generator.kind")
    missing = [name for name in GENERATOR_PARAMS[kind] if name not in params]
    if missing:
        raise ConfigError(f"missing parameters {missing} for {kind}", "generator.params")
    values = {**GENERATOR_DEFAULTS.get(kind, {}), **params}
    resolved = {}
    for name, value in sorted(values.items()):
        if isinstance(value, (list, tuple)):
            if len(value) != 2:
                raise ConfigError(f"range for {name} must be [lo, hi]", f"generator.params.{name}")
            lo, hi = value
            if isinstance(lo, int) and isinstance(hi, int):
                value = int(rng.integers(lo, hi + 1))
            else:
                value = float(rng.uniform(lo, hi))
        resolved[name] = value
    for name, value in resolved.items():
        if name in _PROBABILITIES and not 0 <= value <= 1:
            raise ConfigError(f"{name} must lie in [0, 1], got {value}", f"generator.params.{name}")
        if name in _POSITIVE and (not isinstance(value, int) or value < 1):
            raise ConfigError(f"{name} must be a positive integer, got {value!r}",
                              f"generator.params.{name}")
    return resolved


# ---------------------------------------------------------------------------
# Kinds
# ---------------------------------------------------------------------------

def _gnp_edges(vertices: list[int], p: float, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Each pair independently with probability p, in lexicographic pair order."""
    m = len(vertices)
    if m < 2:
        return []
    rows, cols = np.triu_indices(m, k=1)
    keep = rng.random(len(rows)) < p
    return [(vertices[i], vertices[j]) for i, j in zip(rows[keep], cols[keep])]


def _consecutive_blocks(count: int, size: int) -> Blockade:
    return Blockade(tuple(frozenset(range(i * size, (i + 1) * size)) for i in range(count)))


def _gen_gnp(p: dict, rng: np.random.Generator) -> GeneratedInstance:
    n = p["n"]
    return GeneratedInstance(graph=new_graph(n, _gnp_edges(list(range(n)), p["p"], rng)))


def _gen_cograph(p: dict, rng: np.random.Generator) -> GeneratedInstance:
    forest = [Cotree.leaf(v) for v in range(p["leaves"])]
    while len(forest) > 1:
        i, j = sorted(rng.choice(len(forest), size=2, replace=False).tolist())
        right, left = forest.pop(j), forest.pop(i)
        if rng.random() < p["join_bias"]:
            forest.append(Cotree.join_of([left, right]))
        else:
            forest.append(Cotree.union_of([left, right]))
    tree = forest[0]
    g = tree.evaluate(p["leaves"])
    if is_cograph(g) is None:
        raise GenerationError("evaluated cotree is not recognised as a cograph")
    return GeneratedInstance(graph=g, meta={"cotree": str(tree)})


def _gen_planted_comb(p: dict, rng: np.random.Generator) -> GeneratedInstance:
    """Hub with t apexes and padding in block 0; apex i owns a tooth in block i."""
    t, size = p["t"], p["tooth_size"]
    if t < 2:
        raise ConfigError(f"planted-comb needs t >= 2, got {t}", "generator.params.t")
    pad = size + 2
    w = 1 + t + pad
    n = w * (t + 1)
    hub, apexes = 0, list(range(1, t + 1))
    pads = list(range(t + 1, t + 1 + pad))
    teeth = [list(range(i * w, i * w + size)) for i in range(1, t + 1)]
    filler = [v for i in range(1, t + 1) for v in range(i * w + size, (i + 1) * w)]

    edges = [(hub, a) for a in apexes] + [(hub, x) for x in pads]
    for a, tooth in zip(apexes, teeth):
        edges.extend((a, y) for y in tooth)
    hub_degree = t + pad
    degree = dict.fromkeys(filler, 0)
    for u, v in _gnp_edges(filler, p["noise"], rng):
        if max(degree[u], degree[v]) + 1 >= hub_degree - 1:
            continue
        degree[u] += 1
        degree[v] += 1
        edges.append((u, v))

    perm = rng.permutation(n).tolist()
    g = new_graph(n, [(perm[u], perm[v]) for u, v in edges])
    blocks = [range(w)] + [range(i * w, (i + 1) * w) for i in range(1, t + 1)]
    blockade = Blockade(tuple(frozenset(perm[v] for v in block) for block in blocks))
    comb = Comb(
        pairs=tuple((perm[a], frozenset(perm[y] for y in tooth)) for a, tooth in zip(apexes, teeth)),
        k=size,
    )
    problems = comb_violations(g, comb)
    if problems:
        raise GenerationError(f"planted comb is invalid: {problems[0]}")
    return GeneratedInstance(graph=g, blockade=blockade, comb=comb,
                             meta={"hub": perm[hub], "width": w})


def _gen_rainbow_free(p: dict, rng: np.random.Generator) -> GeneratedInstance:
    """Rejection sampling; with ``require_comb`` a sample also needs a singleton comb somewhere."""
    n = p["blocks"] * p["block_size"]
    blockade = _consecutive_blocks(p["blocks"], p["block_size"])
    for attempt in range(1, p["max_attempts"] + 1):
        g = new_graph(n, _gnp_edges(list(range(n)), p["p"], rng))
        if p["require_comb"] and best_singleton_comb(g, blockade) is None:
            logger.debug("Rejected sample %s: no comb", attempt)
            continue
        if is_rainbow_k2_free(g, blockade, p["k"]) is None:
            if attempt > 1:
                logger.info("Accepted a rainbow-free sample after %s attempts", attempt)
            return GeneratedInstance(graph=g, blockade=blockade, meta={"attempts": attempt})
        logger.debug("Rejected sample %s", attempt)
    raise GenerationError(
        f"no rainbow ({p['k']} choose 2)-free sample in {p['max_attempts']} attempts"
    )


def _gen_block_local(p: dict, rng: np.random.Generator) -> GeneratedInstance:
    """Edges inside blocks, plus complete joins between the first ``join_pairs`` pairs of
    stable blocks. Every such blockade is rainbow (k choose 2)-free for all k >= 2."""
    count, size, joins = p["blocks"], p["block_size"], p["join_pairs"]
    if not isinstance(joins, int) or joins < 0 or 2 * joins > count:
        raise ConfigError(f"join_pairs must lie in [0, blocks/2], got {joins!r}",
                          "generator.params.join_pairs")
    blockade = _consecutive_blocks(count, size)
    edges = []
    for i in range(2 * joins, count):
        edges.extend(_gnp_edges(sorted(blockade.blocks[i]), p["p"], rng))
    for j in range(joins):
        left, right = blockade.blocks[2 * j], blockade.blocks[2 * j + 1]
        edges.extend((u, v) for u in left for v in right)
    return GeneratedInstance(graph=new_graph(count * size, edges), blockade=blockade)


def _gen_bipartite(p: dict, rng: np.random.Generator) -> GeneratedInstance:
    """Random A-B edges, then one forced neighbour for each B vertex left isolated."""
    a_size, b_size = p["a_size"], p["b_size"]
    a_side = list(range(a_size))
    b_side = list(range(a_size, a_size + b_size))
    keep = rng.random((a_size, b_size)) < p["p"]
    edges = [(a, b_side[j]) for a in a_side for j in range(b_size) if keep[a, j]]
    for j, y in enumerate(b_side):
        if not keep[:, j].any():
            edges.append((int(rng.integers(a_size)), y))
    g = new_graph(a_size + b_size, edges)
    return GeneratedInstance(graph=g, blockade=Blockade.of(a_side, b_side),
                             meta={"A": a_side, "B": b_side})


def _gen_blockade_gnp(p: dict, rng: np.random.Generator) -> GeneratedInstance:
    """G(n, p) over t consecutive blocks; degrees capped at max_degree (default sqrt(width))."""
    t, w = p["t"], p["width"]
    cap = p["max_degree"] if p["max_degree"] is not None else max(1, int(w ** 0.5))
    n = t * w
    degree = [0] * n
    edges = []
    for u, v in _gnp_edges(list(range(n)), p["p"], rng):
        if degree[u] < cap and degree[v] < cap:
            degree[u] += 1
            degree[v] += 1
            edges.append((u, v))
    return GeneratedInstance(graph=new_graph(n, edges), blockade=_consecutive_blocks(t, w),
                             meta={"max_degree": cap})


GENERATORS = {
    "gnp": _gen_gnp,
    "cograph-random": _gen_cograph,
    "planted-comb": _gen_planted_comb,
    "rainbow-free-rejection": _gen_rainbow_free,
    "block-local": _gen_block_local,
    "bipartite-covered": _gen_bipartite,
    "blockade-gnp": _gen_blockade_gnp,
}


def generate(spec: GeneratorSpec) -> GeneratedInstance:
    """Deterministic in (kind, params, seed, stream, index)."""
    rng = spec.rng()
    params = resolve_params(spec.kind, spec.params, rng)
    instance = GENERATORS[spec.kind](params, rng)
    if instance.blockade is not None:
        outside = [v for v in instance.blockade.union if v >= instance.graph.n]
        if outside:
            raise GenerationError(f"blockade references vertices {sorted(outside)[:5]} outside G")
    instance.params = params
    return instance
