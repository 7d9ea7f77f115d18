"""Data models for combs, comb layers and bound certificates."""

from dataclasses import dataclass, field
from typing import Optional

from src.blockades import Blockade
from src.graphs import Graph, mask_of


@dataclass(frozen=True)
class Comb:
    """A (t, k)-comb: apexes paired with their teeth."""

    pairs: tuple[tuple[int, frozenset[int]], ...]
    k: int = 1

    @property
    def t(self) -> int:
        return len(self.pairs)

    @property
    def apexes(self) -> list[int]:
        return [a for a, _ in self.pairs]

    @property
    def teeth(self) -> list[frozenset[int]]:
        return [tooth for _, tooth in self.pairs]

    @property
    def width(self) -> int:
        return min((len(t) for t in self.teeth), default=0)

    def teeth_blockade(self) -> Blockade:
        return Blockade(tuple(self.teeth))

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "k": self.k,
            "pairs": [{"apex": a, "tooth": sorted(tooth)} for a, tooth in self.pairs],
        }


def comb_violations(g: Graph, c: Comb) -> list[str]:
    """Every comb axiom the candidate breaks; empty when valid."""
    problems = []
    apexes = c.apexes
    if len(set(apexes)) != len(apexes):
        problems.append("apexes are not distinct")
    apex_set = set(apexes)
    seen: set[int] = set()
    for i, tooth in enumerate(c.teeth):
        if seen & tooth:
            problems.append(f"tooth {i} overlaps an earlier tooth")
        seen |= tooth
        if apex_set & tooth:
            problems.append(f"tooth {i} contains an apex")
        if len(tooth) < c.k:
            problems.append(f"tooth {i} has {len(tooth)} < {c.k} vertices")
    for i, (a, tooth) in enumerate(c.pairs):
        tooth_mask = mask_of(tooth)
        if g.rows[a] & tooth_mask != tooth_mask:
            problems.append(f"apex {a} is not complete to its tooth")
        for j, other in enumerate(c.teeth):
            if j != i and g.rows[a] & mask_of(other):
                problems.append(f"apex {a} has a neighbour in tooth {j}")
    return problems


def validate_comb(g: Graph, c: Comb) -> bool:
    return not comb_violations(g, c)


@dataclass(frozen=True)
class CombLayer:
    s: int
    apexes: tuple[int, ...]
    teeth: tuple[frozenset[int], ...]

    @property
    def k_s(self) -> int:
        return len(self.apexes)

    @property
    def covered(self) -> frozenset[int]:
        return frozenset().union(*self.teeth)


@dataclass(frozen=True)
class CombLayers:
    """Greedy layered apex/teeth structure between C and D.

    Layers with no apexes are kept so that layer ``s`` always uses threshold (2/3)^s * delta.
    """

    delta: int
    c_set: frozenset[int]
    d_set: frozenset[int]
    layers: tuple[CombLayer, ...]
    residual: frozenset[int]

    @property
    def covered(self) -> frozenset[int]:
        return frozenset().union(*(layer.covered for layer in self.layers))

    def apex_order(self, up_to: Optional[int] = None) -> list[tuple[int, int, int, frozenset[int]]]:
        """(s, i, apex, tooth) over layers 1..up_to in construction order."""
        out = []
        for layer in self.layers:
            if up_to is not None and layer.s > up_to:
                break
            for i, (a, tooth) in enumerate(zip(layer.apexes, layer.teeth)):
                out.append((layer.s, i, a, tooth))
        return out

    def violations(self, g: Graph) -> list[str]:
        """Observations on tooth sizes and apex/tooth anticompleteness that must hold."""
        problems = []
        delta = self.delta
        for layer in self.layers:
            s = layer.s
            for i, tooth in enumerate(layer.teeth):
                size = len(tooth)
                # (2/3)^s delta <= |T| <= (2/3)^(s-1) delta, cleared of denominators
                if 2 ** s * delta > 3 ** s * size:
                    problems.append(f"layer {s} tooth {i}: {size} below (2/3)^{s} * {delta}")
                if 3 ** (s - 1) * size > 2 ** (s - 1) * delta:
                    problems.append(f"layer {s} tooth {i}: {size} above (2/3)^{s - 1} * {delta}")
        order = self.apex_order()
        for x, (s, i, a, _) in enumerate(order):
            for s2, i2, _, tooth in order[x + 1:]:
                if g.rows[a] & mask_of(tooth):
                    problems.append(f"apex {a} (layer {s}, {i}) sees tooth of layer {s2}, {i2}")
        if self.covered & self.residual:
            problems.append("residual intersects covered vertices")
        if self.covered | self.residual != self.d_set:
            problems.append("covered and residual do not partition D")
        return problems


@dataclass(frozen=True)
class BoundCertificate:
    """Second branch of the comb dichotomy: |B| is small relative to gamma and delta."""

    b_size: int
    delta: int
    gamma: float
    d: float
    bound: float
    holds: bool
    boundary: bool = False
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "b_size": self.b_size,
            "delta": self.delta,
            "gamma": self.gamma,
            "d": self.d,
            "bound": self.bound,
            "holds": self.holds,
            "boundary": self.boundary,
        }
