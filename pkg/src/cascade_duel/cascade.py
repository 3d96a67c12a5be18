"""Two-seed tree-structured cascade with sibling influence terms.

Each information converts the network into a BFS tree rooted at its seed,
with the rival seed removed. Influence flows level by level: a node's
value is the sum of its parents' influences divided by the node's degree,
plus, for every same-level neighbor, that sibling's parent-only influence
divided by the node's degree. Degrees are always the original graph
degrees, and sub-threshold nodes still forward influence by default.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .graphs import Graph, LevelAssignment, bfs_levels


class Verdict(Enum):
    FIRM1_WINS = "FIRM1_WINS"
    FIRM2_WINS = "FIRM2_WINS"
    TIE = "TIE"


@dataclass(frozen=True)
class Thresholds:
    theta_of: np.ndarray

    def theta(self, v: int) -> float:
        return float(self.theta_of[v])


def assign_thresholds(g: Graph, mode: str = "constant", theta: float = 0.0,
                      rng_seed: int = 0) -> Thresholds:
    """Per-node adoption thresholds: 'constant' or 'uniform_random'."""
    if mode == "constant":
        if not (0.0 <= theta <= 1.0):
            raise ValueError(f"constant threshold {theta} outside [0, 1]")
        return Thresholds(np.full(g.n, float(theta)))
    if mode == "uniform_random":
        rng = np.random.default_rng(rng_seed)
        return Thresholds(rng.random(g.n))
    raise ValueError(f"unknown threshold mode {mode!r}")


@dataclass
class InfluenceField:
    """Influence of each information on every node, plus the level trees.

    `alphaN_of[v]` is 0 for nodes unreachable in information N's pruned
    tree; a node counts as reached only if it has a level there.
    `parentN_of` keeps the parent-only component that sibling terms use.
    Values are floats, or `fractions.Fraction` when computed exactly.
    """

    seed1: int
    seed2: int
    alpha1_of: list
    alpha2_of: list
    parent1_of: list
    parent2_of: list
    levels1: LevelAssignment
    levels2: LevelAssignment

    def alpha(self, info: int, v: int):
        return self.alpha1_of[v] if info == 1 else self.alpha2_of[v]

    def reached(self, info: int, v: int) -> bool:
        la = self.levels1 if info == 1 else self.levels2
        return la.level_of[v] >= 0


@dataclass
class CascadeOutcome:
    informed1: set[int]
    informed2: set[int]
    informed_both: set[int]
    supporters1: set[int]
    supporters2: set[int]
    uninformed: set[int]
    per_level: list[tuple[int, float, float, float, float]]
    verdict: Verdict


def _spread_one(g: Graph, seed: int, rival: int, exact: bool,
                strict_thresholds: Thresholds | None = None):
    """Influence of one information over its pruned BFS tree.

    Returns (alpha, parent_component, levels). With `strict_thresholds`,
    nodes whose influence stays below their threshold do not forward
    (their onward contribution is zeroed).
    """
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0
    levels = bfs_levels(g, seed, removed=frozenset((rival,)))
    alpha = [zero] * g.n
    parent_comp = [zero] * g.n
    alpha[seed] = one
    parent_comp[seed] = one
    level_of = levels.level_of
    for d in range(1, len(levels.levels)):
        layer = levels.levels[d]
        for v in layer:
            dv = Fraction(g.degree(v)) if exact else float(g.degree(v))
            total = zero
            for w in g.neighbors(v):
                if level_of[w] == d - 1:
                    total += alpha[w]
            parent_comp[v] = total / dv
        for v in layer:
            dv = Fraction(g.degree(v)) if exact else float(g.degree(v))
            sib = zero
            for w in g.neighbors(v):
                if level_of[w] == d:
                    sib += parent_comp[w]
            alpha[v] = parent_comp[v] + sib / dv
        if strict_thresholds is not None:
            for v in layer:
                if alpha[v] < strict_thresholds.theta_of[v]:
                    alpha[v] = zero
                    parent_comp[v] = zero
    return alpha, parent_comp, levels


def propagate_influence(g: Graph, seed1: int, seed2: int, exact: bool = False,
                        strict_thresholds: Thresholds | None = None) -> InfluenceField:
    """Run both informations' cascades and return the influence field.

    `exact=True` computes with rational arithmetic. `strict_thresholds`
    enables the optional mode where sub-threshold nodes do not forward;
    by default influence is computed everywhere and thresholds only
    matter for classification.
    """
    for s in (seed1, seed2):
        if not (0 <= s < g.n):
            raise ValueError(f"seed {s} is not a valid node id")
    if seed1 == seed2:
        raise ValueError("the two seeds must differ")
    a1, p1, l1 = _spread_one(g, seed1, seed2, exact, strict_thresholds)
    a2, p2, l2 = _spread_one(g, seed2, seed1, exact, strict_thresholds)
    return InfluenceField(seed1=seed1, seed2=seed2,
                          alpha1_of=a1, alpha2_of=a2,
                          parent1_of=p1, parent2_of=p2,
                          levels1=l1, levels2=l2)


def classify(field: InfluenceField, th: Thresholds,
             tie_rng_seed: int = 0) -> CascadeOutcome:
    """Split nodes into informed/supporter/uninformed sets.

    A node is informed by information i when it is reached in that
    information's tree and its influence meets the node's threshold.
    Every node informed by at least one information supports the larger
    influence; exact ties go to an independent fair coin per node.
    The verdict compares strict supporter counts (margin rules live in
    the game layer).
    """
    n = len(field.alpha1_of)
    rng = np.random.default_rng(tie_rng_seed)
    informed1, informed2 = set(), set()
    for v in range(n):
        if field.reached(1, v) and field.alpha1_of[v] >= th.theta_of[v]:
            informed1.add(v)
        if field.reached(2, v) and field.alpha2_of[v] >= th.theta_of[v]:
            informed2.add(v)
    supporters1, supporters2 = set(), set()
    for v in sorted(informed1 | informed2):
        a1 = field.alpha1_of[v] if v in informed1 else 0.0
        a2 = field.alpha2_of[v] if v in informed2 else 0.0
        if a1 > a2:
            supporters1.add(v)
        elif a2 > a1:
            supporters2.add(v)
        elif rng.random() < 0.5:
            supporters1.add(v)
        else:
            supporters2.add(v)
    uninformed = set(range(n)) - supporters1 - supporters2
    if len(supporters1) > len(supporters2):
        verdict = Verdict.FIRM1_WINS
    elif len(supporters2) > len(supporters1):
        verdict = Verdict.FIRM2_WINS
    else:
        verdict = Verdict.TIE
    outcome = CascadeOutcome(informed1=informed1, informed2=informed2,
                             informed_both=informed1 & informed2,
                             supporters1=supporters1, supporters2=supporters2,
                             uninformed=uninformed, per_level=[],
                             verdict=verdict)
    outcome.per_level = per_level_metrics(field, outcome)
    return outcome


def per_level_metrics(field: InfluenceField, outcome: CascadeOutcome
                      ) -> list[tuple[int, float, float, float, float]]:
    """Cumulative informed/supporter fractions after each BFS level.

    Rows are (L, mu_influenced_1, mu_influenced_2, mu_supporter_1,
    mu_supporter_2); fractions are of the whole node set and each
    information saturates at its own tree depth.
    """
    n = len(field.alpha1_of)
    depth = max(field.levels1.depth, field.levels2.depth)
    rows = []
    for limit in range(depth + 1):
        mu = []
        for info, informed, supporters in (
                (1, outcome.informed1, outcome.supporters1),
                (2, outcome.informed2, outcome.supporters2)):
            la = field.levels1 if info == 1 else field.levels2
            inf_count = sum(1 for v in informed if 0 <= la.level_of[v] <= limit)
            sup_count = sum(1 for v in supporters if 0 <= la.level_of[v] <= limit)
            mu.append((inf_count / n, sup_count / n))
        rows.append((limit, mu[0][0], mu[1][0], mu[0][1], mu[1][1]))
    return rows
