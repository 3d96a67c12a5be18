"""Node pricing, player budgets, and seed selection.

Three selection methods are supported: degree centrality (DC),
eigenvector centrality via power iteration (EC), and rank-degree
sampling (RD). Node cost is degree divided by the median degree, so a
median-degree node costs exactly one budget unit.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .graphs import Graph


class NoAffordableSeedError(RuntimeError):
    """No eligible node satisfies the exclusion and budget constraints."""


class PowerIterationError(RuntimeError):
    """Eigenvector centrality failed to converge; carries the last iterate."""

    def __init__(self, iterations: int, last_change: float, last_scores: np.ndarray):
        self.iterations = iterations
        self.last_change = last_change
        self.last_scores = last_scores
        super().__init__(
            f"power iteration did not converge in {iterations} iterations "
            f"(last max change {last_change:.3e})")


@dataclass(frozen=True)
class CostTable:
    """Per-node seed prices: cost_of[i] = degree(i) / central_tendency_degree."""

    central_tendency_degree: float
    cost_of: np.ndarray

    def cost(self, i: int) -> float:
        return float(self.cost_of[i])


@dataclass
class PlayerBudget:
    player: str
    budget: float = 1.0

    def can_afford(self, cost: float) -> bool:
        return cost <= self.budget + 1e-12

    def spend(self, cost: float) -> None:
        if not self.can_afford(cost):
            raise NoAffordableSeedError(
                f"{self.player}: cost {cost} exceeds remaining budget {self.budget}")
        self.budget = max(0.0, self.budget - cost)


@dataclass(frozen=True)
class CentralityScores:
    method: str
    score_of: np.ndarray
    ranking: list[int]


@dataclass(frozen=True)
class RankDegreeParams:
    """Knobs for rank-degree sampling.

    `rho` is the top-friend fraction in (0, 1]; None selects max mode
    (top-1 friend per seed). `initial_seeds` overrides the random initial
    seed draw, which is mainly useful for deterministic tests.
    """

    s: int = 1
    rho: float | None = None
    target_fraction: float = 0.10
    rng_seed: int = 0
    initial_seeds: tuple[int, ...] | None = None


def compute_costs(g: Graph) -> CostTable:
    """Median-degree pricing; even-length medians average the two middles."""
    degrees = np.sort(g.degrees)
    n = degrees.shape[0]
    if n == 0:
        raise ValueError("empty graph")
    mid = n // 2
    if n % 2 == 1:
        d_ct = float(degrees[mid])
    else:
        d_ct = (float(degrees[mid - 1]) + float(degrees[mid])) / 2.0
    if d_ct == 0:
        raise ValueError("median degree is 0; node costs are undefined")
    return CostTable(central_tendency_degree=d_ct,
                     cost_of=g.degrees.astype(np.float64) / d_ct)


def _ranking(scores: np.ndarray) -> list[int]:
    # descending score, ascending id on ties
    order = np.lexsort((np.arange(scores.shape[0]), -scores))
    return [int(i) for i in order]


def degree_centrality(g: Graph) -> CentralityScores:
    """Degree divided by n-1, the largest possible degree."""
    if g.n < 2:
        raise ValueError("degree centrality needs at least 2 nodes")
    scores = g.degrees.astype(np.float64) / (g.n - 1)
    return CentralityScores(method="dc", score_of=scores, ranking=_ranking(scores))


def eigenvector_centrality(g: Graph, tol: float = 1e-9,
                           max_iter: int = 10000) -> CentralityScores:
    """Power iteration from all-ones, max-normalized each sweep.

    Each iteration adds every node's neighbor-score sum to its own score
    (the identity shift keeps bipartite graphs from oscillating without
    changing the dominant eigenvector) and divides by the largest value;
    iteration stops when the maximum per-node change drops below `tol`.
    """
    a = g.to_csr().astype(np.float64)
    x = np.ones(g.n, dtype=np.float64)
    change = math.inf
    for _ in range(max_iter):
        y = a @ x + x
        top = y.max()
        y /= top
        change = float(np.abs(y - x).max())
        x = y
        if change < tol:
            return CentralityScores(method="ec", score_of=x, ranking=_ranking(x))
    raise PowerIterationError(max_iter, change, x)


def rank_degree_sample(g: Graph, p: RankDegreeParams) -> set[int]:
    """Iterative top-degree-friend sampling until a target node count.

    Starting from random seeds, each round selects every seed's top-k
    highest-degree friends (k=1 in max mode, else ceil(rho * #friends)),
    adds the selected edges' endpoints to the sample, deletes those edges
    from a working copy, and promotes the selected friends to seeds.
    Empty rounds trigger a random jump. Returns a partial sample with a
    warning if the working graph runs out of edges first.
    """
    if not (p.rho is None or 0 < p.rho <= 1):
        raise ValueError("rho must be in (0, 1] or None for max mode")
    if not (0 < p.target_fraction <= 1):
        raise ValueError("target_fraction must be in (0, 1]")
    target = max(1, math.ceil(p.target_fraction * g.n))
    rng = np.random.default_rng(p.rng_seed)
    work = [set(g.neighbors(v)) for v in range(g.n)]
    edges_left = g.num_edges

    def random_seeds() -> list[int]:
        k = min(p.s, g.n)
        return [int(v) for v in rng.choice(g.n, size=k, replace=False)]

    if p.initial_seeds is not None:
        seeds = [int(v) for v in p.initial_seeds]
    else:
        seeds = random_seeds()
    sample: set[int] = set()
    while len(sample) < target:
        if edges_left == 0:
            warnings.warn(
                f"rank-degree sampling exhausted all edges at {len(sample)} of "
                f"{target} target nodes; returning partial sample", stacklevel=2)
            break
        new_seeds: list[int] = []
        picked: list[tuple[int, int]] = []
        for w in seeds:
            friends = sorted(work[w], key=lambda v: (-len(work[v]), v))
            if not friends:
                continue
            k = 1 if p.rho is None else math.ceil(p.rho * len(friends))
            for f in friends[:k]:
                picked.append((w, f))
                new_seeds.append(f)
        for w, f in picked:
            if f in work[w]:
                work[w].discard(f)
                work[f].discard(w)
                edges_left -= 1
            sample.add(w)
            sample.add(f)
        if new_seeds:
            seeds = new_seeds
        else:
            seeds = random_seeds()
    return sample


def _eligible(node: int, costs: CostTable, budget: PlayerBudget,
              enforce_budget: bool, excluded) -> bool:
    if node in excluded:
        return False
    return (not enforce_budget) or budget.can_afford(costs.cost(node))


def select_seed(g: Graph, method: str, costs: CostTable, budget: PlayerBudget,
                enforce_budget: bool = False, excluded=frozenset(),
                rng_seed: int = 0,
                rd_params: RankDegreeParams | None = None) -> int:
    """Pick one seed node by `method` ('dc' | 'ec' | 'rd').

    DC/EC take the highest-ranked eligible node; RD takes the
    highest-degree eligible node inside a fresh rank-degree sample. When
    budget enforcement is on, the chosen node's cost is deducted.
    """
    method = method.lower()
    if method == "dc":
        candidates = degree_centrality(g).ranking
    elif method == "ec":
        candidates = eigenvector_centrality(g).ranking
    elif method == "rd":
        params = rd_params if rd_params is not None else RankDegreeParams(rng_seed=rng_seed)
        sample = rank_degree_sample(g, params)
        candidates = sorted(sample, key=lambda v: (-g.degree(v), v))
    else:
        raise ValueError(f"unknown seed selection method {method!r}")
    for node in candidates:
        if _eligible(node, costs, budget, enforce_budget, excluded):
            if enforce_budget:
                budget.spend(costs.cost(node))
            return node
    raise NoAffordableSeedError(
        f"{budget.player}: no eligible node for method {method!r} "
        f"(budget {budget.budget}, {len(excluded)} excluded)")


def select_seeds_greedy(g: Graph, method: str, costs: CostTable,
                        budget: PlayerBudget, excluded=frozenset(),
                        rng_seed: int = 0,
                        rd_params: RankDegreeParams | None = None,
                        max_seeds: int | None = None) -> list[int]:
    """Greedy multi-seed variant: keep buying down the ranking while the
    budget lasts (budget enforcement is implied here)."""
    taken: list[int] = []
    banned = set(excluded)
    while max_seeds is None or len(taken) < max_seeds:
        try:
            node = select_seed(g, method, costs, budget, enforce_budget=True,
                               excluded=banned, rng_seed=rng_seed,
                               rd_params=rd_params)
        except NoAffordableSeedError:
            break
        taken.append(node)
        banned.add(node)
    if not taken:
        raise NoAffordableSeedError(
            f"{budget.player}: could not afford any seed")
    return taken
