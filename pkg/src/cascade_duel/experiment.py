"""End-to-end experiment orchestration with Monte Carlo replication.

One experiment runs: price nodes, give both players a fresh budget,
select seeds simultaneously (player 2 takes the next eligible node on a
conflict), spread both informations, classify supporters, and collect
per-level metrics. Replications have independent RNG streams derived
from the experiment seed, so runs reproduce bit-for-bit on any platform
and under any worker count.
"""

from __future__ import annotations

import csv
import statistics
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import cascade, game, seeding
from .graphs import Graph, gen_er, gen_regular, load_edgelist, spanning_tree


@dataclass
class ExperimentConfig:
    graph_path: str | None = None
    gen: str | None = None            # 'er' | 'regular' | 'tree'
    gen_n: int | None = None
    gen_avg_degree: float | None = None
    gen_degree: int | None = None
    method1: str = "dc"
    method2: str = "dc"
    theta_mode: str = "constant"      # 'constant' | 'uniform_random'
    theta_value: float = 0.0
    enforce_budget: bool = False
    budget1: float = 1.0
    budget2: float = 1.0
    replications: int = 20
    rng_seed: int = 0
    margin: float = 0.05
    out_dir: str | None = None
    workers: int = 1
    rho: float | None = None          # rank-degree: None = max mode
    target_fraction: float = 0.10
    rd_s: int = 1
    strict_forwarding: bool = False
    fixed_seeds: tuple[int, int] | None = None  # bypass selection (replication studies)

    def validate(self) -> None:
        if self.replications < 1:
            raise ValueError("replications must be at least 1")
        if self.graph_path is None and self.gen is None:
            raise ValueError("either a graph file or a generator must be given")
        for m in (self.method1, self.method2):
            if m not in ("dc", "ec", "rd"):
                raise ValueError(f"unknown method {m!r}")


@dataclass
class RepResult:
    rep: int
    seed1: int
    seed2: int
    outcome: cascade.CascadeOutcome
    influence: cascade.InfluenceField


@dataclass
class LevelAggregate:
    info: int
    level: int
    mu_influenced_mean: float
    mu_influenced_var: float | None
    mu_supporter_mean: float
    mu_supporter_var: float | None


@dataclass
class RunResult:
    config: ExperimentConfig
    graph: Graph
    reps: list[RepResult]
    aggregates: list[LevelAggregate] = field(default_factory=list)
    rho1_mean: float = 0.0
    rho2_mean: float = 0.0
    margin_result: game.MarginVerdict | None = None


def resolve_graph(cfg: ExperimentConfig, graph_seed) -> Graph:
    """Load or generate the network named by the config.

    Generators without explicit size parameters inherit the loaded base
    graph's node count and average degree, which is how the comparison
    networks are built.
    """
    base = load_edgelist(cfg.graph_path) if cfg.graph_path else None
    if cfg.gen is None:
        if base is None:
            raise ValueError("no graph source configured")
        return base
    seed_int = int(np.random.default_rng(graph_seed).integers(2**63))
    if cfg.gen == "tree":
        if base is None:
            raise ValueError("tree generation needs a base graph (--graph)")
        return spanning_tree(base, seed_int)
    if cfg.gen == "er":
        n = cfg.gen_n or (base.n if base else None)
        k = cfg.gen_avg_degree or (base.avg_degree if base else None)
        if n is None or k is None:
            raise ValueError("er generation needs --gen-n and --gen-avg-degree "
                             "or a base graph")
        return gen_er(n, k, seed_int)
    if cfg.gen == "regular":
        n = cfg.gen_n or (base.n if base else None)
        d = cfg.gen_degree or (int(round(base.avg_degree)) if base else None)
        if n is None or d is None:
            raise ValueError("regular generation needs --gen-n and --gen-degree "
                             "or a base graph")
        if (n * d) % 2 != 0:
            warnings.warn(f"n*degree odd; bumping degree {d} -> {d + 1}",
                          stacklevel=2)
            d += 1
        return gen_regular(n, d, seed_int)
    raise ValueError(f"unknown generator {cfg.gen!r}")


def _run_rep(g: Graph, cfg: ExperimentConfig, costs: seeding.CostTable,
             rep: int, rep_ss: np.random.SeedSequence) -> RepResult:
    th_ss, tie_ss, rd1_ss, rd2_ss = rep_ss.spawn(4)
    budget1 = seeding.PlayerBudget("P1", cfg.budget1)
    budget2 = seeding.PlayerBudget("P2", cfg.budget2)
    if cfg.fixed_seeds is not None:
        # fixed seeds are given in the source file's original ids
        seed1 = g.internal_id(cfg.fixed_seeds[0])
        seed2 = g.internal_id(cfg.fixed_seeds[1])
    else:
        rd1 = seeding.RankDegreeParams(s=cfg.rd_s, rho=cfg.rho,
                                       target_fraction=cfg.target_fraction,
                                       rng_seed=rd1_ss)
        rd2 = seeding.RankDegreeParams(s=cfg.rd_s, rho=cfg.rho,
                                       target_fraction=cfg.target_fraction,
                                       rng_seed=rd2_ss)
        seed1 = seeding.select_seed(g, cfg.method1, costs, budget1,
                                    enforce_budget=cfg.enforce_budget,
                                    rd_params=rd1)
        seed2 = seeding.select_seed(g, cfg.method2, costs, budget2,
                                    enforce_budget=cfg.enforce_budget,
                                    excluded=frozenset((seed1,)),
                                    rd_params=rd2)
    th = cascade.assign_thresholds(g, mode=cfg.theta_mode,
                                   theta=cfg.theta_value, rng_seed=th_ss)
    fld = cascade.propagate_influence(
        g, seed1, seed2,
        strict_thresholds=th if cfg.strict_forwarding else None)
    outcome = cascade.classify(fld, th, tie_rng_seed=tie_ss)
    return RepResult(rep=rep, seed1=seed1, seed2=seed2, outcome=outcome,
                     influence=fld)


def _aggregate(result: RunResult) -> None:
    reps = result.reps
    n_reps = len(reps)
    max_level = max(row.outcome.per_level[-1][0] for row in reps)

    def series(rep: RepResult, info: int, which: str) -> list[float]:
        col = {("influenced", 1): 1, ("influenced", 2): 2,
               ("supporter", 1): 3, ("supporter", 2): 4}[(which, info)]
        vals = [row[col] for row in rep.outcome.per_level]
        # cumulative curves saturate; pad shallower trees with their final value
        vals += [vals[-1]] * (max_level + 1 - len(vals))
        return vals

    aggs = []
    for info in (1, 2):
        inf_series = [series(r, info, "influenced") for r in reps]
        sup_series = [series(r, info, "supporter") for r in reps]
        for lvl in range(max_level + 1):
            inf_vals = [s[lvl] for s in inf_series]
            sup_vals = [s[lvl] for s in sup_series]
            aggs.append(LevelAggregate(
                info=info, level=lvl,
                mu_influenced_mean=statistics.fmean(inf_vals),
                mu_influenced_var=(statistics.variance(inf_vals)
                                   if n_reps > 1 else None),
                mu_supporter_mean=statistics.fmean(sup_vals),
                mu_supporter_var=(statistics.variance(sup_vals)
                                  if n_reps > 1 else None)))
    result.aggregates = aggs
    n = result.graph.n
    result.rho1_mean = statistics.fmean(
        len(r.outcome.supporters1) / n for r in reps)
    result.rho2_mean = statistics.fmean(
        len(r.outcome.supporters2) / n for r in reps)
    result.margin_result = game.margin_verdict(result.rho1_mean,
                                               result.rho2_mean,
                                               result.config.margin)


def run_experiment(cfg: ExperimentConfig, graph: Graph | None = None) -> RunResult:
    """Run all replications; write CSVs if an output directory is set.

    On a replication failure, everything completed so far is still
    written out before the error is re-raised with the failing index.
    """
    cfg.validate()
    root = np.random.SeedSequence(cfg.rng_seed)
    graph_ss, exp_ss = root.spawn(2)
    g = graph if graph is not None else resolve_graph(cfg, graph_ss)
    costs = seeding.compute_costs(g)
    rep_streams = exp_ss.spawn(cfg.replications)
    result = RunResult(config=cfg, graph=g, reps=[])
    try:
        if cfg.workers > 1:
            with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
                futures = [pool.submit(_run_rep, g, cfg, costs, r, rep_streams[r])
                           for r in range(cfg.replications)]
                for r, fut in enumerate(futures):
                    try:
                        result.reps.append(fut.result())
                    except Exception as exc:
                        raise RuntimeError(f"replication {r} failed: {exc}") from exc
        else:
            for r in range(cfg.replications):
                try:
                    result.reps.append(_run_rep(g, cfg, costs, r, rep_streams[r]))
                except Exception as exc:
                    raise RuntimeError(f"replication {r} failed: {exc}") from exc
    except Exception:
        if result.reps and cfg.out_dir:
            write_run_csvs(result, cfg.out_dir)
        raise
    _aggregate(result)
    if cfg.out_dir:
        write_run_csvs(result, cfg.out_dir)
    return result


# -- CSV emission -----------------------------------------------------------

def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def emit_csv(path, header: list[str], rows) -> Path:
    """UTF-8 CSV with fixed header; floats get 12 significant digits."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_fmt(x) for x in row])
    except OSError as exc:
        raise OSError(f"failed writing CSV {path}: {exc}") from exc
    return path


def write_run_csvs(result: RunResult, out_dir) -> dict[str, Path]:
    """levels.csv, influence.csv, summary.csv, aggregate.csv, verdict.csv."""
    out = Path(out_dir)
    cfg = result.config
    g = result.graph
    paths = {}

    level_rows = []
    for rep in result.reps:
        for (lvl, mi1, mi2, ms1, ms2) in rep.outcome.per_level:
            level_rows.append((rep.rep, cfg.method1, 1, lvl, mi1, ms1))
            level_rows.append((rep.rep, cfg.method2, 2, lvl, mi2, ms2))
    level_rows.sort(key=lambda r: (r[0], r[2], r[3]))
    paths["levels"] = emit_csv(
        out / "levels.csv",
        ["rep", "method", "info", "level", "mu_influenced", "mu_supporter"],
        level_rows)

    influence_rows = []
    for rep in result.reps:
        fld = rep.influence
        for info, alphas, levels in ((1, fld.alpha1_of, fld.levels1),
                                     (2, fld.alpha2_of, fld.levels2)):
            for v in range(g.n):
                lvl = levels.level(v)
                if lvl is None:
                    continue
                influence_rows.append((rep.rep, info, g.original_id(v), lvl,
                                       float(alphas[v])))
    influence_rows.sort(key=lambda r: (r[0], r[1], r[2]))
    paths["influence"] = emit_csv(
        out / "influence.csv",
        ["rep", "info", "node", "level", "alpha"],
        influence_rows)

    summary_rows = []
    for rep in result.reps:
        o = rep.outcome
        summary_rows.append((rep.rep, g.original_id(rep.seed1),
                             g.original_id(rep.seed2), len(o.supporters1),
                             len(o.supporters2), len(o.uninformed),
                             o.verdict.value))
    paths["summary"] = emit_csv(
        out / "summary.csv",
        ["rep", "seed1", "seed2", "supporters1", "supporters2", "uninformed",
         "verdict"],
        summary_rows)

    if result.aggregates:
        agg_rows = []
        for a in result.aggregates:
            inf_std = None if a.mu_influenced_var is None else a.mu_influenced_var ** 0.5
            sup_std = None if a.mu_supporter_var is None else a.mu_supporter_var ** 0.5
            agg_rows.append((a.info, a.level,
                             a.mu_influenced_mean, a.mu_influenced_var, inf_std,
                             a.mu_supporter_mean, a.mu_supporter_var, sup_std))
        paths["aggregate"] = emit_csv(
            out / "aggregate.csv",
            ["info", "level", "mu_influenced_mean", "mu_influenced_var",
             "mu_influenced_std", "mu_supporter_mean", "mu_supporter_var",
             "mu_supporter_std"],
            agg_rows)

    if result.margin_result is not None:
        mv = result.margin_result
        paths["verdict"] = emit_csv(
            out / "verdict.csv",
            ["rho1_mean", "rho2_mean", "margin", "verdict"],
            [(mv.rho1, mv.rho2, mv.margin, mv.verdict.value)])
    return paths


def rerun_with(cfg: ExperimentConfig, **overrides) -> ExperimentConfig:
    return replace(cfg, **overrides)
