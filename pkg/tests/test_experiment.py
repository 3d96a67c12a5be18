from __future__ import annotations

import hashlib
import subprocess
import sys

import numpy as np
import pytest

from cascade_duel import experiment
from cascade_duel.cascade import Verdict
from cascade_duel.experiment import (ExperimentConfig, emit_csv,
                                     run_experiment, resolve_graph)
from cascade_duel.game import GameVerdict
from cascade_duel.graphs import load_edgelist

from conftest import SAMPLE_EDGES


@pytest.fixture()
def sample_file(tmp_path):
    p = tmp_path / "sample.txt"
    p.write_text("# sample\n" + "\n".join(f"{u} {v}" for u, v in SAMPLE_EDGES),
                 encoding="utf-8")
    return p


def file_hash(path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


class TestRunExperiment:
    def test_worked_example_tie(self, sample_file, tmp_path):
        cfg = ExperimentConfig(graph_path=str(sample_file), fixed_seeds=(2, 5),
                               replications=1, rng_seed=7,
                               out_dir=str(tmp_path / "out"))
        result = run_experiment(cfg)
        out = result.reps[0].outcome
        assert out.verdict is Verdict.TIE
        assert len(out.supporters1) == 5 and len(out.supporters2) == 5
        influence = (tmp_path / "out" / "influence.csv").read_text()
        assert "0,1,3,1,0.444444444444" in influence
        # variance columns are absent (not zero) for a single replication
        agg = (tmp_path / "out" / "aggregate.csv").read_text().splitlines()
        assert agg[1].split(",")[3] == ""

    def test_determinism_same_seed(self, sample_file, tmp_path):
        hashes = []
        for d in ("a", "b"):
            cfg = ExperimentConfig(graph_path=str(sample_file), method1="rd",
                                   method2="dc", theta_mode="uniform_random",
                                   replications=3, rng_seed=123,
                                   out_dir=str(tmp_path / d))
            run_experiment(cfg)
            hashes.append(tuple(file_hash(p) for p in sorted(
                (tmp_path / d).glob("*.csv"))))
        assert hashes[0] == hashes[1]

    def test_workers_do_not_change_results(self, sample_file, tmp_path):
        hashes = []
        for d, workers in (("w1", 1), ("w4", 4)):
            cfg = ExperimentConfig(graph_path=str(sample_file),
                                   theta_mode="uniform_random",
                                   replications=6, rng_seed=9, workers=workers,
                                   out_dir=str(tmp_path / d))
            run_experiment(cfg)
            hashes.append(tuple(file_hash(p) for p in sorted(
                (tmp_path / d).glob("*.csv"))))
        assert hashes[0] == hashes[1]

    def test_aggregate_matches_naive_mean(self, sample_file):
        cfg = ExperimentConfig(graph_path=str(sample_file),
                               theta_mode="uniform_random", replications=5,
                               rng_seed=11)
        result = run_experiment(cfg)
        max_level = max(r.outcome.per_level[-1][0] for r in result.reps)
        for agg in result.aggregates:
            col = 1 if agg.info == 1 else 2
            vals = []
            for rep in result.reps:
                rows = rep.outcome.per_level
                lvl = min(agg.level, len(rows) - 1)
                vals.append(rows[lvl][col])
            assert agg.mu_influenced_mean == pytest.approx(np.mean(vals))
            assert agg.mu_influenced_var == pytest.approx(np.var(vals, ddof=1))
        assert agg.level == max_level

    def test_margin_verdict_on_means(self, sample_file):
        cfg = ExperimentConfig(graph_path=str(sample_file), fixed_seeds=(2, 5),
                               replications=2, rng_seed=1)
        result = run_experiment(cfg)
        assert result.margin_result.verdict is GameVerdict.EQUILIBRIUM
        assert result.rho1_mean == pytest.approx(0.5)

    def test_simultaneous_conflict_second_player_shifts(self, sample_file):
        cfg = ExperimentConfig(graph_path=str(sample_file), method1="dc",
                               method2="dc", replications=1, rng_seed=0)
        result = run_experiment(cfg)
        g = result.graph
        assert g.original_id(result.reps[0].seed1) == 7
        assert g.original_id(result.reps[0].seed2) == 2  # next-ranked

    def test_partial_results_persisted_on_failure(self, sample_file, tmp_path,
                                                  monkeypatch):
        real = experiment._run_rep

        def flaky(g, cfg, costs, rep, rep_ss):
            if rep == 2:
                raise RuntimeError("boom")
            return real(g, cfg, costs, rep, rep_ss)

        monkeypatch.setattr(experiment, "_run_rep", flaky)
        out = tmp_path / "partial"
        cfg = ExperimentConfig(graph_path=str(sample_file), replications=4,
                               rng_seed=3, out_dir=str(out))
        with pytest.raises(RuntimeError, match="replication 2"):
            run_experiment(cfg)
        summary = (out / "summary.csv").read_text().splitlines()
        assert len(summary) == 3  # header + reps 0 and 1

    def test_validation(self):
        with pytest.raises(ValueError):
            run_experiment(ExperimentConfig(replications=0, graph_path="x"))
        with pytest.raises(ValueError):
            ExperimentConfig(graph_path="x", method1="pagerank").validate()
        with pytest.raises(ValueError):
            ExperimentConfig().validate()


class TestResolveGraph:
    def test_generators_inherit_base_properties(self, sample_file):
        cfg = ExperimentConfig(graph_path=str(sample_file), gen="er")
        g = resolve_graph(cfg, np.random.SeedSequence(0))
        assert g.n == 10
        cfg = ExperimentConfig(graph_path=str(sample_file), gen="tree")
        t = resolve_graph(cfg, np.random.SeedSequence(0))
        assert t.num_edges == t.n - 1

    def test_er_explicit_params(self):
        cfg = ExperimentConfig(gen="er", gen_n=40, gen_avg_degree=4.0)
        g = resolve_graph(cfg, np.random.SeedSequence(1))
        assert g.n == 40

    def test_missing_params_error(self):
        with pytest.raises(ValueError):
            resolve_graph(ExperimentConfig(gen="er"), np.random.SeedSequence(0))
        with pytest.raises(ValueError):
            resolve_graph(ExperimentConfig(gen="tree"), np.random.SeedSequence(0))


class TestEmitCsv:
    def test_header_only(self, tmp_path):
        p = emit_csv(tmp_path / "empty.csv", ["a", "b"], [])
        assert p.read_text() == "a,b\n"

    def test_twelve_significant_digits(self, tmp_path):
        p = emit_csv(tmp_path / "f.csv", ["x"], [(4 / 9,), (1 / 3,)])
        assert p.read_text().splitlines()[1] == "0.444444444444"

    def test_unwritable_path(self, tmp_path):
        target = tmp_path / "file.csv"
        target.write_text("x")
        with pytest.raises(OSError):
            emit_csv(target / "nested.csv", ["a"], [])
