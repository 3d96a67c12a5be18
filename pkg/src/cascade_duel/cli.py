"""Command-line front end.

Subcommands: `simulate` (cascade experiments), `meanfield`
(trajectory / sweep / contour), `game` (positions / best-response /
nash / verdict), `gen` (synthetic graphs), and `stats` (network
statistics). The default output directory comes from the
CASCADE_DUEL_OUT environment variable, falling back to ./out.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import game as game_mod
from . import meanfield
from .experiment import ExperimentConfig, emit_csv, run_experiment
from .graphs import compute_stats, gen_er, gen_regular, load_edgelist, spanning_tree


def _default_out() -> str:
    return os.environ.get("CASCADE_DUEL_OUT", "out")


def _parse_theta(text: str) -> tuple[str, float]:
    if text == "uniform":
        return "uniform_random", 0.0
    if text.startswith("const:"):
        return "constant", float(text.split(":", 1)[1])
    raise argparse.ArgumentTypeError(
        f"--theta must be 'const:<value>' or 'uniform', got {text!r}")


def _load_config_file(path: str) -> dict:
    """key=value lines; '#' comments. Values are parsed leniently."""
    values: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, _, raw = stripped.partition("=")
            key = key.strip().replace("-", "_")
            raw = raw.strip()
            if raw.lower() in ("true", "false"):
                values[key] = raw.lower() == "true"
            else:
                try:
                    values[key] = int(raw)
                except ValueError:
                    try:
                        values[key] = float(raw)
                    except ValueError:
                        values[key] = raw
    if "theta" in values and isinstance(values["theta"], str):
        values["theta"] = _parse_theta(values["theta"])
    return values


class _StrictParser(argparse.ArgumentParser):
    """Subparser without prefix abbreviation, so typos are usage errors."""

    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)


def build_parser() -> tuple[argparse.ArgumentParser, dict]:
    parser = argparse.ArgumentParser(
        prog="cascade-duel", allow_abbrev=False,
        description="Competitive two-player information diffusion simulator")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_StrictParser)
    subparsers = {}

    sim = sub.add_parser("simulate", help="run a replicated cascade experiment")
    subparsers["simulate"] = sim
    sim.add_argument("--graph", help="edge-list file (SNAP format)")
    sim.add_argument("--gen", choices=["er", "regular", "tree"],
                     help="generate the network instead of / from --graph")
    sim.add_argument("--gen-n", type=int)
    sim.add_argument("--gen-avg-degree", type=float)
    sim.add_argument("--gen-degree", type=int)
    sim.add_argument("--method1", choices=["dc", "ec", "rd"], default="dc")
    sim.add_argument("--method2", choices=["dc", "ec", "rd"], default="dc")
    sim.add_argument("--theta", type=_parse_theta, default=("constant", 0.0),
                     help="const:<v> or uniform (default const:0)")
    sim.add_argument("--enforce-budget", action="store_true")
    sim.add_argument("--budget", type=float, default=1.0,
                     help="initial budget for both players")
    sim.add_argument("--reps", type=int, default=20)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--margin", type=float, default=0.05)
    sim.add_argument("--out", default=None, help="output directory")
    sim.add_argument("--workers", type=int, default=1)
    sim.add_argument("--rho", type=float, default=None,
                     help="rank-degree friend fraction; omit for max mode")
    sim.add_argument("--target-fraction", type=float, default=0.10)
    sim.add_argument("--rd-s", type=int, default=1,
                     help="rank-degree initial seed count")
    sim.add_argument("--strict-forwarding", action="store_true",
                     help="sub-threshold nodes do not forward influence")
    sim.add_argument("--seeds", default=None,
                     help="fixed 'u,v' seed pair in original ids "
                          "(bypasses method selection)")
    sim.add_argument("--config", default=None,
                     help="key=value config file; explicit flags win")

    mf = sub.add_parser("meanfield", help="six-compartment mean-field dynamics")
    mf_sub = mf.add_subparsers(dest="mf_command", required=True)
    traj = mf_sub.add_parser("trajectory", help="integrate one (beta1, beta2) pair")
    traj.add_argument("--beta1", type=float, required=True)
    traj.add_argument("--beta2", type=float, required=True)
    traj.add_argument("--a0", type=float, default=0.0005)
    traj.add_argument("--b0", type=float, default=0.0005)
    traj.add_argument("--dt", type=float, default=0.01)
    traj.add_argument("--t-end", type=float, default=200.0)
    traj.add_argument("--steady-tol", type=float, default=1e-6)
    traj.add_argument("--out", default=None,
                      help="output CSV (default <outdir>/trajectory.csv)")
    for name in ("sweep", "contour"):
        p = mf_sub.add_parser(name)
        p.add_argument("--beta-max", type=float, default=20.0)
        p.add_argument("--resolution", type=int, default=101)
        p.add_argument("--a0", type=float, default=0.0005)
        p.add_argument("--b0", type=float, default=0.0005)
        p.add_argument("--dt", type=float, default=0.01)
        p.add_argument("--t-end", type=float, default=200.0)
        p.add_argument("--steady-tol", type=float, default=1e-6)
        p.add_argument("--out", default=None)

    gm = sub.add_parser("game", help="Hotelling positions and equilibrium")
    gm_sub = gm.add_subparsers(dest="game_command", required=True)
    pos = gm_sub.add_parser("positions")
    pos.add_argument("--frac1", type=float, required=True)
    pos.add_argument("--frac2", type=float, required=True)
    pos.add_argument("--basis", choices=["informed", "supporter"],
                     default="informed")
    br = gm_sub.add_parser("best-response")
    br.add_argument("--firm", type=int, choices=[1, 2], required=True)
    br.add_argument("--opponent", type=float)
    br.add_argument("--sweep", action="store_true",
                    help="tabulate responses over an opponent grid")
    br.add_argument("--step", type=float, default=0.01)
    br.add_argument("--out", default=None)
    na = gm_sub.add_parser("nash")
    na.add_argument("--step", type=float, default=0.01)
    vd = gm_sub.add_parser("verdict")
    vd.add_argument("--rho1", type=float, required=True)
    vd.add_argument("--rho2", type=float, required=True)
    vd.add_argument("--margin", type=float, default=0.05)

    gen = sub.add_parser("gen", help="generate a synthetic graph")
    gen_sub = gen.add_subparsers(dest="gen_command", required=True)
    er = gen_sub.add_parser("er")
    er.add_argument("--n", type=int, required=True)
    er.add_argument("--avg-degree", type=float, required=True)
    reg = gen_sub.add_parser("regular")
    reg.add_argument("--n", type=int, required=True)
    reg.add_argument("--degree", type=int, required=True)
    tree = gen_sub.add_parser("tree")
    tree.add_argument("--graph", required=True, help="base edge-list file")
    for p in (er, reg, tree):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", required=True, help="output edge-list file")

    st = sub.add_parser("stats", help="network statistics")
    st.add_argument("--graph", required=True)
    return parser, subparsers


def _cmd_simulate(args) -> int:
    theta_mode, theta_value = args.theta
    fixed = None
    if args.seeds:
        u, v = args.seeds.split(",")
        fixed = (int(u), int(v))
    cfg = ExperimentConfig(
        graph_path=args.graph, gen=args.gen, gen_n=args.gen_n,
        gen_avg_degree=args.gen_avg_degree, gen_degree=args.gen_degree,
        method1=args.method1, method2=args.method2,
        theta_mode=theta_mode, theta_value=theta_value,
        enforce_budget=args.enforce_budget,
        budget1=args.budget, budget2=args.budget,
        replications=args.reps, rng_seed=args.seed, margin=args.margin,
        out_dir=args.out or _default_out(), workers=args.workers,
        rho=args.rho, target_fraction=args.target_fraction, rd_s=args.rd_s,
        strict_forwarding=args.strict_forwarding, fixed_seeds=fixed)
    result = run_experiment(cfg)
    mv = result.margin_result
    print(f"replications={len(result.reps)}")
    print(f"rho1_mean={mv.rho1:.6f} rho2_mean={mv.rho2:.6f} "
          f"margin={mv.margin} verdict={mv.verdict.value}")
    print(f"outputs written to {cfg.out_dir}")
    return 0


def _cmd_meanfield(args) -> int:
    init = meanfield.initial_state(a0=args.a0, b0=args.b0)
    out_dir = Path(_default_out())
    if args.mf_command == "trajectory":
        traj = meanfield.integrate(init, meanfield.RateParams(args.beta1, args.beta2),
                                   dt=args.dt, t_end=args.t_end,
                                   steady_tol=args.steady_tol)
        rows = [(float(t), *map(float, row))
                for t, row in zip(traj.times, traj.values)]
        path = args.out or out_dir / "trajectory.csv"
        emit_csv(path, ["t", "S", "A", "B", "AB", "a", "b"], rows)
        final = traj.final
        print(f"steady={traj.steady_state_reached} t_steady={traj.steady_time}")
        print(f"final a={final.a:.6g} b={final.b:.6g} S={final.S:.6g}")
        print(f"wrote {path}")
        return 0
    betas = np.linspace(0.0, args.beta_max, args.resolution)
    grid = meanfield.sweep_grid(init, betas, betas, dt=args.dt,
                                t_end=args.t_end, steady_tol=args.steady_tol)
    if args.mf_command == "sweep":
        rows = []
        for i, b1 in enumerate(betas):
            for j, b2 in enumerate(betas):
                f = grid.final[i, j]
                pk = grid.peak[i, j]
                rows.append((float(b1), float(b2), f[0], f[1], f[2], f[3],
                             f[4], f[5], float(grid.ratio[i, j]),
                             pk[0], pk[1], pk[2]))
        path = args.out or out_dir / "grid.csv"
        emit_csv(path, ["beta1", "beta2", "S", "A", "B", "AB", "a", "b",
                        "a_over_ab", "peak_A", "peak_B", "peak_AB"], rows)
        print(f"wrote {path}")
        return 0
    pts = meanfield.contour_equilibrium(grid)
    path = args.out or out_dir / "contour.csv"
    emit_csv(path, ["beta1", "beta2"], pts)
    print(f"wrote {path} ({len(pts)} points)")
    return 0


def _cmd_game(args) -> int:
    if args.game_command == "positions":
        pm = game_mod.positions(args.frac1, args.frac2, basis=args.basis)
        print("basis,frac1,frac2,position1,position2,overlap_lo,overlap_hi")
        ov_lo = f"{pm.overlap[0]:g}" if pm.overlap else ""
        ov_hi = f"{pm.overlap[1]:g}" if pm.overlap else ""
        print(f"{pm.basis},{pm.frac1:g},{pm.frac2:g},{pm.position1:g},"
              f"{pm.position2:g},{ov_lo},{ov_hi}")
        return 0
    if args.game_command == "best-response":
        if args.sweep:
            rows = []
            k = int(round(1.0 / args.step))
            for i in range(k + 1):
                opp = i / k
                rs = game_mod.best_response(args.firm, opp).response_set
                rows.append((opp,
                             "" if rs.is_empty() else rs.lo,
                             "" if rs.is_empty() else rs.hi,
                             int(rs.lo_open), int(rs.hi_open),
                             int(rs.undefined)))
            path = args.out or Path(_default_out()) / f"best_response_firm{args.firm}.csv"
            emit_csv(path, ["opponent_pos", "lo", "hi", "lo_open", "hi_open",
                            "undefined"], rows)
            print(f"wrote {path}")
            return 0
        if args.opponent is None:
            print("error: --opponent required without --sweep", file=sys.stderr)
            return 2
        rs = game_mod.best_response(args.firm, args.opponent).response_set
        if rs.undefined:
            print("undefined")
        elif rs.lo == rs.hi:
            print(f"{{{rs.lo:g}}}")
        else:
            lo_b = "(" if rs.lo_open else "["
            hi_b = ")" if rs.hi_open else "]"
            print(f"{lo_b}{rs.lo:g}, {rs.hi:g}{hi_b}")
        return 0
    if args.game_command == "nash":
        x1, x2 = game_mod.nash(step=args.step)
        print(f"{x1:g},{x2:g}")
        return 0
    mv = game_mod.margin_verdict(args.rho1, args.rho2, args.margin)
    print(f"{mv.rho1:g},{mv.rho2:g},{mv.margin:g},{mv.verdict.value}")
    return 0


def _cmd_gen(args) -> int:
    if args.gen_command == "er":
        g = gen_er(args.n, args.avg_degree, args.seed)
    elif args.gen_command == "regular":
        g = gen_regular(args.n, args.degree, args.seed)
    else:
        g = spanning_tree(load_edgelist(args.graph), args.seed)
    g.export_edgelist(args.out)
    print(f"wrote {args.out}: nodes={g.n} edges={g.num_edges}")
    return 0


def _cmd_stats(args) -> int:
    g = load_edgelist(args.graph)
    s = compute_stats(g)
    print(f"nodes={s.nodes}")
    print(f"edges={s.edges}")
    print(f"avg_degree={s.avg_degree:.6g}")
    print(f"avg_clustering={s.avg_clustering:.6g}")
    print(f"triangles={s.triangles}")
    print(f"diameter={s.diameter}")
    return 0


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser, subparsers = build_parser()
    # config file supplies defaults for `simulate`; explicit flags win
    if argv and argv[0] == "simulate" and ("--config" in argv):
        idx = argv.index("--config")
        if idx + 1 < len(argv):
            try:
                subparsers["simulate"].set_defaults(
                    **_load_config_file(argv[idx + 1]))
            except OSError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return 1
    args = parser.parse_args(argv)
    handlers = {"simulate": _cmd_simulate, "meanfield": _cmd_meanfield,
                "game": _cmd_game, "gen": _cmd_gen, "stats": _cmd_stats}
    try:
        return handlers[args.command](args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
