"""Command-line entry point: named checks and raw-data dumps.

``snakemin check <name>`` runs one verification check (or ``all``), writes
the verdict lines, raw samples, and diagnostic figures into the output
directory, prints one pass/fail line per check, and exits 0 only if every
check passed (1 on a statistical failure, 2 on usage or configuration
errors).  ``snakemin dump <kind>`` writes raw simulation output for external
tooling; schemas are described in ``--help``.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys

import numpy as np

from snakemin import report as report_mod
from snakemin import sde, snake, spine, superbm
from snakemin.checks import CHECK_NAMES, DEFAULT_MASTER_SEED, run_check
from snakemin.rng import RngStream

__all__ = ["RunConfig", "main"]

DUMP_KINDS = ["snake-trajectory", "spine-sample", "super-samples",
              "bessel-paths"]


@dataclasses.dataclass
class RunConfig:
    """Everything a run depends on; serialized alongside every output."""

    master_seed: int = DEFAULT_MASTER_SEED
    n: int | None = None
    dt: float | None = None
    ds: float | None = None
    eps: float | None = None
    trunc_eps: float | None = None
    alpha_level: float = 0.01
    output_dir: str = "out"
    format: str = "csv"

    def validate(self) -> None:
        if self.n is not None and self.n <= 0:
            raise ValueError("n must be positive")
        for name in ("dt", "ds", "eps", "trunc_eps"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ValueError("%s must be positive" % name)
        if not 0.0 < self.alpha_level < 1.0:
            raise ValueError("alpha_level must lie in (0, 1)")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be 'csv' or 'json'")


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="snakemin",
        description="Seeded Monte Carlo verification of tree-indexed "
                    "path-minimum laws.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--config", help="JSON file with RunConfig fields; "
                                         "flags override it")
        sp.add_argument("--seed", type=int, help="master seed")
        sp.add_argument("--n", type=int, help="replicate count override")
        sp.add_argument("--dt", type=float, help="diffusion step override")
        sp.add_argument("--ds", type=float, help="tree-time step override")
        sp.add_argument("--eps", type=float,
                        help="excursion height floor override")
        sp.add_argument("--trunc-eps", type=float, dest="trunc_eps",
                        help="subtree truncation height override")
        sp.add_argument("--alpha", type=float, dest="alpha_level",
                        help="test level (default 0.01)")
        sp.add_argument("--out", dest="output_dir", help="output directory")
        sp.add_argument("--format", choices=["csv", "json"],
                        help="raw-sample file format")

    pc = sub.add_parser("check", help="run a named verification check")
    pc.add_argument("name", choices=CHECK_NAMES + ["all"])
    add_common(pc)

    pd = sub.add_parser(
        "dump", help="write raw simulation data",
        description="Schemas: bessel-paths CSV (replicate,t,value); "
                    "super-samples CSV (m_X,w0,duration); snake-trajectory "
                    "CSV (s,zeta,tip) plus a JSON sidecar with the resolved "
                    "minimum; spine-sample JSON (depth, spine path, subtree "
                    "list).")
    pd.add_argument("kind", choices=DUMP_KINDS)
    add_common(pd)
    return p


def _load_config(args) -> RunConfig:
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    values = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            loaded = json.load(fh)
        unknown = set(loaded) - fields
        if unknown:
            raise ValueError("unknown config fields: %s" % sorted(unknown))
        values.update(loaded)
    for attr, key in (("seed", "master_seed"), ("n", "n"), ("dt", "dt"),
                      ("ds", "ds"), ("eps", "eps"),
                      ("trunc_eps", "trunc_eps"),
                      ("alpha_level", "alpha_level"),
                      ("output_dir", "output_dir"), ("format", "format")):
        v = getattr(args, attr, None)
        if v is not None:
            values[key] = v
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


def _run_checks(name: str, cfg: RunConfig) -> int:
    results = run_check(name, master_seed=cfg.master_seed, n=cfg.n,
                        dt=cfg.dt, ds=cfg.ds, eps=cfg.eps,
                        trunc_eps=cfg.trunc_eps, alpha_level=cfg.alpha_level)
    report_mod.write_run(results, dataclasses.asdict(cfg), cfg.output_dir,
                         cfg.format)
    all_pass = True
    for res in results:
        rep = res.report
        pbit = "" if rep.p_value is None else "  p=%.4g" % rep.p_value
        print("%s  %-18s statistic=%.4g  threshold=%.4g%s  n=%d  (%.1fs)"
              % ("PASS" if rep.passed else "FAIL", rep.check_id,
                 rep.statistic, rep.threshold, pbit, rep.n,
                 rep.runtime_seconds))
        all_pass = all_pass and rep.passed
    return 0 if all_pass else 1


def _write_csv(path: str, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def _dump(kind: str, cfg: RunConfig) -> int:
    os.makedirs(cfg.output_dir, exist_ok=True)
    rng = RngStream(cfg.master_seed, 0)
    out = os.path.join(cfg.output_dir, kind.replace("-", "_"))
    if kind == "bessel-paths":
        n = cfg.n or 10
        dt = cfg.dt or 1e-3
        rows = []
        for i in range(n):
            p = sde.simulate_bessel(
                sde.BesselConfig(alpha=3.0, r0=1.0, dt=dt), rng.substream(i))
            rows += [(i, "%.10g" % t, "%.10g" % v)
                     for t, v in zip(p.times, p.values)]
        _write_csv(out + ".csv", ["replicate", "t", "value"], rows)
    elif kind == "super-samples":
        n = cfg.n or 1000
        dt = cfg.dt or 1e-3
        mu = superbm.FiniteMeasure1D.dirac(1.0)
        rows = []
        for i in range(n):
            s = superbm.sample_wmin(mu, dt, rng.substream(i))
            rows.append(("%.10g" % s.m_X,
                         "" if s.w0 is None else "%.10g" % s.w0,
                         "%.10g" % s.path.lifetime))
        _write_csv(out + ".csv", ["m_X", "w0", "duration"], rows)
    elif kind == "snake-trajectory":
        traj = snake.simulate_snake(cfg.eps or 0.01, cfg.ds or 1e-3,
                                    cfg.dt or 5e-3, rng, keep_log=False)
        sg = traj.excursion.sgrid
        zt = traj.excursion.zeta
        _write_csv(out + ".csv", ["s", "zeta", "tip"],
                   [("%.10g" % s, "%.10g" % z, "%.10g" % w)
                    for s, z, w in zip(sg, zt, traj.tips)])
        sidecar = {
            "wstar": traj.wstar, "sm_index": traj.sm_index,
            "min_lifetime": traj.min_lifetime,
            "min_path": {"grid": traj.min_path.grid.tolist(),
                         "values": traj.min_path.values.tolist()},
            "eps": traj.eps, "ds": traj.ds, "dt": traj.dt,
            "master_seed": cfg.master_seed,
        }
        with open(out + ".json", "w", encoding="utf-8") as fh:
            json.dump(sidecar, fh)
            fh.write("\n")
    elif kind == "spine-sample":
        s = spine.build_spine_sample(1.0, rng,
                                     trunc_eps=cfg.trunc_eps or 1e-3,
                                     ds=cfg.ds or 1e-3, dt=cfg.dt or 5e-3)
        payload = {
            "depth": s.depth, "trunc_eps": s.trunc_eps,
            "min_path": {"grid": s.min_path.grid.tolist(),
                         "values": s.min_path.values.tolist()},
            "subtrees": [{"side": t.side,
                          "attach_lifetime": t.attach_lifetime,
                          "attach_value": t.attach_value,
                          "min_value": t.min_value,
                          "height": t.height} for t in s.subtrees],
            "master_seed": cfg.master_seed,
        }
        with open(out + ".json", "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
            fh.write("\n")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2
    try:
        if args.command == "check":
            return _run_checks(args.name, cfg)
        return _dump(args.kind, cfg)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
