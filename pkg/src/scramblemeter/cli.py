"""Command-line front end.

Subcommands: imin, lmg-sweep, lmg-tscramble, qecc, hmin. Exit codes:
0 success, 2 usage/parse error, 3 domain error (no subsystem of the
requested dimension). All randomness derives from a single --seed through
per-task counter-based streams, so outputs are byte-identical across runs
and thread counts.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import serialize
from .engine import NoSubsystemError, SeesawConfig, imin_acc
from .infotheory import CqState, h_min_cond
from .lmg import SweepRecord, imin_timeseries, logfit, scrambling_time_direct
from .qecc import builtin_code, check_t_scrambler
from .qstate import ValidationError

SWEEP_HEADER = "N,h,t,imin_bits,best_num_effects,restarts_agreeing,iterations"
TSCRAMB_HEADER = "N,h,t_scramb"
FIT_HEADER = "h,slope,intercept,r_squared"


def _resolve_threads(flag_value, flag_given: bool) -> int:
    # explicit flag beats the environment; the environment beats the default
    if flag_given:
        return max(1, int(flag_value))
    env = os.environ.get("SCRAMBLEMETER_THREADS")
    if env is not None:
        return max(1, int(env))
    return max(1, os.cpu_count() or 1)


def _parse_effects(spec: str) -> tuple[int, int]:
    try:
        lo, hi = spec.split("..")
        return int(lo), int(hi)
    except ValueError as exc:
        raise ValidationError(f"bad effects range '{spec}', expected LO..HI") from exc


def _parse_float_list(spec: str):
    try:
        return [float(x) for x in spec.split(",") if x]
    except ValueError as exc:
        raise ValidationError(f"bad numeric list '{spec}'") from exc


def _parse_int_list(spec: str):
    try:
        return [int(x) for x in spec.split(",") if x]
    except ValueError as exc:
        raise ValidationError(f"bad integer list '{spec}'") from exc


def _write_lines(lines, path):
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return f"{x:.6f}"


def _sweep_rows(records):
    yield SWEEP_HEADER
    for r in records:
        yield (
            f"{r.N},{_fmt(r.h)},{_fmt(r.t)},{_fmt(r.value_bits)},"
            f"{r.best_num_effects},{r.restarts_agreeing},{r.iterations}"
        )


def cmd_imin(args) -> int:
    obj = serialize.load_json(args.isometry)
    v = serialize.isometry_from_json(obj)
    cfg = SeesawConfig(
        effects_range=_parse_effects(args.effects) if args.effects else None,
        restarts=args.restarts,
        seed=args.seed,
    )
    res = imin_acc(v, args.k, cfg)
    print(f"imin_bits {res.value_bits:.6f}")
    print(f"best_subsystem {list(res.best_subsystem.sites)}")
    print(f"best_num_effects {res.best_num_effects}")
    print(f"restarts_agreeing {res.restarts_agreeing}/{res.total_restarts}"
          + (" (fragile)" if res.fragile else ""))
    if args.out:
        report = {
            "imin_bits": res.value_bits,
            "best_subsystem": list(res.best_subsystem.sites),
            "best_num_effects": res.best_num_effects,
            "per_X_values": {str(k): v for k, v in sorted(res.per_X_values.items())},
            "restarts_agreeing": res.restarts_agreeing,
            "total_restarts": res.total_restarts,
            "fragile": res.fragile,
            "best_povm": [serialize.matrix_to_json(e) for e in res.best_povm.effects],
        }
        serialize.dump_json(report, args.out)
    return 0


def cmd_lmg_sweep(args) -> int:
    if args.t_max <= 0 or args.t_step <= 0:
        raise ValidationError("t-max and t-step must be positive")
    threads = _resolve_threads(args.threads, args.threads is not None)
    cfg = SeesawConfig(
        effects_range=_parse_effects(args.effects),
        restarts=args.restarts,
        seed=args.seed,
    )
    n_steps = int(round(args.t_max / args.t_step))
    t_grid = [i * args.t_step for i in range(n_steps + 1)]
    records: list[SweepRecord] = []
    for h in _parse_float_list(args.h):
        records.extend(imin_timeseries(args.N, h, t_grid, cfg, threads=threads))
    _write_lines(list(_sweep_rows(records)), args.out)
    return 0


def cmd_lmg_tscramble(args) -> int:
    if args.eps <= 0:
        raise ValidationError("eps must be positive")
    threads = _resolve_threads(args.threads, args.threads is not None)
    cfg = SeesawConfig(
        effects_range=_parse_effects(args.effects),
        restarts=args.restarts,
        seed=args.seed,
    )
    hs = _parse_float_list(args.h)
    ns = _parse_int_list(args.n_list)
    rows = [TSCRAMB_HEADER]
    tscramb = {}
    for h in hs:
        for n in ns:
            ts = scrambling_time_direct(
                n, h, args.eps, t_max=args.t_max, t_step=args.t_step, cfg=cfg
            )
            tscramb[(h, n)] = ts
            rows.append(f"{n},{_fmt(h)},{_fmt(ts)}")
    _write_lines(rows, args.out)
    fit_rows = [FIT_HEADER]
    for h in hs:
        pts = [(n, tscramb[(h, n)]) for n in ns if math.isfinite(tscramb[(h, n)])]
        if len(pts) < 3:
            continue  # never-scrambling couplings are excluded from fits
        slope, intercept, r2 = logfit(pts)
        fit_rows.append(f"{_fmt(h)},{_fmt(slope)},{_fmt(intercept)},{_fmt(r2)}")
    _write_lines(fit_rows, args.fit_out)
    return 0


def cmd_qecc(args) -> int:
    code = builtin_code(args.code)
    cfg = SeesawConfig(restarts=args.restarts, seed=args.seed)
    report = check_t_scrambler(code, args.t, cfg)
    verdict = "certified" if report["certified"] else "NOT certified"
    print(f"{args.code} t={args.t}: {verdict}")
    for k, bits in sorted(report["imin_bits_per_k"].items()):
        print(f"imin_bits(k={k}) {bits:.6f}")
    if args.out:
        serialize.dump_json(report, args.out)
    return 0


def cmd_hmin(args) -> int:
    items = serialize.cq_state_from_json(serialize.load_json(args.cq))
    bits, gap = h_min_cond(CqState(items=items), tol=args.tol)
    print(f"h_min_cond_bits {bits:.6f}")
    print(f"certified_gap {gap:.3e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="scramblemeter",
        description="Accessible min-information of isometric quantum channels",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("imin", help="I_min^acc of an isometry file")
    p.add_argument("--isometry", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--effects", default=None, metavar="LO..HI")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_imin)

    p = sub.add_parser("lmg-sweep", help="LMG time sweep, CSV output")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--h", required=True, help="comma-separated couplings")
    p.add_argument("--t-max", type=float, default=20.0)
    p.add_argument("--t-step", type=float, default=0.05)
    p.add_argument("--effects", default="2..4", metavar="LO..HI")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_lmg_sweep)

    p = sub.add_parser("lmg-tscramble", help="scrambling time vs chain size")
    p.add_argument("--N-list", dest="n_list", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--eps", type=float, default=0.02)
    p.add_argument("--t-max", type=float, default=20.0)
    p.add_argument("--t-step", type=float, default=0.05)
    p.add_argument("--effects", default="2..4", metavar="LO..HI")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--fit-out", default=None)
    p.set_defaults(func=cmd_lmg_tscramble)

    p = sub.add_parser("qecc", help="perfect t-scrambler check of a built-in code")
    p.add_argument("--code", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_qecc)

    p = sub.add_parser("hmin", help="conditional min-entropy of a cq state file")
    p.add_argument("--cq", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_hmin)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NoSubsystemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValidationError, FileNotFoundError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
