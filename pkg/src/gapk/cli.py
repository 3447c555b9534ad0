"""Command-line interface: ``gapk verify|search|minimal|factor|catalog|scan-tail``.

Exit status is 0 on success, 1 on a negative finding (verification
failed, nothing found, mismatch against a reference) and 2 on usage
errors. Settings come from flags, then an INI config file (section
``[gapk]``, path from ``--config`` or ``GAPK_CONFIG``), then defaults.
"""
from __future__ import annotations

import argparse
import configparser
import json
import logging
import os
import sys
from dataclasses import dataclass

from .arith import DEFAULT_ROUNDS, smallest_prime_geq
from .catalog import (
    BFileError,
    ReferenceUnavailable,
    compare,
    difference_sequence,
    export_bfile,
    fetch_reference,
)
from .expr import ExpressionError, parse_int
from .progression import GapTriple, admissible, verify_gap
from .residue import DEFAULT_Q_MAX, common_factor
from .search import DEFAULT_DIGIT_CAP, SearchSpec, minimal_gap, runner, search_summary, tail_scan

log = logging.getLogger("gapk")


@dataclass
class RunConfig:
    workers: int = os.cpu_count() or 1
    probabilistic_rounds: int = DEFAULT_ROUNDS
    digit_cap: int = DEFAULT_DIGIT_CAP
    q_max: int = DEFAULT_Q_MAX
    output_format: str = "table"
    offline: bool = False


def _expr(text: str) -> int:
    try:
        return parse_int(text)
    except ExpressionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    value = _expr(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a value >= 1, got {value}")
    return value


def _stride(text: str):
    return "auto" if text == "auto" else _positive(text)


def _load_config(path: str | None) -> dict:
    path = path or os.environ.get("GAPK_CONFIG")
    if not path:
        return {}
    cp = configparser.ConfigParser()
    if not cp.read(path):
        raise SystemExit(f"gapk: cannot read config file {path}")
    if not cp.has_section("gapk"):
        return {}
    sec = cp["gapk"]
    out = {}
    for key in ("workers", "rounds", "digit_cap", "q_max"):
        if key in sec:
            out[key] = sec.getint(key)
    if "format" in sec:
        out["format"] = sec["format"]
    if "offline" in sec:
        out["offline"] = sec.getboolean("offline")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gapk", description="Primes in geometric-arithmetic progression p1*r^j + j*d.")
    p.add_argument("--config", help="INI file with a [gapk] section")
    p.add_argument("--workers", type=_positive, default=RunConfig.workers)
    p.add_argument("--rounds", type=_positive, default=DEFAULT_ROUNDS, help="extra Miller-Rabin rounds above 2^64")
    p.add_argument("--digit-cap", dest="digit_cap", type=_positive, default=DEFAULT_DIGIT_CAP)
    p.add_argument("--q-max", dest="q_max", type=_positive, default=DEFAULT_Q_MAX)
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--offline", action="store_true", default=os.environ.get("GAPK_OFFLINE", "") not in ("", "0"))
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="check that k consecutive terms are prime")
    s.add_argument("--p1", type=_positive, required=True)
    s.add_argument("--r", type=_positive, required=True)
    s.add_argument("--d", type=_expr, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--start-j", dest="start_j", type=int, default=0)

    s = sub.add_parser("search", help="all differences d in a range")
    s.add_argument("--p1", type=_positive, required=True)
    s.add_argument("--r", type=_positive, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--d-min", dest="d_min", type=_expr, default=0)
    s.add_argument("--d-max", dest="d_max", type=_expr, required=True)
    s.add_argument("--stride", type=_stride, default="auto")
    s.add_argument("--start-j", dest="start_j", type=int, default=0)

    s = sub.add_parser("minimal", help="least d for the minimal GAP-k")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--d-bound", dest="d_bound", type=_expr, default=10**9)
    s.add_argument("--resume", metavar="CHECKPOINT", help="frontier file to resume from and update")

    s = sub.add_parser("factor", help="common factor certificate of the differences")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--p1", type=_positive)
    s.add_argument("--r", type=_positive)

    s = sub.add_parser("catalog", help="difference sequences and b-files")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--p1", type=_positive)
    s.add_argument("--r", type=_positive)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--count", type=_positive)
    g.add_argument("--bound", type=_expr)
    s.add_argument("--compare", metavar="OEIS_ID")
    s.add_argument("--format", dest="catalog_format", choices=("bfile", "json", "csv"), default="bfile")
    s.add_argument("--offline", action="store_true", default=argparse.SUPPRESS)

    s = sub.add_parser("scan-tail", help="prime runs past the defining GAP")
    s.add_argument("--p1", type=_positive, required=True)
    s.add_argument("--r", type=_positive, required=True)
    s.add_argument("--d", type=_expr, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--j-max", dest="j_max", type=int, required=True)
    return p


def _emit(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def _instance_table(inst) -> None:
    t = inst.triple
    _emit(f"GAP-{inst.k}  p1={t.p1}  r={t.r}  d={t.d}  start_j={inst.start_j}")
    for j, (value, v) in enumerate(zip(inst.terms, inst.verdicts), start=inst.start_j):
        _emit(f"  j={j:<4} {value}{'  (probable)' if v.probable else ''}")
    _emit(f"digits of first: {inst.digits_first}   digits of last: {inst.digits_last}")


def cmd_verify(args, cfg: RunConfig) -> int:
    t = GapTriple(args.p1, args.r, args.d)
    result = verify_gap(t, args.k, args.start_j, cfg.probabilistic_rounds)
    report = admissible(t, args.k)
    if result:
        if cfg.output_format == "json":
            _emit(json.dumps(result.to_dict()))
        else:
            _instance_table(result)
            if not report.admissible:
                _emit(f"note: violates {', '.join(v.value for v in report.violations)}")
        return 0
    witness = result.verdict.witness if result.verdict is not None else None
    if cfg.output_format == "json":
        _emit(
            json.dumps(
                {
                    "verified": False,
                    "k": args.k,
                    "p1": str(t.p1),
                    "r": str(t.r),
                    "d": str(t.d),
                    "start_j": args.start_j,
                    "failed_index": result.failed_index,
                    "reason": result.reason,
                    "witness": None if witness is None else str(witness),
                    "violations": [v.value for v in report.violations],
                }
            )
        )
    else:
        _emit(f"not a GAP-{args.k}: term j={result.failed_index} is {result.reason}")
        if witness:
            _emit(f"witness: {witness}")
        if report.violations:
            _emit(f"violates: {', '.join(v.value for v in report.violations)}")
        if result.exceeds_max_order:
            _emit(f"k exceeds the order bound {report.max_order}")
    return 1


def cmd_search(args, cfg: RunConfig) -> int:
    spec = SearchSpec(
        args.p1,
        args.r,
        args.k,
        args.d_min,
        args.d_max,
        stride=args.stride,
        start_j=args.start_j,
        workers=cfg.workers,
        q_max=cfg.q_max,
        rounds=cfg.probabilistic_rounds,
    )
    res = runner(spec)
    log.info(search_summary(res))
    if res.note:
        print(res.note, file=sys.stderr)
    if cfg.output_format == "json":
        for d in res.differences:
            _emit(json.dumps(verify_gap(GapTriple(args.p1, args.r, d), args.k, args.start_j).to_dict()))
    elif cfg.output_format == "csv":
        _emit("n,d")
        for n, d in enumerate(res.differences, start=1):
            _emit(f"{n},{d}")
    else:
        for d in res.differences:
            terms = GapTriple(args.p1, args.r, d).terms(args.start_j, args.k)
            _emit(f"{d}  ({', '.join(map(str, terms))})")
        _emit(f"{len(res.differences)} differences")
    return 0 if res.differences else 1


def cmd_minimal(args, cfg: RunConfig) -> int:
    found = minimal_gap(args.k, args.d_bound, cfg.workers, args.resume, cfg.probabilistic_rounds)
    if not found:
        msg = {"k": args.k, "p1": found.p, "r": found.p, "found": False, "searched_to": str(found.searched_to)}
        if cfg.output_format == "json":
            _emit(json.dumps(msg))
        else:
            _emit(f"no minimal GAP-{args.k} (p1 = r = {found.p}) with d <= {found.searched_to}")
        return 1
    if cfg.output_format == "json":
        _emit(json.dumps(found.instance.to_dict()))
    else:
        _instance_table(found.instance)
    return 0


def cmd_factor(args, cfg: RunConfig) -> int:
    p = smallest_prime_geq(args.k)
    cert = common_factor(args.p1 or p, args.r or p, args.k, cfg.q_max)
    if cfg.output_format == "json":
        _emit(json.dumps(cert.to_dict()))
    else:
        _emit(cert.label)
        sys.stdout.write(cert.report())
    return 1 if cert.impossible else 0


def cmd_catalog(args, cfg: RunConfig) -> int:
    seq = difference_sequence(args.k, args.p1, args.r, count=args.count, bound=args.bound, workers=cfg.workers)
    seq.oeis_id = args.compare
    if args.catalog_format == "json":
        _emit(seq.to_json())
    elif args.catalog_format == "csv":
        sys.stdout.write(seq.to_csv())
    else:
        sys.stdout.write(export_bfile(seq))
    if args.compare:
        try:
            ref = fetch_reference(args.compare, offline=cfg.offline)
        except (ReferenceUnavailable, BFileError) as exc:
            print(f"gapk: {exc}", file=sys.stderr)
            return 1
        cmp = compare(seq, ref)
        print(f"{args.compare}: {cmp.summary()}", file=sys.stderr)
        return 0 if cmp.ok else 1
    return 0


def cmd_scan_tail(args, cfg: RunConfig) -> int:
    t = GapTriple(args.p1, args.r, args.d)
    rep = tail_scan(t, args.k, args.j_max, cfg.digit_cap, cfg.probabilistic_rounds)
    if cfg.output_format == "json":
        _emit(
            json.dumps(
                {
                    "p1": str(t.p1),
                    "r": str(t.r),
                    "d": str(t.d),
                    "k": args.k,
                    "j_range": list(rep.j_range),
                    "windows": [{"start_j": s, "order": n} for s, n in rep.windows],
                    "max_order_found": rep.max_order_found,
                    "truncated_at": rep.truncated_at,
                    "composite_positions_checked": rep.composite_positions_checked,
                    "composite_position_violations": rep.composite_position_violations,
                }
            )
        )
    else:
        _emit(f"{t}: j in [{rep.j_range[0]}, {rep.j_range[1]}]")
        for s, n in rep.windows:
            _emit(f"  GAP-{n} at j={s}")
        _emit(f"max order found: {rep.max_order_found}")
        if rep.truncated_at is not None:
            _emit(f"truncated at j={rep.truncated_at} (digit cap {cfg.digit_cap})")
    return 1 if rep.max_order_found >= 3 or rep.composite_position_violations else 0


COMMANDS = {
    "verify": cmd_verify,
    "search": cmd_search,
    "minimal": cmd_minimal,
    "factor": cmd_factor,
    "catalog": cmd_catalog,
    "scan-tail": cmd_scan_tail,
}


def main(argv: list[str] | None = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    cfg_args, _ = _config_preparser().parse_known_args(argv)
    conf = _load_config(cfg_args.config)
    parser.set_defaults(**{k: v for k, v in conf.items()})
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    cfg = RunConfig(args.workers, args.rounds, args.digit_cap, args.q_max, args.format, args.offline)
    try:
        return COMMANDS[args.command](args, cfg)
    except ValueError as exc:
        print(f"gapk: {exc}", file=sys.stderr)
        return 2


def _config_preparser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config")
    return p


if __name__ == "__main__":
    sys.exit(main())
