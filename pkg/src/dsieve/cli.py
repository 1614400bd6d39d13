"""Command-line interface: sieve, goldbach, euler, trace, report.

Data goes to stdout (compact JSON by default, CSV on request); anything
diagnostic goes to stderr.  Exit codes: 0 success, 1 a verification
reported a failure, 2 usage or argument errors.  Prime tables are
cached under --cache-dir (or $DSIEVE_CACHE) and any cached table at
least as large as the request is reused.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import goldbach as goldbach_mod
from . import oracle
from .engine import SieveMode, run_to
from .series import DivergentSeriesError, compare_sieved_series
from .trace import figure_dataset, render_wave, wave_csv

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

_CACHE_ENV = "DSIEVE_CACHE"


def default_cache_dir() -> Path:
    env = os.environ.get(_CACHE_ENV)
    if env:
        return Path(env)
    if sys.platform == "darwin":
        return Path.home() / "Library" / "Caches" / "dsieve"
    if os.name == "nt":
        base = os.environ.get("LOCALAPPDATA")
        return Path(base) / "dsieve" if base else Path.home() / "dsieve-cache"
    base = os.environ.get("XDG_CACHE_HOME")
    return (Path(base) if base else Path.home() / ".cache") / "dsieve"


@dataclass
class CliConfig:
    cache_dir: Path
    output_format: str = "json"
    quiet: bool = False


def _config(args) -> CliConfig:
    cache_dir = Path(args.cache_dir) if args.cache_dir else default_cache_dir()
    return CliConfig(cache_dir, args.format, args.quiet)


def _note(cfg: CliConfig, message: str) -> None:
    if not cfg.quiet:
        print(message, file=sys.stderr)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _cached_table(cfg: CliConfig, limit: int) -> oracle.PrimeTable:
    """Load any cached table covering ``limit``, else build and cache."""
    best: tuple[int, Path] | None = None
    if cfg.cache_dir.is_dir():
        for path in cfg.cache_dir.glob("primes-*.dsve"):
            try:
                cached_limit = int(path.stem.split("-", 1)[1])
            except (IndexError, ValueError):
                continue
            if cached_limit >= limit and (best is None or cached_limit < best[0]):
                best = (cached_limit, path)
    if best is not None:
        try:
            table = oracle.load_cache(best[1])
            _note(cfg, f"cache: reusing {best[1]} (limit {table.limit})")
            return table
        except oracle.CorruptCacheError as exc:
            _note(cfg, f"cache: discarding {best[1]}: {exc}")
    started = time.perf_counter()
    table = oracle.build(limit)
    _note(cfg, f"cache: built table to {limit} in {time.perf_counter() - started:.2f}s")
    try:
        cfg.cache_dir.mkdir(parents=True, exist_ok=True)
        oracle.save_cache(table, cfg.cache_dir / f"primes-{limit}.dsve")
    except OSError as exc:
        _note(cfg, f"cache: not saved: {exc}")
    return table


def _emit_json(obj) -> None:
    print(json.dumps(obj, separators=(",", ":")))


def cmd_sieve(args) -> int:
    cfg = _config(args)
    if args.limit < 1:
        return _fail("--limit must be >= 1")
    started = time.perf_counter()
    ledger = run_to(SieveMode(args.mode), args.limit, start_at_square=args.start_at_square)
    _note(cfg, f"sieve: {args.mode} to {args.limit} in {time.perf_counter() - started:.2f}s")
    if args.emit == "primes":
        if cfg.output_format == "csv":
            print("prime")
            for p in ledger.decoded_primes():
                print(p)
        else:
            _emit_json(ledger.decoded_primes())
        return EXIT_OK
    crossed_only = args.emit == "crossings"
    if cfg.output_format == "csv":
        ledger.write_csv(sys.stdout, crossed_only=crossed_only)
    else:
        ledger.write_jsonl(sys.stdout, crossed_only=crossed_only)
    return EXIT_OK


def cmd_goldbach(args) -> int:
    cfg = _config(args)
    if args.n is not None:
        try:
            witness = goldbach_mod.goldbach_triple(args.n, _cached_table(cfg, max(args.n, 9)))
        except ValueError as exc:  # covers BelowThresholdError
            return _fail(str(exc))
        except goldbach_mod.DecompositionNotFound as exc:
            _emit_json({"n": exc.n, "triple": None})
            return EXIT_FAILURE
        _emit_json({"n": witness.n, "triple": list(witness.triple)})
        return EXIT_OK
    if args.limit < 9:
        return _fail("--limit must be >= 9")
    started = time.perf_counter()
    report = goldbach_mod.verify_range(args.limit, _cached_table(cfg, args.limit))
    _note(cfg, f"goldbach: verified to {args.limit} in {time.perf_counter() - started:.2f}s")
    _emit_json({
        "limit": report.limit,
        "verified_count": report.verified_count,
        "failures": report.failures,
        "max_p1": report.max_p1,
    })
    return EXIT_FAILURE if report.failures else EXIT_OK


def cmd_euler(args) -> int:
    cfg = _config(args)
    try:
        primes = _parse_primes(args.primes)
        comparison = compare_sieved_series(args.s, args.limit, primes)
    except DivergentSeriesError as exc:
        return _fail(str(exc))
    except ValueError as exc:
        return _fail(str(exc))
    _emit_json({
        "s": args.s,
        "limit": args.limit,
        "primes": list(primes),
        "survivor_sum": comparison.survivor_sum,
        "partial_product": comparison.partial_product,
        "zeta_estimate": comparison.zeta_estimate,
        "abs_error": comparison.abs_error,
        "tail_bound": comparison.tail_bound,
        "pass": comparison.passed,
    })
    return EXIT_OK if comparison.passed else EXIT_FAILURE


def cmd_trace(args) -> int:
    cfg = _config(args)
    try:
        primes = _parse_primes(args.primes)
        dataset = figure_dataset(primes, SieveMode(args.mode), args.t_max)
        samples = None
        if args.wave:
            samples = {
                p: render_wave(p, args.mode, args.t_max, args.samples_per_unit)
                for p in sorted(set(primes))
            }
    except ValueError as exc:
        return _fail(str(exc))
    if cfg.output_format == "csv":
        sys.stdout.write(dataset.to_csv())
        if samples is not None:
            sys.stdout.write("\n")
            sys.stdout.write(wave_csv(primes, args.mode, args.t_max, args.samples_per_unit))
    else:
        doc = json.loads(dataset.to_json())
        if samples is not None:
            doc["waves"] = [
                {"prime": p, "samples": [[s.t, s.value] for s in wave]}
                for p, wave in samples.items()
            ]
        _emit_json(doc)
    return EXIT_OK


def cmd_report(args) -> int:
    cfg = _config(args)
    from .figures import write_report

    try:
        written = write_report(args.out_dir, args.t_max,
                               samples_per_unit=args.samples_per_unit,
                               output_format=cfg.output_format, dpi=args.dpi)
    except ValueError as exc:
        return _fail(str(exc))
    _note(cfg, f"report: wrote {len(written)} files under {args.out_dir}")
    _emit_json({"out_dir": str(args.out_dir), "files": [p.name for p in written]})
    return EXIT_OK


def _parse_primes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise ValueError(f"could not parse prime list {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json",
                        help="output format (default json)")
    common.add_argument("--quiet", action="store_true", help="suppress stderr notes")
    common.add_argument("--cache-dir", default=None,
                        help=f"prime table cache directory (default ${_CACHE_ENV} or user cache)")

    parser = argparse.ArgumentParser(
        prog="dsieve",
        description="Dynamical sieve toolkit: decode primes from crossing trains, "
                    "verify series and Goldbach decompositions, trace figures.",
        epilog="examples:\n"
               "  dsieve sieve --limit 12 --mode full --emit primes\n"
               "  dsieve goldbach --n 27 --witness\n"
               "  dsieve euler --s 2 --limit 1000 --primes 2,3\n"
               "  dsieve trace --primes 2,3 --mode full --t-max 12\n"
               "  dsieve report --t-max 30 --out-dir report/\n",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sieve = sub.add_parser("sieve", parents=[common], help="run a sieve and emit a ledger view")
    p_sieve.add_argument("--limit", type=int, required=True)
    p_sieve.add_argument("--mode", choices=[m.value for m in SieveMode], default="full")
    p_sieve.add_argument("--emit", choices=["primes", "crossings", "classifications"],
                         default="primes")
    p_sieve.add_argument("--start-at-square", action="store_true",
                         help="schedule trains from p*p (ledger is identical)")
    p_sieve.set_defaults(func=cmd_sieve)

    p_gold = sub.add_parser("goldbach", parents=[common],
                            help="three-odd-prime witnesses and range verification")
    group = p_gold.add_mutually_exclusive_group(required=True)
    group.add_argument("--limit", type=int, help="verify every odd n in [9, limit]")
    group.add_argument("--n", type=int, help="single odd n > 7")
    p_gold.add_argument("--witness", action="store_true",
                        help="with --n: emit the canonical witness (default behaviour)")
    p_gold.set_defaults(func=cmd_goldbach)

    p_euler = sub.add_parser("euler", parents=[common],
                             help="survivor series vs partial Euler product")
    p_euler.add_argument("--s", type=float, required=True)
    p_euler.add_argument("--limit", type=int, required=True)
    p_euler.add_argument("--primes", default="", help="comma-separated primes to sieve out")
    p_euler.set_defaults(func=cmd_euler)

    p_trace = sub.add_parser("trace", parents=[common],
                             help="per-train crossing/extremum datasets")
    p_trace.add_argument("--primes", required=True, help="comma-separated primes")
    p_trace.add_argument("--mode", choices=[m.value for m in SieveMode], default="full")
    p_trace.add_argument("--t-max", type=int, required=True)
    p_trace.add_argument("--wave", action="store_true", help="also emit sampled waveforms")
    p_trace.add_argument("--samples-per-unit", type=int, default=8)
    p_trace.set_defaults(func=cmd_trace)

    p_report = sub.add_parser("report", parents=[common],
                              help="render crossing grids and waveforms to files")
    p_report.add_argument("--t-max", type=int, required=True)
    p_report.add_argument("--out-dir", required=True)
    p_report.add_argument("--samples-per-unit", type=int, default=16)
    p_report.add_argument("--dpi", type=int, default=150)
    p_report.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
