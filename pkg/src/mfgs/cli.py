"""``mfgs`` command line: run parameter scans and write CSV.

Exit codes: 0 success, 1 configuration error, 2 per-point error under ``--strict``.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigError
from .scan import PRESETS, build_config, csv_text, emit_csv, parse_range, run_scan

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_POINT_ERROR = 2


class _Parser(argparse.ArgumentParser):
    """Argument errors are configuration errors (exit 1), not usage exit 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mfgs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    scan = sub.add_parser("scan", help="run a parameter scan")
    scan.add_argument("--config", help="INI file with [bath], [qubit] and [scan] settings")
    scan.add_argument("--preset", choices=sorted(PRESETS), help="start from a named setup")
    axis = scan.add_mutually_exclusive_group()
    axis.add_argument("--beta-range", metavar="START:STOP:N[:log]", help="sweep inverse temperature")
    axis.add_argument("--lambda-range", metavar="START:STOP:N[:log]", help="sweep coupling strength")
    scan.add_argument("--spectral", choices=["ud", "od", "delta"])
    scan.add_argument("--methods", help="comma-separated subset of pe,rc,prc (or 'none')")
    scan.add_argument("--fock", help="'auto' or a fixed Fock cutoff")
    scan.add_argument("--out", help="output CSV path (default: stdout)")
    scan.add_argument(
        "--set", action="append", default=[], metavar="KEY=VALUE",
        help="override any setting, e.g. --set beta=5 --set gamma=20",
    )
    scan.add_argument("--strict", action="store_true", help="exit 2 if any grid point failed")

    sub.add_parser("presets", help="list the built-in presets")
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, str]:
    out: dict[str, str] = {}
    for item in args.set:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        out[key.strip()] = value.strip()
    if args.beta_range:
        out.update(axis="beta", **parse_range(args.beta_range))
    if args.lambda_range:
        out.update(axis="lambda", **parse_range(args.lambda_range))
    for name in ("spectral", "methods", "fock", "out"):
        value = getattr(args, name)
        if value is not None:
            out[name] = value
    return out


def _run_scan(args: argparse.Namespace) -> int:
    cfg = build_config(args.preset, args.config, _overrides(args))
    result = run_scan(cfg)
    if cfg.out:
        emit_csv(result, cfg.out)
    else:
        sys.stdout.write(csv_text(result))
    failed = [p for p in result.points if p.error]
    for p in failed:
        print(f"mfgs: point {p.axis!r}: {p.error}", file=sys.stderr)
    if failed and args.strict:
        return EXIT_POINT_ERROR
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        if args.command == "presets":
            for name in sorted(PRESETS):
                settings = " ".join(f"{k}={v}" for k, v in PRESETS[name].items())
                print(f"{name}: {settings}")
            return EXIT_OK
        return _run_scan(args)
    except ConfigError as exc:
        print(f"mfgs: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"mfgs: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
