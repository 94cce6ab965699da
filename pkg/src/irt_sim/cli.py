"""Command line entry point: ``irt-sim run|compare|preset``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .engine import PRESETS, compare, load_artifacts, run, run_preset, write_comparison
from .scenario import ConfigError, parse_scenario

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2


def _cmd_run(args) -> int:
    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {args.config}: {exc}") from exc
    cfg = parse_scenario(text)
    out = args.out or cfg.output.dir
    if out is None:
        raise ConfigError("no output directory: pass --out or set output.dir")
    art = run(cfg, out, svg=args.svg or cfg.output.svg)
    for name, path in art.files.items():
        print(f"{name}: {path}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    base, alt = load_artifacts(args.baseline), load_artifacts(args.alt)
    comp = compare(base, alt)
    files = write_comparison(comp, args.out, svg=args.svg, labels=(base.name, alt.name))
    for key, value in comp.summary.items():
        print(f"{key}: {value}")
    for name, path in files.items():
        print(f"{name}: {path}")
    return EXIT_OK


def _cmd_preset(args) -> int:
    result = run_preset(args.name, args.out)
    for key, art in result.runs.items():
        for name, path in art.files.items():
            print(f"{key}/{name}: {path}")
    for name, path in result.files.items():
        print(f"{name}: {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="irt-sim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a scenario document")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--svg", action="store_true", help="also write SVG charts")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("compare", help="compare two run directories")
    p.add_argument("--baseline", required=True)
    p.add_argument("--alt", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--svg", action="store_true")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("preset", help="regenerate one of the built-in experiments")
    p.add_argument("name", choices=PRESETS)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_preset)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
