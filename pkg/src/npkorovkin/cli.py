"""Command-line front end.

Settings are resolved as defaults < config file < environment < flags.
Environment variables are the long flag names uppercased with dashes turned
into underscores and prefixed ``NPKOROVKIN_`` (``NPKOROVKIN_GRID_STEP``).
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from pathlib import Path

from . import tables as tb
from .errors import ArgumentError
from .fourier import FourierConvention

ENV_PREFIX = "NPKOROVKIN_"
SETTINGS = ("grid-step", "quad-tol", "l-trunc", "phase-mode", "forward-scale", "out-dir", "svg")
COMMANDS = ("nu-table", "xi-table", "kn-table", "kantorovich-suite", "grunwald-suite", "reproduce-all")

log = logging.getLogger("npkorovkin")


def _floats(text: str) -> list[float]:
    out = []
    for tok in text.split(","):
        tok = tok.strip().lower()
        if tok in ("pi/4", "π/4"):
            out.append(math.pi / 4)
        elif tok:
            out.append(float(tok))
    return out


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _bool(text) -> bool:
    if isinstance(text, bool):
        return text
    return str(text).strip().lower() in ("1", "true", "yes", "on")


def read_config(path: Path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ArgumentError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("_", "-").lower()
        if key not in SETTINGS:
            raise ArgumentError(f"{path}:{lineno}: unknown setting {key!r}")
        out[key] = value
    return out


def env_settings(environ=None) -> dict:
    environ = os.environ if environ is None else environ
    out = {}
    for key in SETTINGS:
        name = ENV_PREFIX + key.upper().replace("-", "_")
        if name in environ:
            out[key] = environ[name]
    return out


def resolve_settings(args: argparse.Namespace, environ=None) -> dict:
    merged: dict = {}
    if getattr(args, "config", None):
        merged.update(read_config(args.config))
    merged.update(env_settings(environ))
    for key in SETTINGS:
        v = getattr(args, key.replace("-", "_"), None)
        if v is not None:
            merged[key] = v
    return merged


def build_config(settings: dict) -> tb.RunConfig:
    kw = {}
    if "grid-step" in settings:
        kw["grid_step"] = float(settings["grid-step"])
    if "quad-tol" in settings:
        kw["quad_tol"] = float(settings["quad-tol"])
    if "l-trunc" in settings:
        lt = str(settings["l-trunc"]).strip()
        kw["l_truncation"] = "auto" if lt == "auto" else int(lt)
    conv = {}
    if "phase-mode" in settings:
        conv["phase_mode"] = str(settings["phase-mode"])
    if "forward-scale" in settings:
        conv["forward_scale"] = float(settings["forward-scale"])
    kw["convention"] = FourierConvention(**conv)
    if "out-dir" in settings:
        kw["out_dir"] = Path(settings["out-dir"])
    if "svg" in settings:
        kw["emit_svg"] = _bool(settings["svg"])
    return tb.RunConfig(**kw)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--grid-step", type=float, help="sup/modulus grid step in radians")
    p.add_argument("--quad-tol", type=float, help="absolute quadrature tolerance")
    p.add_argument("--l-trunc", help="window truncation: integer or 'auto'")
    p.add_argument("--phase-mode", choices=("alternating", "exact"))
    p.add_argument("--forward-scale", type=float)
    p.add_argument("--out-dir", help="output directory (default ./out)")
    p.add_argument("--svg", action="store_const", const=True, default=None, help="also write SVG plots")
    p.add_argument("--config", type=Path, help="key=value settings file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="npkorovkin",
                                     description="Tables and property suites for interpolation-type operators.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("nu-table", help="nu_n with moduli of continuity")
    p.add_argument("--example", choices=("tent", "cubic-spline-like"), default="tent")
    p.add_argument("--n", type=_ints, default=list(tb.NU_LIST))
    _common(p)
    p = sub.add_parser("xi-table", help="xi_n")
    p.add_argument("--n", type=_ints, default=list(tb.XI_LIST))
    _common(p)
    p = sub.add_parser("kn-table", help="truncated extension of the Gaussian")
    p.add_argument("--p", type=_floats, default=list(tb.KN_P))
    p.add_argument("--n", type=_ints, default=[n for n, _ in tb.KN_NM], help="orders; m = n unless --l-trunc")
    _common(p)
    for name, text in (("kantorovich-suite", "Kantorovich-type operator checks"),
                       ("grunwald-suite", "identities, witnesses and boundedness"),
                       ("reproduce-all", "every table and suite plus a manifest")):
        _common(sub.add_parser(name, help=text))
    return parser


def _report(table, cfg) -> None:
    paths = tb.write_table(table, cfg)
    for p in paths:
        print(p)
    for c in tb.checks_of(table):
        tag = "ok  " if c.passed else ("FAIL" if c.golden else "info")
        n = "" if c.n is None else f" n={c.n}"
        print(f"{tag} {c.name}{n}: {c.value:.6g} (bound {c.bound:.6g})")
    for key in ("best_convention", "c1_estimate"):
        if key in table.notes:
            print(f"{key}: {table.notes[key]}")


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    args = build_parser().parse_args(argv)
    try:
        cfg = build_config(resolve_settings(args))
    except (ArgumentError, ValueError) as exc:
        print(f"npkorovkin: {exc}", file=sys.stderr)
        return 2
    cmd = args.command
    if cmd == "reproduce-all":
        return tb.cmd_reproduce_all(cfg, log=log.info)
    if cmd == "nu-table":
        table = tb.cmd_nu_table(args.example, args.n, cfg)
    elif cmd == "xi-table":
        table = tb.cmd_xi_table(args.n, cfg)
    elif cmd == "kn-table":
        table = tb.cmd_kn_table(args.p, [(n, n) for n in args.n], cfg)
    elif cmd == "kantorovich-suite":
        table = tb.cmd_kantorovich_suite(cfg)
    else:
        table = tb.cmd_grunwald_suite(cfg)
    _report(table, cfg)
    return 0


if __name__ == "__main__":
    sys.exit(main())
