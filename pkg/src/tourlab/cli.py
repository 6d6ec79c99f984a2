"""Command-line interface tying enumeration, classification, construction,
and density measurement together.

Commands: enumerate, bias-table, classify, fas-table, construct, density,
dominance-check.  Rationals cross the boundary as "a/b" strings; floats
appear only in columns whose names carry an _approx suffix or an explicit
stderr.  Every run logs its resolved configuration to stderr; stdout and
output files are deterministic given the configuration, including across
--threads settings.

Exit codes: 0 success, 2 bad arguments, 3 resource guard tripped,
4 internal assertion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .bias import (
    ClassificationRecord,
    OddCoefficientResidue,
    XOutOfRange,
    classify_catalog,
    in_F,
)
from .core import (
    BadCharacter,
    BadSubset,
    SizeMismatch,
    Tournament,
    WrongLength,
    cyclic3,
    parse,
    transitive,
)
from .construct import (
    BadProbability,
    BigTournament,
    NotMultiple,
    PackingFailed,
    StarTooBig,
    build_blowup,
    build_tnp,
    build_transversal,
)
from .density import TooLarge, bias_margin, dominance_report
from .enumeration import Unsupported, load_or_enumerate
from .fas import BadParameters, min_fas

__all__ = ["main"]

LONG_RUN_THRESHOLD = 9  # h >= this requires --allow-long
DEFAULT_CACHE = ".tourlab-cache"

_USER_ERRORS = (
    WrongLength,
    BadCharacter,
    BadSubset,
    SizeMismatch,
    BadProbability,
    NotMultiple,
    StarTooBig,
    BadParameters,
    XOutOfRange,
    ValueError,
    FileNotFoundError,
)
_GUARD_ERRORS = (TooLarge, Unsupported)
_INTERNAL_ERRORS = (OddCoefficientResidue, AssertionError, PackingFailed)


class LongRunGuard(Exception):
    """A computation gated behind --allow-long was requested without it."""


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected a rational 'a/b': {text!r}") from exc


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _opt_fraction(value) -> Fraction | None:
    return None if value is None else Fraction(value)


def _require(args, *names: str) -> None:
    missing = [f"--{name}" for name in names if getattr(args, name) is None]
    if missing:
        raise ValueError(f"{args.command} needs {', '.join(missing)}")


def _cache_dir(args) -> Path:
    env = os.environ.get("TOURLAB_CACHE")
    return Path(env) if env else Path(args.cache_dir)


def _check_long(h: int, args) -> None:
    if h >= LONG_RUN_THRESHOLD and not args.allow_long:
        raise LongRunGuard(f"h={h} is a long computation; pass --allow-long to run it")


def _resolve_patterns(selector: str, h_hint: int | None, cache_dir: Path) -> list[Tournament]:
    """A pattern argument: built-in name ('T5', 'C3'), 'all' for the whole
    catalog at --h, or a tournament file with an optional 'h=<k>' header."""
    if selector == "C3":
        return [cyclic3()]
    if selector.startswith("T") and selector[1:].isdigit():
        return [transitive(int(selector[1:]))]
    if selector == "all":
        if h_hint is None:
            raise ValueError("pattern 'all' needs --h")
        return list(load_or_enumerate(h_hint, cache_dir).items)
    return _read_pattern_file(Path(selector), h_hint)


def _read_pattern_file(path: Path, h_hint: int | None) -> list[Tournament]:
    lines = [line for line in path.read_text().splitlines() if line.strip()]
    if lines and lines[0].startswith("h="):
        h_hint = int(lines[0][2:])
        lines = lines[1:]
    if h_hint is None:
        raise ValueError(f"{path} has no 'h=<k>' header; pass --h")
    return [parse(line, h_hint) for line in lines]


@dataclass
class Emitter:
    """Collects uniform row dicts and writes them as CSV or JSON."""

    fieldnames: list[str]
    rows: list[dict] = field(default_factory=list)

    def add(self, **row) -> None:
        self.rows.append(row)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.rows, indent=2, sort_keys=True) + "\n"
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=self.fieldnames, lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.rows)
        return buf.getvalue()


def _write_output(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _classification_rows(records: list[ClassificationRecord], with_fas_extras: bool) -> Emitter:
    names = ["h", "canon", "aut", "d_num", "d_den", "fas", "in_Bh", "coeffs"]
    if with_fas_extras:
        names += ["max_forward", "witness"]
    emitter = Emitter(names)
    for rec in records:
        row = dict(
            h=rec.canonical_form.h,
            canon=rec.canonical_form.bits,
            aut=rec.aut,
            d_num=rec.typical_density.numerator,
            d_den=rec.typical_density.denominator,
            fas=rec.fas,
            in_Bh=int(rec.in_Bh),
            coeffs=" ".join(f"{e}:{_frac_str(c)}" for e, c in rec.bias.coeffs),
        )
        if with_fas_extras:
            result = min_fas(rec.canonical_form.tournament())
            row["max_forward"] = result.max_forward
            row["witness"] = " ".join(str(v + 1) for v in result.witness_order)
        emitter.add(**row)
    return emitter


def _density_rows(reports) -> Emitter:
    exact = all(r.mode == "exact" for r in reports)
    names = ["pattern_canon", "n", "mode", "samples"]
    names += ["estimate_num", "estimate_den"] if exact else ["estimate", "stderr"]
    names += ["typical_num", "typical_den", "ratio_approx", "margin"]
    emitter = Emitter(names)
    for r in reports:
        row = dict(
            pattern_canon=r.pattern.bits,
            n=r.n,
            mode=r.mode,
            samples="" if r.samples is None else r.samples,
            typical_num=r.typical.numerator,
            typical_den=r.typical.denominator,
            ratio_approx=repr(float(r.ratio)),
        )
        if r.mode == "exact":
            row["estimate_num"] = r.estimate.numerator
            row["estimate_den"] = r.estimate.denominator
            row["margin"] = "" if r.margin is None else _frac_str(r.margin)
        else:
            row["estimate"] = repr(r.estimate)
            row["stderr"] = repr(r.stderr)
            row["margin"] = "" if r.margin is None else repr(r.margin)
        emitter.add(**row)
    return emitter


def _log_config(args) -> None:
    config = {
        key: (_frac_str(value) if isinstance(value, Fraction) else value)
        for key, value in sorted(vars(args).items())
        if key != "func" and value is not None
    }
    print(f"config: {json.dumps(config, sort_keys=True)}", file=sys.stderr)


def _progress_logger(args):
    """Progress lines on stderr for gated long runs, silence otherwise."""
    if getattr(args, "h", None) and args.h >= LONG_RUN_THRESHOLD:
        return lambda line: print(line, file=sys.stderr)
    return None


def _cmd_enumerate(args) -> int:
    _require(args, "h")
    _check_long(args.h, args)
    catalog = load_or_enumerate(
        args.h, _cache_dir(args), threads=args.threads, progress=_progress_logger(args)
    )
    if args.out:
        lines = [f"h={catalog.h}"] + [t.bits for t in catalog.items]
        Path(args.out).write_text("\n".join(lines) + "\n")
    print(f"h={args.h} classes={len(catalog)}")
    return 0


def _records(args) -> list[ClassificationRecord]:
    _require(args, "h")
    _check_long(args.h, args)
    progress = _progress_logger(args)
    catalog = load_or_enumerate(
        args.h, _cache_dir(args), threads=args.threads, progress=progress
    )
    return classify_catalog(catalog, threads=args.threads, progress=progress)


def _cmd_bias_table(args) -> int:
    emitter = _classification_rows(_records(args), with_fas_extras=False)
    _write_output(emitter.render(args.format), args.out)
    return 0


def _cmd_fas_table(args) -> int:
    emitter = _classification_rows(_records(args), with_fas_extras=True)
    _write_output(emitter.render(args.format), args.out)
    return 0


def _cmd_classify(args) -> int:
    records = _records(args)
    total = len(records)
    hits = sum(r.in_Bh for r in records)
    print(f"h={args.h} |T_h|={total} |B_h|={hits} ratio_approx={hits / total!r}")
    return 0


def _cmd_construct(args) -> int:
    _require(args, "kind", "n", "seed", "out")
    if args.kind == "tnp":
        _require(args, "p")
        g = build_tnp(args.n, Fraction(args.p), args.seed)
    elif args.kind == "transversal":
        _require(args, "h", "hstar")
        patterns = _resolve_patterns(args.hstar, None, Path(DEFAULT_CACHE))
        if len(patterns) != 1:
            raise ValueError("--hstar must resolve to exactly one tournament")
        g = build_transversal(args.n, args.h, patterns[0], args.seed)
    else:
        _require(args, "family")
        family = _read_pattern_file(Path(args.family), args.h)
        g = build_blowup(family, args.n, args.seed)
    g.save(args.out)
    print(f"kind={args.kind} n={g.n} out={args.out}")
    return 0


def _cmd_density(args) -> int:
    _require(args, "graph", "pattern")
    if args.pattern == "all" and args.h is not None:
        _check_long(args.h, args)
    g = BigTournament.load(args.graph)
    patterns = _resolve_patterns(args.pattern, args.h, _cache_dir(args))
    reports = dominance_report(
        patterns, g, _opt_fraction(args.beta) or Fraction(0),
        mode="montecarlo" if args.mode == "mc" else "exact",
        samples=args.samples, seed=args.seed,
    )
    _write_output(_density_rows(reports).render(args.format), args.out)
    return 0


def _cmd_dominance_check(args) -> int:
    _require(args, "graph", "h", "x")
    _check_long(args.h, args)
    x = Fraction(args.x)
    g = BigTournament.load(args.graph)
    catalog = load_or_enumerate(args.h, _cache_dir(args), threads=args.threads)
    members = [t for t in catalog.items if in_F(t, x)]
    if not members:
        print(f"h={args.h} x={_frac_str(x)} family=0 satisfied=0")
        return 0
    beta = _opt_fraction(args.beta)
    if beta is None:
        beta = bias_margin(members, x) / 2
    reports = dominance_report(
        members, g, beta,
        mode="montecarlo" if args.mode == "mc" else "exact",
        samples=args.samples, seed=args.seed,
    )
    _write_output(_density_rows(reports).render(args.format), args.out)
    satisfied = sum(1 for r in reports if r.margin is not None and r.margin > 0)
    print(
        f"h={args.h} x={_frac_str(x)} beta={_frac_str(beta)} "
        f"family={len(members)} satisfied={satisfied}"
    )
    return 0


def _add_common(sub, cache: bool = True) -> None:
    sub.add_argument("--threads", type=int, default=1,
                     help="worker cap for data-parallel stages")
    sub.add_argument("--allow-long", action="store_true",
                     help="permit h>=9 computations")
    sub.add_argument("--config", default=None,
                     help="JSON file of argument defaults")
    if cache:
        sub.add_argument("--cache-dir", default=DEFAULT_CACHE,
                         help="catalog cache directory (env TOURLAB_CACHE overrides)")


def _build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="tourlab", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True)
    registry: dict[str, argparse.ArgumentParser] = {}

    p = registry["enumerate"] = commands.add_parser(
        "enumerate", help="catalog all h-vertex tournaments")
    p.add_argument("--h", type=int)
    p.add_argument("--out", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_enumerate)

    for name, func in (("bias-table", _cmd_bias_table), ("fas-table", _cmd_fas_table)):
        p = registry[name] = commands.add_parser(
            name, help=f"emit the {name} for the h-catalog")
        p.add_argument("--h", type=int)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None)
        _add_common(p)
        p.set_defaults(func=func)

    p = registry["classify"] = commands.add_parser(
        "classify", help="summary line |T_h|, |B_h|, ratio")
    p.add_argument("--h", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = registry["construct"] = commands.add_parser(
        "construct", help="build and save a big tournament")
    p.add_argument("--kind", choices=("tnp", "transversal", "blowup"))
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=_fraction, default=None, help="edge probability 'a/b' (tnp)")
    p.add_argument("--h", type=int, default=None,
                   help="part count (transversal) / pattern size fallback (blowup)")
    p.add_argument("--hstar", default=None, help="pattern name or file (transversal)")
    p.add_argument("--family", default=None, help="tournament file (blowup)")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    _add_common(p, cache=False)
    p.set_defaults(func=_cmd_construct)

    p = registry["density"] = commands.add_parser(
        "density", help="measure pattern densities in a graph file")
    p.add_argument("--graph")
    p.add_argument("--pattern", help="'T<h>', 'C3', 'all', or a file")
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--mode", choices=("exact", "mc"), default="exact")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--beta", type=_fraction, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_density)

    p = registry["dominance-check"] = commands.add_parser(
        "dominance-check", help="measure the F(h,x) family against a graph file")
    p.add_argument("--graph")
    p.add_argument("--h", type=int)
    p.add_argument("--x", type=_fraction)
    p.add_argument("--beta", type=_fraction, default=None,
                   help="margin factor; default: half the exact bias margin")
    p.add_argument("--mode", choices=("exact", "mc"), default="exact")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_dominance_check)

    return parser, registry


def _extract_config_path(argv: list[str]) -> str | None:
    for i, token in enumerate(argv):
        if token == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if token.startswith("--config="):
            return token.split("=", 1)[1]
    return None


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, registry = _build_parser()
    config_path = _extract_config_path(argv)
    if config_path:
        try:
            defaults = json.loads(Path(config_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read config {config_path}: {exc}", file=sys.stderr)
            return 2
        command = next((token for token in argv if not token.startswith("-")), None)
        target = registry.get(command or "", parser)
        target.set_defaults(
            **{k: v for k, v in defaults.items() if k not in ("command", "func", "config")}
        )
    args = parser.parse_args(argv)
    _log_config(args)
    try:
        return args.func(args)
    except LongRunGuard as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except _GUARD_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except _INTERNAL_ERRORS as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4
    except _USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
