"""Command line: ``padic-orbits <subcommand> [flags]``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import reports, suites
from .atlas import atlas_sweep
from .orbits import OrbitInvariantError, classify, level_profile, orbit_mod
from .padic import PAdicInt, PrecisionError
from .pcf import FrontierExplosion, enumerate_pcf
from .trees import SCHEMA, TreeShapeError, critical_orbit_tree

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

#: precision given to integer parameters when --prec is absent
DEFAULT_INT_PRECISION = 40


class UsageError(ValueError):
    pass


def parse_c(text: str, p: int, prec: int | None) -> PAdicInt:
    """``-2`` style integers, or ``digits:d0.d1d2...`` in base p."""
    text = text.strip()
    if text.startswith("digits:"):
        c = PAdicInt.from_digits(text[len("digits:"):], p)
        if prec is not None:
            if prec > c.precision:
                raise UsageError(f"--prec {prec} exceeds the {c.precision} digits given")
            c = c.reduce(prec)
        return c
    try:
        n = int(text)
    except ValueError:
        raise UsageError(f"cannot parse parameter {text!r}: expected an integer or digits:...") from None
    return PAdicInt(p, prec or DEFAULT_INT_PRECISION, n)


def parse_range(text: str) -> list[int]:
    """``2..5`` or ``2,3,5`` or ``4``."""
    out: list[int] = []
    for part in text.split(","):
        lo, dots, hi = part.partition("..")
        try:
            out.extend(range(int(lo), int(hi) + 1) if dots else [int(lo)])
        except ValueError:
            raise UsageError(f"bad range {text!r}") from None
    return out


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _param(args) -> PAdicInt:
    if args.c is None:
        raise UsageError("--c is required")
    return parse_c(args.c, args.p, args.prec)


# -- subcommands ----------------------------------------------------------


def cmd_orbit(args) -> int:
    # an integer parameter only needs as many digits as the level asks for
    integer = not args.c.strip().startswith("digits:")
    c = parse_c(args.c, args.p, args.prec or (args.level if integer else None))
    record = orbit_mod(c, args.level)
    if args.format == "json":
        _emit(_dump({"schema": SCHEMA, **record.to_dict()}), args.out)
    else:
        _emit(f"{record.arrow_chain()}  {record.orbit_type}\n", args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    c = _param(args)
    cls = classify(c, args.kmax)
    if args.format == "json":
        _emit(_dump({"schema": SCHEMA, "p": c.p, "c": c.to_digits(), **cls.to_dict()}), args.out)
    else:
        _emit(reports.classification_text(cls), args.out)
    return EXIT_OK


def cmd_profile(args) -> int:
    c = _param(args)
    profile = level_profile(c, args.level)
    if args.format == "json":
        _emit(_dump({"schema": SCHEMA, **profile.to_dict()}), args.out)
    else:
        _emit(reports.profile_text(profile), args.out)
    return EXIT_OK


def cmd_pcf(args) -> int:
    params = enumerate_pcf(args.p, args.prec)
    if args.format == "json":
        _emit(_dump({"schema": SCHEMA, "p": args.p, "parameters": [x.to_dict() for x in params]}), args.out)
    else:
        _emit(reports.pcf_text(params), args.out)
    return EXIT_OK


def cmd_tree(args) -> int:
    tree = critical_orbit_tree(_param(args), args.depth)
    if args.format == "json":
        _emit(_dump(tree.to_dict()), args.out)
    elif args.format == "text":
        lines = [f"{a.label} -> {b.label}  (length {n})" for a, b, n in tree.edges()]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(tree.to_dot(), args.out)
    return EXIT_OK


def cmd_atlas(args) -> int:
    atlas = atlas_sweep(args.p, args.depth or 2)
    render = {"json": lambda: _dump(atlas.to_dict()), "dot": atlas.to_dot, "text": atlas.to_text}
    _emit(render[args.format](), args.out)
    return EXIT_OK


def cmd_figures(args) -> int:
    bundle = reports.figure_trees(args.p)
    if bundle.provisional and (args.out or args.format != "text"):
        print(f"PROVISIONAL: the PCF list for p={args.p} is not known to be complete", file=sys.stderr)
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for e in bundle.entries:
            (outdir / e.filename).write_text(e.tree.to_dot(), encoding="utf-8")
        (outdir / "index.json").write_text(_dump(bundle.index()), encoding="utf-8")
        sys.stdout.write(bundle.to_text())
    elif args.format == "json":
        index = bundle.index()
        for entry, e in zip(index["trees"], bundle.entries):
            entry["dot"] = e.tree.to_dot()
        sys.stdout.write(_dump(index))
    elif args.format == "dot":
        sys.stdout.write("".join(e.tree.to_dot() for e in bundle.entries))
    else:
        sys.stdout.write(bundle.to_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    primes = parse_range(args.primes) if args.primes else [3, 5, 7]
    seed = args.seed if args.seed is not None else 0
    name = args.suite
    if name == "c2":
        i_values = parse_range(args.i) if args.i else [6]
        result = suites.suite_c2(ks=tuple(parse_range(args.k) if args.k else [2, 3, 4, 5]),
                                 i_max=max(i_values), samples=args.samples or 0, seed=seed)
    elif name == "lemma54":
        result = suites.suite_cubing(samples=args.samples or 50, seed=seed)
    elif name == "tail":
        result = suites.suite_tail(primes, samples=args.samples or 500, k_max=args.kmax or 8, seed=seed)
    elif name == "pezda":
        result = suites.suite_cycle_lengths(primes, samples=args.samples or 200, k_max=args.kmax or 8, seed=seed)
    elif name == "counts":
        result = suites.suite_counts(primes)
    elif name == "explore":
        ks = parse_range(args.k) if args.k else [2, 3]
        rows = [reports.explore_near_pcf(k, l, args.seed) for k in ks for l in (1, 2)]
        _emit(_dump(rows) if args.format == "json" else
              "".join(f"k={r['k']} l={r['l']} distance={r['distance_val']} "
                      f"types={[tuple(t[1:]) for t in r['profile']]}\n" for r in rows), args.out)
        return EXIT_OK
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown suite {name!r}")
    _emit(_dump(result.to_dict()) if args.format == "json" else result.summary(), args.out)
    return EXIT_OK if result.passed else EXIT_FAILED


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padic-orbits", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, fmt="text", p_required=True):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        if p_required is not None:
            sp.add_argument("--p", type=int, required=p_required, help="prime")
        sp.add_argument("--format", choices=("json", "dot", "text"), default=fmt)
        sp.add_argument("--out", help="write output to this path instead of stdout")
        return sp

    sp = add("orbit", cmd_orbit, "critical orbit mod p^level")
    sp.add_argument("--c", required=True, help="integer or digits:d0.d1d2...")
    sp.add_argument("--level", type=int, default=1)
    sp.add_argument("--prec", type=int)

    sp = add("classify", cmd_classify, "orbit type over Z_p from its truncations")
    sp.add_argument("--c", required=True)
    sp.add_argument("--prec", type=int)
    sp.add_argument("--kmax", type=int, help="levels to examine (default: until a verdict is forced)")

    sp = add("profile", cmd_profile, "orbit types at levels 1..level")
    sp.add_argument("--c", required=True)
    sp.add_argument("--level", type=int, default=6)
    sp.add_argument("--prec", type=int)

    sp = add("pcf", cmd_pcf, "all PCF parameters in Z_p", fmt="json")
    sp.add_argument("--prec", type=int, help="certification precision (default per orbit type)")

    sp = add("tree", cmd_tree, "critical orbit tree", fmt="dot")
    sp.add_argument("--c", required=True)
    sp.add_argument("--depth", type=int)
    sp.add_argument("--prec", type=int)

    sp = add("atlas", cmd_atlas, "parameter space labelled by orbit type", fmt="json")
    sp.add_argument("--depth", type=int, default=2)

    add("figures", cmd_figures, "critical orbit trees of every PCF parameter")

    sp = add("verify", cmd_verify, "run a verification suite", p_required=None)
    sp.add_argument("suite", choices=("c2", "lemma54", "pezda", "tail", "counts", "explore"))
    sp.add_argument("--p", dest="primes", help="primes, e.g. 3,5,7")
    sp.add_argument("--k", help="levels k, e.g. 2..5")
    sp.add_argument("--i", help="levels past k, e.g. 1..6 (the maximum is used)")
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--kmax", type=int)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (OrbitInvariantError, TreeShapeError, FrontierExplosion) as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UsageError, PrecisionError, ValueError) as exc:
        print(f"padic-orbits {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
