"""Command-line front end: ``mbgame {validate,solve,oracle,fixture}``.

Exit codes: 0 ok, 1 invalid spec, 2 I/O or parse error, 3 not potential,
4 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from mbgame import gamefile
from mbgame.equilibrium import AUTO_ORACLE_CAP, ORACLE_CAP, mbne_oracle, ne_oracle, solve_mbne
from mbgame.fixtures import random_spec
from mbgame.meag import build_meag
from mbgame.model import SizeCapExceeded, SpecError, validate
from mbgame.stp import DimensionOverflow

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_NOT_POTENTIAL, EXIT_CAP = 0, 1, 2, 3, 4


def _load(path):
    """Load and validate; returns (spec, generator_block, exit_code_or_None)."""
    gen = None
    try:
        spec, gen = gamefile.load_game_with_meta(path)
    except gamefile.GameFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, gen, EXIT_IO
    except SpecError as exc:
        print(f"invalid spec: {exc}", file=sys.stderr)
        return None, gen, EXIT_INVALID
    rep = validate(spec)
    if not rep.ok:
        for p in rep.problems:
            print(f"invalid spec: {p}", file=sys.stderr)
        only_caps = all(p.startswith("size cap") for p in rep.problems)
        return None, gen, EXIT_CAP if only_caps else EXIT_INVALID
    return spec, gen, None


def _write_report(doc: dict, out: str | None) -> None:
    text = gamefile.report_text(doc)
    sys.stdout.write(text)
    if out:
        path = Path(out)
        path.write_text(gamefile.dumps(doc), encoding="utf-8")
        path.with_suffix(path.suffix + ".txt").write_text(text, encoding="utf-8")


def cmd_validate(args) -> int:
    spec, gen, code = _load(args.path)
    if spec is None:
        return code
    lay = spec.layout
    print(
        f"ok: m={spec.m} groups={list(spec.group_sizes)} e={spec.e} g={spec.g} "
        f"agents={len(lay.agents)} htilde={lay.htilde}"
    )
    return EXIT_OK


def cmd_solve(args) -> int:
    spec, gen, code = _load(args.path)
    if spec is None:
        return code
    t0 = time.perf_counter()
    try:
        rep = solve_mbne(
            spec,
            mode=args.mode,
            tol=args.tol,
            tie_tol=args.tie_tol,
            oracle=args.oracle,
            method=args.method,
        )
    except (SizeCapExceeded, DimensionOverflow) as exc:
        print(f"size cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    doc = gamefile.report_document(spec, rep, generator=gen, force_vector=args.force_vector)
    if args.timing:
        doc["timing_s"] = round(time.perf_counter() - t0, 3)
    _write_report(doc, args.out)
    return EXIT_OK if rep.potential_solvable else EXIT_NOT_POTENTIAL


def cmd_oracle(args) -> int:
    spec, gen, code = _load(args.path)
    if spec is None:
        return code
    cap = max(ORACLE_CAP, spec.layout.htilde) if args.force else ORACLE_CAP
    try:
        ne = ne_oracle(build_meag(spec, method="direct"), args.mode, cap=cap)
        mbne = mbne_oracle(spec, args.mode, cap=cap)
    except SizeCapExceeded as exc:
        print(f"size cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    _write_report(gamefile.oracle_document(spec, args.mode, ne, mbne, generator=gen), args.out)
    return EXIT_OK


def cmd_fixture(args) -> int:
    if args.name == "example4":
        doc = gamefile.example4_document()
    else:
        try:
            groups = [int(x) for x in args.groups.split(",")]
        except ValueError:
            print(f"error: bad --groups {args.groups!r}", file=sys.stderr)
            return EXIT_IO
        kind = "potential" if args.potential else args.kind
        rng = np.random.default_rng(args.seed)
        spec = random_spec(rng, groups, e=args.e, g=args.g, kind=kind, zero_prob=args.zero_prob)
        doc = gamefile.game_document(spec)
        doc["generator"] = {
            "name": "random",
            "seed": args.seed,
            "kind": kind,
            "zero_prob": args.zero_prob,
        }
    text = gamefile.dumps(doc)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mbgame", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check a game file")
    v.add_argument("path")
    v.set_defaults(func=cmd_validate)

    s = sub.add_parser("solve", help="potential pipeline: agent game, potential, equilibria")
    s.add_argument("path")
    s.add_argument("--mode", choices=("group", "strong"), default="group")
    s.add_argument("--tol", type=float, default=1e-8, help="relative residual for solvability")
    s.add_argument("--tie-tol", type=float, default=1e-9, help="relative tie tolerance for the argmax")
    s.add_argument(
        "--oracle",
        choices=("on", "off", "auto"),
        default="auto",
        help=f"brute-force cross-check (auto: only when htilde <= {AUTO_ORACLE_CAP})",
    )
    s.add_argument(
        "--method",
        choices=("auto", "stp", "direct"),
        default="auto",
        help="payoff construction route (auto: stp when htilde <= 4096)",
    )
    s.add_argument("--out", help="write the JSON report here (and a .txt table beside it)")
    s.add_argument("--force-vector", action="store_true", help="include the potential vector at any size")
    s.add_argument("--timing", action="store_true", help="record wall time (breaks byte-identical reports)")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", help="brute-force equilibria only")
    o.add_argument("path")
    o.add_argument("--mode", choices=("group", "strong"), default="group")
    o.add_argument("--out")
    o.add_argument("--force", action="store_true", help=f"ignore the {ORACLE_CAP}-profile cap")
    o.set_defaults(func=cmd_oracle)

    f = sub.add_parser("fixture", help="write a bundled or seeded random game file")
    f.add_argument("name", choices=("example4", "random"))
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--groups", default="1,2", help="comma-separated group sizes (random only)")
    f.add_argument("-e", type=int, default=2, help="types per player (random only)")
    f.add_argument("-g", type=int, default=2, help="actions per player (random only)")
    f.add_argument("--kind", choices=("generic", "potential", "strong"), default="generic")
    f.add_argument("--potential", action="store_true", help="shorthand for --kind potential")
    f.add_argument("--zero-prob", type=float, default=0.0, help="chance of a zero prior entry")
    f.add_argument("--out")
    f.set_defaults(func=cmd_fixture)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
