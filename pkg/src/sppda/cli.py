"""Command-line front end.

Subcommands: construct, verify, simulate, search, sweep, formulas.
PDA inputs are either files in the text format or family specs
``man:K,t`` / ``consa:q,m``.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import analysis, permsearch, sim, textio
from .arrays import AssociationProfile, ParameterError, PdaArray, construction_a_pda, man_pda
from .construct import construct_sppda, s_closed_form_construction_a, s_closed_form_man, verify_sppda


def _load_pda(spec: str) -> PdaArray:
    if spec.startswith("man:"):
        k, t = (int(x) for x in spec[4:].split(","))
        return man_pda(k, t)
    if spec.startswith("consa:"):
        q, m = (int(x) for x in spec[6:].split(","))
        return construction_a_pda(q, m)
    text = Path(spec).read_text()
    return textio.parse_pda(text)


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    profile = AssociationProfile.parse(args.profile)
    p1 = _load_pda(args.p1)
    p2 = _load_pda(args.p2)
    sp = construct_sppda(p1, p2, profile)
    _emit(textio.sppda_to_json(sp) if args.json else textio.write_sppda(sp), args.output)
    return 0


def cmd_verify(args) -> int:
    text = Path(args.file).read_text()
    head = text.lstrip().split(None, 1)[0] if text.strip() else ""
    if head == "sppda":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        zh = int(lines[0].split()[5])
        profile = AssociationProfile(tuple(int(x) for x in lines[1][2:].split()))
        pi_text = lines[2][3:].split()
        grouping = None if pi_text == ["id"] else tuple(int(x) - 1 for x in pi_text)
        grid = textio.grid_from_text("\n".join(lines[3:]))
        check = verify_sppda(grid, profile, zh, grouping=grouping)
        if check.ok:
            p = check.params
            print(f"valid sppda: K={p.k} Lambda={p.num_helpers} L={p.profile.parts} "
                  f"F={p.f} Z={p.z} Zh={p.zh} S={p.s}")
            return 0
        for v in check.pda_check.violations:
            print(f"violation {v.kind}: {v.detail} (rows {v.rows}, cols {v.cols})")
        for fl in check.failures:
            print(f"violation D2: group {fl.group} has {fl.star_rows} all-star rows, needs {zh}")
        return 1
    if head == "pda":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        grid = textio.grid_from_text("\n".join(lines[1:]))
    else:
        grid = textio.grid_from_text(text)
    from .arrays import verify_pda
    check = verify_pda(grid)
    if check.ok:
        k, f, z, s = check.params
        print(f"valid pda: K={k} F={f} Z={z} S={s}")
        return 0
    for v in check.violations:
        print(f"violation {v.kind}: {v.detail} (rows {v.rows}, cols {v.cols})")
    return 1


def cmd_simulate(args) -> int:
    sp = textio.parse_sppda(Path(args.file).read_text())
    f = sp.pda.f
    if args.synthetic:
        n, size, seed = (int(x) for x in args.synthetic.split(","))
        library = sim.FileLibrary.synthetic(n, size, f, seed)
    elif args.library:
        library = sim.FileLibrary.from_dir(args.library, f)
    else:
        print("need --library DIR or --synthetic N,B,seed", file=sys.stderr)
        return 2
    if args.worst_case:
        if library.n < sp.pda.k:
            print(f"worst case needs N >= K ({library.n} < {sp.pda.k})", file=sys.stderr)
            return 2
        demands = tuple(range(1, sp.pda.k + 1))
    elif args.demands:
        demands = tuple(int(x) for x in args.demands.split(","))
    else:
        print("need --demands d1,...,dK or --worst-case", file=sys.stderr)
        return 2
    report = sim.sp_run(sp, library, demands)
    sys.stdout.write(sim.format_report(report))
    sys.stdout.write(sim.report_csv_row(report))
    if args.log:
        Path(args.log).write_text(sim.format_transmission_log(report.transmissions))
    return 0 if report.all_decoded else 1


def cmd_search(args) -> int:
    profile = AssociationProfile.parse(args.profile)
    p1 = _load_pda(args.p1)
    p2 = _load_pda(args.p2)
    if args.greedy:
        r1 = permsearch.heuristic_reorder(p1, profile, side="first")
        r2 = permsearch.heuristic_reorder(p2, profile, side="second")
        from .construct import s_count
        before = s_count(p1, p2, profile)
        after = s_count(r1, r2, profile)
        print(f"greedy: S {before} -> {after}")
        if args.output:
            Path(args.output).write_text(
                "side,s_before,s_after\n" f"both,{before},{after}\n")
        return 0
    result = permsearch.exhaustive_best(p1, p2, profile, budget=args.budget)
    pairs = permsearch.top_pairs(p1, p2, profile, limit=args.top, budget=args.budget)
    lines = ["pi1,pi2,S"]
    for pair in pairs:
        pi1 = " ".join(str(x + 1) for x in pair.pi1)
        pi2 = " ".join(str(x + 1) for x in pair.pi2)
        lines.append(f"{pi1},{pi2},{pair.s_value}")
    lines.append(f"s_min,,{result.s_min}")
    lines.append(f"s_max,,{result.s_max}")
    csv = "\n".join(lines) + "\n"
    _emit(csv, args.output)
    return 0


def cmd_sweep(args) -> int:
    profile = AssociationProfile.parse(args.profile)
    l1 = profile.part(1)
    if args.t2:
        lo, hi = (int(x) for x in args.t2.split(":"))
        t2_values = tuple(range(lo, hi + 1))
    else:
        t2_values = tuple(range(0, l1 + 1))
    schemes = tuple(
        {"man": "man_pair", "consa": "construction_a_pair"}.get(s, s)
        for s in args.schemes.split(","))
    config = analysis.SweepConfig(profile, Fraction(args.mh_ratio), t2_values,
                                  schemes, args.verify_cap)
    points = analysis.sweep(config)
    _emit(analysis.sweep_csv(points), args.output)
    return 0


def cmd_formulas(args) -> int:
    profile = AssociationProfile.parse(args.profile)
    if args.family == "man":
        s = s_closed_form_man(profile.num_groups, args.t1, profile, args.t2)
        rate = analysis.rate_man_pair(profile.num_groups, args.t1, profile, args.t2)
        print(f"S = {s}")
        print(f"rate = {rate} ({float(rate):.6g})")
    else:
        if args.q is None or args.m is None:
            print("consa formulas need --q and --m", file=sys.stderr)
            return 2
        s = s_closed_form_construction_a(args.q, args.m, profile, args.t2)
        rate = analysis.rate_construction_a(args.q, args.m, profile, args.t2)
        print(f"S = {s}")
        print(f"rate = {rate} ({float(rate):.6g})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sppda",
                                     description="Coded caching with shared and private caches")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build an SP-PDA from two PDAs")
    p.add_argument("p1", help="first PDA: file, man:K,t, or consa:q,m")
    p.add_argument("p2", help="second PDA: file, man:K,t, or consa:q,m")
    p.add_argument("--profile", required=True, help="association profile, e.g. 3,2")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="validate a PDA or SP-PDA file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="run the caching scheme bit-exactly")
    p.add_argument("file", help="SP-PDA file")
    p.add_argument("--library", help="directory of equal-role binary files")
    p.add_argument("--synthetic", help="N,B,seed for a generated library")
    p.add_argument("--demands", help="comma-separated 1-based file indices")
    p.add_argument("--worst-case", action="store_true", help="demands = (1, ..., K)")
    p.add_argument("--log", help="write the transmission log here")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("search", help="minimize S over column permutations")
    p.add_argument("p1")
    p.add_argument("p2")
    p.add_argument("--profile", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", default=True)
    mode.add_argument("--greedy", action="store_true")
    p.add_argument("--budget", type=int, default=10 ** 7)
    p.add_argument("--top", type=int, default=10)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("sweep", help="closed-form rate/subpacketization sweep")
    p.add_argument("--profile", required=True)
    p.add_argument("--mh-ratio", required=True, help="helper memory fraction, e.g. 1/2")
    p.add_argument("--t2", help="t2 range lo:hi (default 0:L1)")
    p.add_argument("--schemes", default="man,consa")
    p.add_argument("--verify-cap", type=int, default=10 ** 5)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("formulas", help="evaluate the closed-form code counts")
    p.add_argument("family", choices=["man", "consa"])
    p.add_argument("--profile", required=True)
    p.add_argument("--t1", type=int, help="MaN first-array parameter")
    p.add_argument("--t2", type=int, required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_formulas)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
