"""Command-line entry point.

Exit codes: 0 every check passed, 1 some check failed, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import __version__
from .bruhat import DEFAULT_GUARD, bruhat_classes, c_notation, enumerate_admissible, format_chain, subsets
from .equations import (
    analyze_config,
    classic_form,
    exhaustive_scan,
    generate,
    geometric_form,
    normalize_to_shorthand,
    render_shorthand,
    starting_configs,
)
from .errors import InternalError, TetraError
from .formats import RunReport, read_arrangement, read_tensor
from .geometry import classify_orders, direction_angle, equation_from_direction, standard_labeling
from .selfcheck import golden_mismatches, run_selfcheck
from .tensors import DEFAULT_TOL, MAX_M, ComplexTensor, ModelBundle
from .verify import (
    VerifyReport,
    collapse_check,
    lawrence_construct,
    verify_classic,
    verify_eight,
    verify_obstruction_tetra,
    verify_obstruction_yb,
    verify_unitarity,
    verify_ybe,
)
from .words import format_opword

WHICH = ("eight", "classic", "ybe", "obstruction", "unitarity", "collapse", "lawrence")


class UsageError(Exception):
    pass


def _emit(rep: RunReport, as_json: bool) -> int:
    sys.stdout.write(rep.to_json() + "\n" if as_json else rep.to_text())
    return 0 if rep.passed else 1


def _absorb(rep: RunReport, vr: VerifyReport) -> None:
    for r in vr.results:
        rep.results.append(r.as_dict())
    for f in vr.flags:
        rep.info.setdefault("flags", [])
        if f not in rep.info["flags"]:
            rep.info["flags"].append(f)


# -- subcommands ---------------------------------------------------------------


def cmd_bruhat(args) -> RunReport:
    n, k = args.n, args.k
    rep = RunReport(f"bruhat --n {n} --k {k}", __version__)
    admissible = enumerate_admissible(n, k, args.max_size)
    classes = bruhat_classes(n, k, args.max_size)
    rep.info.update({"C(n,k)": len(subsets(n, k)), "A(n,k)": len(admissible), "B(n,k)": len(classes)})
    for cl in classes:
        chain = cl.representative.chain
        rep.lines.append(f"[{c_notation(chain, n, k)}]  {format_chain(chain)}  ({len(cl)} members)")
    rep.info["classes"] = [format_chain(cl.representative.chain) for cl in classes]
    return rep


def cmd_derive(args) -> RunReport:
    rep = RunReport("derive" + "".join(f" --{f}" for f in ("exhaustive", "shorthand", "classic") if getattr(args, f)),
                    __version__)
    if args.exhaustive:
        scan = exhaustive_scan()
        rep.info.update({"words": scan.words_scanned, "with derivations": scan.words_with_derivations,
                         "histogram": scan.derivation_histogram, "groups": scan.group_count})
        for key, members in scan.groups.items():
            rep.lines.append(f"group of {len(members)} words, e.g. {' '.join(str(x) for x in members[0])}")
            rep.lines.append(f"    {key[0]}  |  {key[1]}" if len(key) == 2 else f"    {key}")
        rep.add("exhaustive scan: 8 groups", scan.group_count == 8, groups=scan.group_count)
        return rep

    report = generate()
    eqs = report.equations
    if args.shorthand:
        for e in normalize_to_shorthand(eqs):
            rep.lines.append(f"{e.name} : {render_shorthand(e)}")
    elif args.classic:
        rep.lines.append(f"1,6 : {classic_form(eqs[0]).render()}")
    else:
        rep.lines.append("starting configurations:")
        for res in report.configs:
            ok = res.successful
            status = "no complete derivation" if not ok else \
                f"{sum(len(d) for d in ok.values())} derivations from {' '.join(str(x) for x in next(iter(ok)))}"
            rep.lines.append(f"  {res.config.name:4s} {str(res.config):40s} {status}")
        rep.lines.append("equations:")
        rep.lines += [f"  {e.name} : {e.render()}" for e in eqs]
        rep.lines.append("shorthand:")
        rep.lines += [f"  {e.name} : {render_shorthand(e)}" for e in normalize_to_shorthand(eqs)]
        rep.lines.append("geometric:")
        rep.lines += [f"  {e.name} : {geometric_form(e).render()}" for e in eqs]
        rep.lines.append(f"classic:\n  {classic_form(eqs[0]).render()}")
        configs = starting_configs(include_reversed=False)
        counts = {c.name: sum(len(d) for d in analyze_config(c).successful.values()) for c in configs}
        rep.add("14 configurations: primed fail, others give 2",
                all((n == 0) if "'" in name else (n == 2) for name, n in counts.items()))
    bad = golden_mismatches(args.golden_dir, eqs)
    rep.add("golden files", not bad, **({"mismatch": "; ".join(bad)} if bad else {}))
    return rep


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--which {args.current} needs {', '.join(missing)}")


def _bundle(args) -> ModelBundle:
    s = read_tensor(args.s, ("S",))
    stilde = read_tensor(args.stilde, ("Stilde",)) if args.stilde else "from-unitarity"
    q = read_tensor(args.q, ("Q",)) if args.q else "identity"
    if args.m is not None and s.m != args.m:
        raise UsageError(f"--m {args.m} does not match S (m = {s.m})")
    return ModelBundle(s.m, s, stilde, q)


def cmd_verify(args) -> RunReport:
    which = [w.strip() for w in args.which.split(",") if w.strip()]
    unknown = [w for w in which if w not in WHICH]
    if unknown or not which:
        raise UsageError(f"--which takes a comma list from {', '.join(WHICH)}")
    if args.m is not None and not 1 <= args.m <= MAX_M:
        raise UsageError(f"--m must be in 1..{MAX_M}")
    if not (args.tol >= 0 and math.isfinite(args.tol)):
        raise UsageError("--tol must be a non-negative number")
    rep = RunReport(f"verify --which {','.join(which)}", __version__, info={"tolerance": args.tol})
    tol = args.tol
    for w in which:
        args.current = w
        if w == "eight":
            _need(args, "s")
            _absorb(rep, verify_eight(_bundle(args), tol))
        elif w == "classic":
            _need(args, "s")
            s = read_tensor(args.s, ("S",))
            _absorb(rep, verify_classic(s, args.m, tol))
        elif w == "ybe":
            _need(args, "r")
            _absorb(rep, verify_ybe(read_tensor(args.r, ("R",)), tol))
        elif w == "obstruction":
            ran = False
            if args.family is not None:
                _need(args, "r")
                _absorb(rep, verify_obstruction_yb(read_tensor(args.family, ("M",)), read_tensor(args.r, ("R",)), tol))
                ran = True
            if args.pairwise is not None:
                _need(args, "s")
                st = read_tensor(args.stilde, ("Stilde",)) if args.stilde else None
                _absorb(rep, verify_obstruction_tetra(read_tensor(args.pairwise, ("Rset",)),
                                                      read_tensor(args.s, ("S",)), tol, st))
                ran = True
            if not ran:
                raise UsageError("--which obstruction needs --family with --r, or --pairwise with --s")
        elif w == "unitarity":
            ran = False
            if args.r is not None:
                _absorb(rep, verify_unitarity("R", read_tensor(args.r, ("R",)), tol))
                ran = True
            if args.s is not None:
                b = _bundle(args)
                _absorb(rep, verify_unitarity("S", b, tol))
                if args.q is not None:
                    _absorb(rep, verify_unitarity("Q", b, tol))
                ran = True
            elif args.q is not None:
                q = read_tensor(args.q, ("Q",))
                b = ModelBundle(q.m, ComplexTensor.identity(q.m, 3), "from-unitarity", q)
                _absorb(rep, verify_unitarity("Q", b, tol))
                ran = True
            if not ran:
                raise UsageError("--which unitarity needs at least one of --r, --s, --q")
        elif w == "collapse":
            _need(args, "s")
            s = read_tensor(args.s, ("S",))
            st = read_tensor(args.stilde, ("Stilde",)) if args.stilde else None
            _absorb(rep, collapse_check(s, args.m, tol, st))
        elif w == "lawrence":
            _need(args, "q")
            qy = read_tensor(args.q, ("Q",))
            bundle = lawrence_construct(qy)
            vr = verify_eight(bundle, tol)
            for r in vr.results:
                d = r.as_dict()
                d["check"] = "lawrence " + d["check"]
                rep.results.append(d)
    return rep


def cmd_sweep(args) -> RunReport:
    af = read_arrangement(args.arrangement)
    rep = RunReport(f"sweep --arrangement {args.arrangement}", __version__)
    if args.relabel:
        arr, perm = standard_labeling(af.arrangement)
        af = type(af)(arr, af.directions)
        rep.info["relabeling"] = " ".join(f"{a}->{b}" for a, b in perm.items())
    reports = classify_orders(af.arrangement)
    for r in reports:
        a, b = r.interval
        rep.lines.append(
            f"[{math.degrees(a):8.3f}, {math.degrees(b):8.3f}) deg  "
            f"{c_notation(r.chain, 4, 2)}  class [{c_notation(r.bruhat_class.representative.chain, 4, 2)}]  "
            f"{format_opword(r.letters)}"
        )
    for name, vec in af.directions.items():
        t = direction_angle(vec)
        rep.lines.append(f"direction {name}: {format_opword(equation_from_direction(af.arrangement, t))}")
    classes = {r.bruhat_class.representative for r in reports}
    rep.info.update({"sectors": len(reports), "classes": len(classes)})
    # classify_orders raises on an inadmissible order, so reaching here means all passed
    rep.add("all sweep orders admissible", True, sectors=len(reports))
    return rep


def cmd_selfcheck(args) -> RunReport:
    return run_selfcheck(args.seed, args.golden_dir, scan=not args.no_scan)


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tetrahedron", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"tetrahedron {__version__}")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable report")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bruhat", parents=[common], help="enumerate C(n,k), A(n,k) and B(n,k)")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--max-size", type=int, default=DEFAULT_GUARD, help="guard on |C(n,k)|")
    b.set_defaults(func=cmd_bruhat)

    d = sub.add_parser("derive", parents=[common], help="derive the eight equations from the rewriting rules")
    g = d.add_mutually_exclusive_group()
    g.add_argument("--exhaustive", action="store_true", help="scan every orientation-assigned word")
    g.add_argument("--shorthand", action="store_true")
    g.add_argument("--classic", action="store_true")
    d.add_argument("--golden-dir", default=None, help="directory with golden files (default: bundled)")
    d.set_defaults(func=cmd_derive)

    v = sub.add_parser("verify", parents=[common], help="numeric checks on tensor files")
    v.add_argument("--which", required=True, help=f"comma list from {', '.join(WHICH)}")
    v.add_argument("--s")
    v.add_argument("--stilde")
    v.add_argument("--q")
    v.add_argument("--r")
    v.add_argument("--family", help="kind M file for the Yang-Baxter level obstruction")
    v.add_argument("--pairwise", help="kind Rset file for the tetrahedron level obstruction")
    v.add_argument("--m", type=int)
    v.add_argument("--tol", type=float, default=DEFAULT_TOL)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", parents=[common], help="sweep orders of a four-line arrangement")
    s.add_argument("--arrangement", required=True)
    s.add_argument("--relabel", action="store_true",
                   help="renumber the lines so each meets the others in id order")
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("selfcheck", parents=[common], help="run the full invariant battery")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--golden-dir", default=None)
    c.add_argument("--no-scan", action="store_true", help="skip the exhaustive scan")
    c.set_defaults(func=cmd_selfcheck)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if exc.code in (0, None) else 2
    try:
        rep = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except TetraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return _emit(rep, args.json)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
