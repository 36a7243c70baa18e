"""Command-line front end: ``ncsieve <command> [options]``.

Exit status is 0 when every checked identity holds, 1 when some row
fails and 2 for usage or data errors.  Reports go to stdout, progress
messages to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .absorder import nc_index
from .decomp import ParabolicType, TypeLookupError, decomposition_number, nc_types
from .groups import DATA_DIR_ENV, GroupError, load_group, parse_word
from .ncm import ActionKind
from .qcat import TheoryViolation, eval_at, fuss_catalan
from .sieve import (
    format_exact,
    OrbitEquation,
    centralizer_mask,
    classify_p,
    composition_counts,
    orbit_structure,
    solve_orbit_equation,
    verify_csp,
    verify_csp_all_m,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", required=True, help='catalog name, e.g. A3, "I2(5)", E8, G24')
    common.add_argument("--output", choices=("text", "machine"), default="text")
    common.add_argument("--data-dir", help=f"group data directory (default: ${DATA_DIR_ENV} or the bundled data)")

    action = argparse.ArgumentParser(add_help=False)
    action.add_argument("--action", choices=("phi", "psi"), default="phi")

    parser = argparse.ArgumentParser(prog="ncsieve", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("group-info", parents=[common], help="degrees, Coxeter number, reflections")

    p = sub.add_parser("nc-enum", parents=[common], help="strata of [1, c] with parabolic types")
    p.add_argument("--solutions", action="store_true", help="list the elements of each stratum")

    p = sub.add_parser("cat-eval", parents=[common, action], help="Cat^m(W; q) at the root for p")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("csp-verify", parents=[common, action], help="check every p for one m")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--mode", choices=("auto", "structured", "brute"), default="auto")
    p.add_argument("--workers", type=_positive, default=os.cpu_count() or 1)
    p.add_argument("--brute-bound", type=_positive, default=200_000)
    p.add_argument("--solutions", action="store_true", help="include solution lists of searched rows")

    p = sub.add_parser("csp-verify-all", parents=[common, action], help="certify all m by interpolation")
    p.add_argument("--m-bound", type=_positive, default=200)
    p.add_argument("--degree-bound", type=int)
    p.add_argument("--brute-bound", type=_positive, default=20_000)

    p = sub.add_parser("decomp", parents=[common], help="decomposition numbers by parabolic type")
    p.add_argument("--types", required=True, help="comma-separated types, e.g. A1,A2")
    p.add_argument("--below", help="bracket word of an element of [1, c] replacing c")

    p = sub.add_parser("solve-equation", parents=[common, action], help="solve one orbit equation")
    p.add_argument("--exponents", type=_int_list)
    p.add_argument("--lengths", type=_int_list)
    p.add_argument("--relation", choices=("equals-c", "below-c"), default="below-c")
    p.add_argument("--centralizer", type=int, default=0, help="exponent E of w = c^E w c^-E")
    p.add_argument("--m", type=_positive, help="derive the equation from (m, p, action) instead")
    p.add_argument("--p", type=int)
    p.add_argument("--factors", type=_positive, help="also count r-factor splittings by length composition")
    p.add_argument("--solutions", action="store_true")
    return parser


def _emit(doc: dict, text: str, output: str):
    if output == "machine":
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")
    sys.stdout.flush()


def _envelope(command: str, body: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, **body}


def _group_info(g) -> tuple[dict, str]:
    idx = nc_index(g)
    doc = {
        "group": g.name,
        "rank": g.rank,
        "field_order": g.field_order,
        "degrees": list(g.degrees),
        "codegrees": list(g.codegrees),
        "coxeter_number": g.h,
        "order": str(g.order),
        "reflections": len(g.reflections),
        "coxeter_word": list(g.spec.coxeter_word),
        "nc_size": len(idx),
        "catalan": str(fuss_catalan(g, 1)),
        "real": g.is_real,
    }
    text = "\n".join(
        [
            f"group        {g.name}",
            f"rank         {g.rank}",
            f"degrees      {', '.join(map(str, g.degrees))}",
            f"codegrees    {', '.join(map(str, g.codegrees))}",
            f"h            {g.h}",
            f"order        {g.order}",
            f"reflections  {len(g.reflections)}",
            f"|NC(W)|      {len(idx)}",
        ]
    )
    return doc, text


def _nc_enum(g, with_elements: bool) -> tuple[dict, str]:
    idx = nc_index(g)
    types = nc_types(g)
    strata = []
    lines = [f"{g.name}: |NC(W)| = {len(idx)}"]
    for k in range(g.rank + 1):
        members = idx.stratum(k)
        counts: dict[str, int] = {}
        for i in members.tolist():
            counts[str(types[i])] = counts.get(str(types[i]), 0) + 1
        entry = {"length": k, "size": len(members), "types": dict(sorted(counts.items()))}
        if with_elements:
            entry["elements"] = [idx.elements[i].to_dict() for i in members.tolist()]
        strata.append(entry)
        lines.append(f"  length {k}: {len(members):>6}  " + ", ".join(f"{t} {v}" for t, v in sorted(counts.items())))
    return {"group": g.name, "nc_size": len(idx), "strata": strata}, "\n".join(lines)


def _solve(args, g) -> tuple[dict, str]:
    if args.m is not None:
        if args.p is None:
            raise UsageError("--m needs --p")
        kind = ActionKind.parse(args.action)
        mod = (args.m if kind is ActionKind.PHI else args.m + 1) * g.h
        if not 0 <= args.p < mod:
            raise UsageError(f"--p must lie in [0, {mod})")
        st = orbit_structure(g, args.m, args.p, kind)
        eq = st.equation(g)
        if args.lengths:
            eq = OrbitEquation(eq.exponents, tuple(args.lengths), eq.relation, eq.centralizer_exponent)
    else:
        if not args.exponents or not args.lengths:
            raise UsageError("give --exponents and --lengths, or --m and --p")
        eq = OrbitEquation(tuple(args.exponents), tuple(args.lengths), args.relation, args.centralizer)
    eq = eq.normalized(g)
    inv = solve_orbit_equation(g, eq)
    doc = {"group": g.name, **inv.to_dict(with_solutions=args.solutions, g=g)}
    lines = [
        f"{g.name}: exponents {list(eq.exponents)}, relation {eq.relation}, centralizer c^{eq.centralizer_exponent}"
    ]
    for L in sorted(inv.solutions):
        types = ", ".join(f"{t} {v}" for t, v in inv.types[L].items())
        lines.append(f"  length {L}: {inv.count(L)} solutions" + (f" ({types})" if types else ""))
    if args.factors:
        mask = centralizer_mask(g, eq.centralizer_exponent)
        comps = composition_counts(g, inv, args.factors, None if mask.all() else mask)
        doc["compositions"] = {",".join(map(str, k)): v for k, v in comps.items()}
        for k, v in comps.items():
            lines.append(f"  lengths {k}: {v}")
    return doc, "\n".join(lines)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    saved = os.environ.get(DATA_DIR_ENV)
    try:
        return _dispatch(args)
    except (UsageError, ValueError, TypeLookupError) as exc:
        print(f"ncsieve: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GroupError, FileNotFoundError, OverflowError) as exc:
        print(f"ncsieve: data error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TheoryViolation as exc:
        print(f"ncsieve: check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    finally:
        # --data-dir is exported for worker processes only for this invocation
        if saved is None:
            os.environ.pop(DATA_DIR_ENV, None)
        else:
            os.environ[DATA_DIR_ENV] = saved


def _dispatch(args) -> int:
    if args.data_dir:
        os.environ[DATA_DIR_ENV] = args.data_dir
    g = load_group(args.group, args.data_dir)
    cmd = args.command
    status = EXIT_OK
    if cmd == "group-info":
        doc, text = _group_info(g)
    elif cmd == "nc-enum":
        doc, text = _nc_enum(g, args.solutions)
    elif cmd == "cat-eval":
        kind = ActionKind.parse(args.action)
        mod = (args.m if kind is ActionKind.PHI else args.m + 1) * g.h
        if not 0 <= args.p < mod:
            raise UsageError(f"--p must lie in [0, {mod})")
        value = eval_at(g, args.m, args.p, kind)
        cl = classify_p(g, args.m, args.p, kind)
        doc = {
            "group": g.name,
            "action": kind.value,
            "m": args.m,
            "p": args.p,
            "value": format_exact(value),
            "classification": cl.to_dict(),
        }
        text = format_exact(value)
    elif cmd == "csp-verify":
        report = verify_csp(
            g,
            args.m,
            args.action,
            mode=args.mode,
            brute_bound=args.brute_bound,
            verbose=True,
            workers=args.workers,
            data_dir=args.data_dir,
            with_solutions=args.solutions,
        )
        doc, text = report.to_dict(), report.to_text()
        status = EXIT_OK if report.passed else EXIT_FAIL
    elif cmd == "csp-verify-all":
        report = verify_csp_all_m(
            g,
            args.action,
            m_bound=args.m_bound,
            degree_bound=args.degree_bound,
            brute_bound=args.brute_bound,
            verbose=True,
        )
        doc, text = report.to_dict(), report.to_text()
        status = EXIT_OK if report.passed else EXIT_FAIL
    elif cmd == "decomp":
        types = [ParabolicType.parse(t) for t in args.types.split(",") if t.strip()]
        below = g.word(parse_word(args.below)) if args.below else None
        value = decomposition_number(g, types, below)
        # "minimal": factorizations of c itself; "prefix": of some element below c
        variant = "minimal" if below is None and sum(t.rank for t in types) == g.rank else "prefix"
        doc = {"group": g.name, "types": [str(t) for t in types], "value": str(value), "variant": variant}
        if args.below:
            doc["below"] = args.below
        text = str(value)
    elif cmd == "solve-equation":
        doc, text = _solve(args, g)
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown command {cmd}")
    _emit(_envelope(cmd, doc), text, args.output)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
