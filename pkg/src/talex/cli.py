"""Command line interface.

Commands: alexander, compute, verify, surjections, groups list.
Exit codes are a stable contract for CI use:

    0  success / everything verified (or vacuously true)
    1  congruence mismatch
    2  no surjection exists
    3  bad input (unknown knot, malformed group spec, invalid parameters)
    4  search budget exceeded

The knot table defaults to the bundled one; override with --table or the
TALEX_TABLE environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time

from . import __version__
from .algebra import INTEGERS, equal_up_to_unit, prime_field, to_text
from .groups import (
    FiniteGroup,
    GroupValidationError,
    alternating4,
    cyclic,
    d3_semidirect_c3,
    dicyclic,
    dihedral,
    direct_product,
    dp_semidirect_cp,
    group_from_cayley_json,
    metacyclic,
)
from .homsearch import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    find_meridional_surjections,
)
from .knots import KnotTableError, bundled_table_path, load_knot_table
from .theorems import (
    CASE_NAMES,
    catalog_under_24,
    make_case,
    rhs,
    verify_congruence,
)
from .twisted import alexander_polynomial, twisted_alexander_mod, wada_invariant
from .groups import regular_representation

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_NO_SURJECTION = 2
EXIT_BAD_INPUT = 3
EXIT_BUDGET = 4

_EVEN_DEGREE_HINT = (
    "even-degree dihedral/dicyclic groups are not normally generated by one "
    "element, so no knot group surjects onto them")


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_BAD_INPUT):
        super().__init__(message)
        self.code = code


def parse_group_spec(spec: str) -> FiniteGroup:
    """Compact group specifiers: C5, D9, Dic3, G(3,7|2), A4, D3xC3 (direct
    product), D3sC3 (semidirect), cayley:<path>."""
    if spec.startswith("cayley:"):
        path = spec[len("cayley:"):]
        try:
            with open(path, "r", encoding="utf-8") as fh:
                return group_from_cayley_json(json.load(fh))
        except (OSError, json.JSONDecodeError, GroupValidationError,
                KeyError) as exc:
            raise CliError(f"cannot load Cayley table {path!r}: {exc}")
    if spec == "A4":
        return alternating4()
    m = re.fullmatch(r"C(\d+)", spec)
    if m:
        return cyclic(int(m.group(1)))
    m = re.fullmatch(r"D(\d+)sC(\d+)", spec)
    if m:
        p, c = int(m.group(1)), int(m.group(2))
        if p != c:
            raise CliError(f"semidirect spec must be DpsCp, got {spec!r}")
        if p == 3:
            return d3_semidirect_c3()
        try:
            return dp_semidirect_cp(p)
        except ValueError as exc:
            raise CliError(str(exc))
    m = re.fullmatch(r"D(\d+)", spec)
    if m:
        q = int(m.group(1))
        if q % 2 == 0:
            raise CliError(f"D{q}: {_EVEN_DEGREE_HINT}")
        try:
            return dihedral(q)
        except ValueError as exc:
            raise CliError(str(exc))
    m = re.fullmatch(r"Dic(\d+)", spec)
    if m:
        q = int(m.group(1))
        if q % 2 == 0:
            raise CliError(f"Dic{q}: {_EVEN_DEGREE_HINT}")
        try:
            return dicyclic(q)
        except ValueError as exc:
            raise CliError(str(exc))
    m = re.fullmatch(r"G\((\d+),(\d+)\|(\d+)\)", spec)
    if m:
        try:
            return metacyclic(int(m.group(1)), int(m.group(2)),
                              int(m.group(3)))
        except ValueError as exc:
            raise CliError(str(exc))
    if "x" in spec:  # direct products, e.g. D3xC3 or C2xC2
        left, right = spec.split("x", 1)
        return direct_product(parse_group_spec(left),
                              parse_group_spec(right))
    raise CliError(
        f"unrecognized group spec {spec!r} (expected C5, D9, Dic3, "
        "G(3,7|2), A4, D3xC3, D3sC3 or cayley:<path>)")


def _load_table(args) -> dict:
    path = args.table or os.environ.get("TALEX_TABLE") or bundled_table_path()
    try:
        return load_knot_table(path)
    except (OSError, KnotTableError) as exc:
        raise CliError(f"cannot load knot table: {exc}")


def _select_knots(args, table) -> list[str]:
    if args.all_knots:
        return sorted(table)
    names = args.knot or []
    for name in names:
        if name not in table:
            raise CliError(f"unknown knot {name!r} (table has: "
                           f"{', '.join(sorted(table))})")
    return names


def _emit(args, command, config, results, text_lines) -> None:
    if args.format == "json":
        envelope = {"version": __version__, "command": command,
                    "config": config, "results": results}
        print(json.dumps(envelope, indent=2))
    else:
        for line in text_lines:
            print(line)


def cmd_alexander(args) -> int:
    table = _load_table(args)
    names = _select_knots(args, table)
    results, lines = [], []
    for name in names:
        poly = alexander_polynomial(table[name])
        results.append({"knot": name, "polynomial": poly.to_json()})
        lines.append(f"{name}: {to_text(poly)}")
    _emit(args, "alexander", {"knots": names}, results, lines)
    return EXIT_OK


def _check_modulus(mod):
    if mod is not None:
        try:
            prime_field(mod)
        except ValueError as exc:
            raise CliError(str(exc))
    return mod


def cmd_compute(args) -> int:
    table = _load_table(args)
    names = _select_knots(args, table)
    group = parse_group_spec(args.group)
    mod = _check_modulus(args.mod)
    rep = regular_representation(group)
    results, lines = [], []
    worst = EXIT_OK
    for name in names:
        pres = table[name]
        try:
            surjections = find_meridional_surjections(
                pres, group, up_to_conjugacy=args.up_to_conjugacy,
                budget=args.budget)
        except BudgetExceededError as exc:
            worst = max(worst, EXIT_BUDGET)
            results.append({"knot": name, "group": group.name,
                            "error": str(exc)})
            lines.append(f"{name} -> {group.name}: {exc}")
            continue
        if not surjections:
            worst = max(worst, EXIT_NO_SURJECTION)
            results.append({"knot": name, "group": group.name,
                            "surjections_found": 0, "invariants": []})
            lines.append(f"{name} -> {group.name}: no surjection")
            continue
        invariants = []
        for f in surjections:
            if mod is None:
                res = wada_invariant(pres, f, rep, INTEGERS)
            else:
                res = twisted_alexander_mod(pres, f, rep, mod)
            invariants.append({"images": list(f.images), **res.to_json()})
            lines.append(f"{name} -> {group.name}"
                         + (f" mod {mod}" if mod else "")
                         + f" via {list(f.images)}: {res.normalized}")
        results.append({"knot": name, "group": group.name, "modulus": mod,
                        "surjections_found": len(surjections),
                        "invariants": invariants})
    _emit(args, "compute",
          {"knots": names, "group": args.group, "modulus": mod,
           "upToConjugacy": args.up_to_conjugacy, "budget": args.budget},
          results, lines)
    return worst


def _case_from_args(args):
    if args.case is None:
        raise CliError("verify needs --case")
    if args.case == "conjecture" and not args.experimental:
        raise CliError(
            "the conjecture case is experimental; pass --experimental")
    try:
        case = make_case(args.case, n=args.n, p=args.p, m=args.m, k=args.k)
    except ValueError as exc:
        raise CliError(str(exc))
    if args.mod is not None:
        _check_modulus(args.mod)
        if case.name == "cyclic":
            case = make_case("cyclic", n=args.n, modulus=args.mod)
        elif args.mod != case.modulus:
            raise CliError(
                f"--mod {args.mod} conflicts with the {case.name} case, "
                f"whose congruence lives mod {case.modulus}")
    return case


def cmd_verify(args) -> int:
    table = _load_table(args)
    names = _select_knots(args, table)
    case = _case_from_args(args)
    results, lines = [], []
    worst = EXIT_OK
    for name in names:
        try:
            rec = verify_congruence(table[name], name, case,
                                    budget=args.budget)
        except BudgetExceededError as exc:
            worst = max(worst, EXIT_BUDGET)
            results.append({"knot": name, "error": str(exc)})
            lines.append(f"{name} {case}: {exc}")
            continue
        results.append(rec.to_json())
        if rec.vacuous:
            lines.append(f"{name} {case}: no surjection (vacuous)")
        else:
            status = "all verified" if rec.all_verified else "MISMATCH"
            lines.append(
                f"{name} {case}: {rec.surjections_found} surjection(s), "
                f"{status} ({rec.elapsed_ms:.0f} ms)")
        if not rec.all_verified and case.name != "conjecture":
            worst = max(worst, EXIT_MISMATCH)
        elif not rec.all_verified:
            lines.append(f"{name} {case}: conjecture finding - counterexample"
                         " candidate recorded, not an error")
    _emit(args, "verify",
          {"knots": names, "case": case.name,
           "parameters": list(case.parameters), "modulus": case.modulus,
           "budget": args.budget},
          results, lines)
    return worst


def cmd_surjections(args) -> int:
    table = _load_table(args)
    names = _select_knots(args, table)
    group = parse_group_spec(args.group)
    results, lines = [], []
    worst = EXIT_OK
    if group.is_normally_generated_by_one() is None:
        raise CliError(f"{group.name} is not normally generated by one "
                       "element; no knot group surjects onto it",
                       EXIT_NO_SURJECTION)
    for name in names:
        pres = table[name]
        try:
            all_surj = find_meridional_surjections(
                pres, group, up_to_conjugacy=False, budget=args.budget)
            reps = find_meridional_surjections(
                pres, group, up_to_conjugacy=True, budget=args.budget)
        except BudgetExceededError as exc:
            worst = max(worst, EXIT_BUDGET)
            results.append({"knot": name, "group": group.name,
                            "error": str(exc)})
            lines.append(f"{name} -> {group.name}: {exc}")
            continue
        if not all_surj:
            worst = max(worst, EXIT_NO_SURJECTION)
        results.append({
            "knot": name, "group": group.name, "count": len(all_surj),
            "count_up_to_conjugacy": len(reps),
            "surjections": [list(h.images) for h in
                            (reps if args.up_to_conjugacy else all_surj)]})
        lines.append(f"{name} -> {group.name}: {len(all_surj)} surjections "
                     f"({len(reps)} up to conjugacy)")
    _emit(args, "surjections",
          {"knots": names, "group": args.group,
           "upToConjugacy": args.up_to_conjugacy, "budget": args.budget},
          results, lines)
    return worst


def cmd_groups_list(args) -> int:
    results, lines = [], []
    for name, group, modulus in catalog_under_24():
        results.append({"spec": name, "order": group.order,
                        "modulus": modulus})
        mod = f"mod {modulus}" if modulus else "exact"
        lines.append(f"{name:10s} order {group.order:3d}  congruence {mod}")
    _emit(args, "groups list", {}, results, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="talex",
        description="Twisted Alexander polynomials for regular "
                    "representations of finite groups")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, group=False, case=False):
        p.add_argument("--knot", action="append",
                       help="knot name from the table (repeatable)")
        p.add_argument("--all-knots", action="store_true",
                       help="run over every knot in the table")
        p.add_argument("--table", help="knot table path (default: bundled; "
                                       "TALEX_TABLE overrides)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="search node budget")
        p.add_argument("--up-to-conjugacy", action="store_true",
                       help="one representative per conjugation orbit")
        p.add_argument("--mod", type=int, default=None,
                       help="prime modulus for the computation")
        if group:
            p.add_argument("--group", required=True,
                           help="group spec, e.g. C5, D9, Dic3, G(3,7|2), "
                                "A4, D3xC3, D3sC3, cayley:<path>")
        if case:
            p.add_argument("--case", choices=CASE_NAMES)
            p.add_argument("--p", type=int, dest="p")
            p.add_argument("--n", type=int, dest="n")
            p.add_argument("--m", type=int, dest="m")
            p.add_argument("--k", type=int, dest="k")
            p.add_argument("--experimental", action="store_true",
                           help="enable the experimental conjecture case")

    p_alex = sub.add_parser("alexander",
                            help="classical Alexander polynomials")
    common(p_alex)
    p_alex.set_defaults(func=cmd_alexander)

    p_compute = sub.add_parser("compute",
                               help="twisted invariants for each surjection")
    common(p_compute, group=True)
    p_compute.set_defaults(func=cmd_compute)

    p_verify = sub.add_parser("verify", help="check a congruence formula")
    common(p_verify, case=True)
    p_verify.set_defaults(func=cmd_verify)

    p_surj = sub.add_parser("surjections",
                            help="list surjections onto a finite group")
    common(p_surj, group=True)
    p_surj.set_defaults(func=cmd_surjections)

    p_groups = sub.add_parser("groups", help="group catalog utilities")
    gsub = p_groups.add_subparsers(dest="groups_command", required=True)
    p_list = gsub.add_parser("list", help="list the order-<24 catalog")
    p_list.add_argument("--format", choices=("text", "json"), default="text")
    p_list.set_defaults(func=cmd_groups_list)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
