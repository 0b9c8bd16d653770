"""Command line entry point.

Exit codes: 0 all checks pass, 1 some check failed (the witness is printed),
2 only inconclusive or skipped results, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from ..constellation import (Constellation, ConstellationError, DivisorE,
                             DivisorStar, PointBasis, adjoint_basis,
                             canonical_divisor, from_star, is_full,
                             proximity_matrix, to_star)
from ..monomial import (NotFinitelySupported, PrincipalizationTree,
                        adjoint_howald, parse_ideal, principalize)
from ..toric import adjoint_via_sections, cech_dims, divisor_rays
from . import suites
from .report import (FAIL, INCONCLUSIVE, PASS, SKIPPED, exit_code, merge,
                     summary, to_csv)

USAGE_ERROR = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        print(text)


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _constellation(args):
    if not args.constellation:
        return None
    try:
        return Constellation.from_json(_read_json(args.constellation))
    except (ConstellationError, KeyError) as exc:
        raise UsageError(f"bad constellation: {exc}") from exc


def _ideal(text, name="--ideal"):
    if text is None:
        raise UsageError(f"{name} is required")
    if os.path.isfile(text):
        with open(text) as fh:
            text = fh.read()
    try:
        return parse_ideal(text)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"cannot parse {name}: {exc}") from exc


def _int_list(text):
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"expected a list of integers, got {text!r}") from exc


def _same_constellation(args, tree):
    C = _constellation(args)
    if C is not None and C != tree.constellation:
        raise UsageError("the --constellation file does not match the computed tree")


# -- subcommands -------------------------------------------------------------

def cmd_basis(args):
    if args.ideal:
        tree = principalize([_ideal(args.ideal)])
        _same_constellation(args, tree)
        C, B = tree.constellation, tree.basis
    else:
        C = _constellation(args)
        if C is None or args.basis is None:
            raise UsageError("give --ideal, or --constellation together with --basis")
        B = PointBasis(C, _int_list(args.basis))
    D = B.divisor()
    payload = {"constellation": C.to_json(), "basis": list(B.basis), "divisor": list(D.coeffs),
               "full": is_full(D), "adjoint_basis": list(adjoint_basis(B).basis),
               "canonical": list(canonical_divisor(C).coeffs)}
    _emit(args, payload, "\n".join(f"{k}: {v}" for k, v in payload.items() if k != "constellation"))
    return 0


def cmd_adjoint(args):
    if args.ideal:
        I = _ideal(args.ideal)
        payload = {"ideal": str(I), "newton": str(adjoint_howald(I))}
        try:
            tree = principalize([I])
            _same_constellation(args, tree)
            payload["sections"] = str(adjoint_via_sections(tree))
            payload["basis"] = list(tree.basis.basis)
            payload["adjoint_basis"] = list(adjoint_basis(tree.basis).basis)
        except NotFinitelySupported as exc:
            payload["sections"] = None
            payload["not_finitely_supported"] = exc.to_json()
        _emit(args, payload, "\n".join(f"{k}: {v}" for k, v in payload.items()))
        return 0
    C = _constellation(args)
    if C is None or args.basis is None:
        raise UsageError("give --ideal, or --constellation together with --basis")
    B = PointBasis(C, _int_list(args.basis))
    A = adjoint_basis(B)
    payload = {"basis": list(B.basis), "adjoint_basis": list(A.basis)}
    _emit(args, payload, f"adjoint basis: {list(A.basis)}")
    return 0


def cmd_prox_matrix(args):
    C = _constellation(args)
    if C is None:
        if not args.ideal:
            raise UsageError("give --constellation or --ideal")
        C = principalize([_ideal(args.ideal)]).constellation
    p, inv = proximity_matrix(C)
    payload = {"constellation": C.to_json(), "p": p, "p_inv": inv}
    text = "p:\n" + "\n".join(" ".join(f"{x:3d}" for x in row) for row in p)
    text += "\np^-1:\n" + "\n".join(" ".join(f"{x:3d}" for x in row) for row in inv)
    _emit(args, payload, text)
    return 0


def cmd_principalize(args):
    I = _ideal(args.ideal)
    ideals = [I] + ([_ideal(args.ideal2, "--ideal2")] if args.ideal2 else [])
    try:
        tree = principalize(ideals)
    except NotFinitelySupported as exc:
        _emit(args, exc.to_json(), f"NotFinitelySupported: {exc}")
        return 0
    _same_constellation(args, tree)
    payload = tree.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
    lines = [f"points: {tree.constellation.r}",
             f"bases: {[list(b.basis) for b in tree.bases]}",
             f"valuations: {[list(tree.valuations(k)) for k in range(len(ideals))]}",
             "rays: " + ", ".join(f"{lab[0]}{lab[1] + 1}={tuple(ray)}"
                                  for ray, lab in zip(tree.fan.rays, tree.fan.labels))]
    _emit(args, payload, "\n".join(lines))
    return 0


def _divisor_coeffs(spec, C):
    """Divisor file or inline list: E-coefficients, or ``{"star": [...]}`` / ``{"coeffs": [...]}``."""
    if os.path.isfile(spec):
        data = _read_json(spec)
    else:
        try:
            data = json.loads(spec)
        except json.JSONDecodeError:
            data = _int_list(spec)
    if isinstance(data, dict):
        if "star" in data:
            return list(from_star(DivisorStar(C, data["star"])).coeffs)
        data = data.get("coeffs", data.get("divisor"))
    if not isinstance(data, list) or len(data) != C.r:
        raise UsageError(f"divisor must list {C.r} integer coefficients")
    return [int(x) for x in data]


def cmd_cohom(args):
    if args.tree:
        try:
            tree = PrincipalizationTree.from_json(_read_json(args.tree))
        except (KeyError, ValueError) as exc:
            raise UsageError(f"bad tree file: {exc}") from exc
    elif args.ideal:
        tree = principalize([_ideal(args.ideal)])
    else:
        raise UsageError("give --tree or --ideal")
    _same_constellation(args, tree)
    C = tree.constellation
    coeffs = list(tree.valuations()) if args.divisor is None else _divisor_coeffs(args.divisor, C)
    D = DivisorE(C, coeffs)
    rep = cech_dims(tree.fan, divisor_rays(tree, coeffs), max_i=args.max_i, window=args.window)
    payload = rep.to_json()
    payload["divisor"] = coeffs
    payload["full"] = is_full(D)
    payload["star"] = list(to_star(D).coords)
    text = (f"divisor {coeffs} (star {payload['star']}, full={payload['full']})\n"
            + "\n".join(f"h^{i} = {v}" for i, v in rep.dims.items())
            + f"\nwindow [-{rep.window}, {rep.window}]^{C.d}: {rep.status} (windowed verification over Q)")
    _emit(args, payload, text)
    return 0 if rep.certified else 2


def _print_reports(args, reports):
    reports = merge(reports)
    counts = summary(reports)
    if args.json:
        print(json.dumps({"reports": [r.to_json() for r in reports], "summary": counts},
                         indent=2, default=str))
    else:
        for r in reports:
            print(r.line())
        print(f"{counts[PASS]} passed, {counts[FAIL]} failed, {counts[SKIPPED]} skipped, "
              f"{counts[INCONCLUSIVE]} inconclusive")
    return exit_code(reports)


def cmd_check(args):
    if args.name == "all":
        if not args.suite:
            raise UsageError("check all needs --suite <file|default>")
        if args.suite == "default" and not os.path.exists(args.suite):
            entries = suites.default_suite(seed=args.seed)
        else:
            try:
                entries = suites.load_suite(args.suite)
            except (OSError, ValueError) as exc:
                raise UsageError(str(exc)) from exc
        try:
            reports = suites.run_suite(entries)
        except (KeyError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
        return _print_reports(args, reports)
    params = {}
    if args.ideal:
        params["ideal"] = str(_ideal(args.ideal))
    if args.ideal2:
        params["ideal2"] = str(_ideal(args.ideal2, "--ideal2"))
    if args.J:
        params["J"] = args.J
    if args.name == "pure-powers" and "J" not in params and "ideal" in params:
        params["J"] = params.pop("ideal")
    try:
        rep = suites.run_check(args.name, params)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    return _print_reports(args, [rep])


FAMILIES = ("d2", "d3", "pure-powers")


def cmd_sweep(args):
    rng = random.Random(args.seed)
    rows, reports = [], []
    for k in range(args.count):
        if args.family == "d2":
            I = suites.random_m_primary(rng, 2, max_exp=args.max_exp)
        elif args.family == "d3":
            I = suites.d3_ideal(rng)
        else:
            d = 2 + k % 2
            exps = [rng.randint(1, args.max_exp) for _ in range(d)]
            rep = suites.run_check("pure-powers", {"J": exps}, seed=args.seed)
            reports.append(rep)
            rows.append({"case": k, "seed": args.seed, "check": "pure-powers", "input": exps,
                         "verdict": rep.verdict, "seconds": round(rep.seconds, 4)})
            continue
        I2 = suites.random_m_primary(rng, I.d, max_exp=args.max_exp) if args.family == "d2" else suites.d3_ideal(rng)
        row = {"case": k, "seed": args.seed, "input": str(I)}
        for name in args.checks.split(","):
            if name not in suites.CHECKS:
                raise UsageError(f"unknown check {name!r}")
            params = {"ideal": str(I)}
            if "ideal2" in suites.CHECKS[name][1]:
                params["ideal2"] = str(I2)
                row = {**row, "input": f"{I} | {I2}"}
            rep = suites.run_check(name, params, seed=args.seed)
            reports.append(rep)
            rows.append({**row, "check": name, "verdict": rep.verdict, "seconds": round(rep.seconds, 4)})
    text = to_csv(rows, ["case", "seed", "check", "input", "verdict", "seconds"])
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return exit_code(reports)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--constellation", metavar="FILE",
                        help="constellation JSON; input for basis/adjoint/prox-matrix, cross-checked elsewhere")

    p = _Parser(prog="infnear", description="Adjoints, point bases and toric cohomology of monomial ideals.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("basis", parents=[common], help="point basis, divisor and adjoint basis")
    s.add_argument("--ideal")
    s.add_argument("--basis", help="point basis on --constellation, e.g. 2,1,1")
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("adjoint", parents=[common], help="adjoint ideal (Newton polyhedron and sections)")
    s.add_argument("--ideal")
    s.add_argument("--basis")
    s.set_defaults(func=cmd_adjoint)

    s = sub.add_parser("prox-matrix", parents=[common], help="proximity matrix and its inverse")
    s.add_argument("--ideal")
    s.set_defaults(func=cmd_prox_matrix)

    s = sub.add_parser("principalize", parents=[common], help="principalize by point blowups")
    s.add_argument("--ideal", required=True)
    s.add_argument("--ideal2")
    s.add_argument("--out", help="write the tree JSON here")
    s.set_defaults(func=cmd_principalize)

    s = sub.add_parser("cohom", parents=[common], help="windowed Čech cohomology of O(D)")
    s.add_argument("--tree", help="tree JSON written by principalize --out")
    s.add_argument("--ideal", help="principalize this ideal instead of reading --tree")
    s.add_argument("--divisor", help="E-coefficients (file, JSON list or {\"star\": [...]}); default D_I")
    s.add_argument("--max-i", type=int, default=None)
    s.add_argument("--window", type=int, default=8)
    s.set_defaults(func=cmd_cohom)

    s = sub.add_parser("check", parents=[common], help="run one check, or all checks of a suite")
    s.add_argument("name", choices=sorted(suites.CHECKS) + ["all"])
    s.add_argument("--ideal")
    s.add_argument("--ideal2")
    s.add_argument("--J", help="pure-power ideal for the pure-powers check, e.g. 'x^2,y^2,z^2'")
    s.add_argument("--suite", help="suite JSON file, or 'default'")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("sweep", parents=[common], help="run checks over a random family, CSV output")
    s.add_argument("--family", choices=FAMILIES, default="d2")
    s.add_argument("--checks", default="adjoint", help="comma-separated check names")
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-exp", type=int, default=8)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"infnear: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except NotFinitelySupported as exc:
        # no tree to work on: report the witness, nothing passed
        _emit(args, exc.to_json(), f"NotFinitelySupported: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
