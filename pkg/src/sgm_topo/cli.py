"""Command-line front end.

Subcommands: homology, lens, bundle, classify, realize, lemma-check, snf,
catalog.  Tables go to stdout by default; --json switches to the documented
machine format.  Exit codes: 0 success, 2 invalid input, 1 internal
inconsistency (for example a non-exact sequence fed to lemma-check).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import serialization as ser
from .errors import BoundExceededError, InconsistencyError, NotExactError
from .exactseq import alternating_order_identity, central_square_order, splice_symmetric, verify_exactness
from .homology import homology, parse_coefficients
from .sgm import (
    BundleSpec,
    DimensionSetVerdict,
    LensSpec,
    bundle_dimension_set,
    bundle_homology,
    catalog_lookup,
    classify,
    lens_dimension_set,
    lens_homology,
)
from .steinles import realization_candidates, realization_instance, realization_parameters
from .zlinalg import smith_normal_form

EXIT_OK = 0
EXIT_INCONSISTENT = 1
EXIT_BAD_INPUT = 2


def _emit_json(obj, out) -> None:
    json.dump(obj, out, indent=2)
    out.write("\n")


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _print_graded(g, out) -> None:
    for d in range(g.top_degree + 1):
        out.write(f"H_{d} = {g.at(d)}\n")


def _print_verdict(v: DimensionSetVerdict, out) -> None:
    out.write(f"{'p':>3}  {'status':<10}  {'reason':<18}  note\n")
    for p in sorted(v.statuses):
        st = v.statuses[p]
        out.write(f"{p:>3}  {st.kind.value:<10}  {st.reason.value:<18}  {st.note}\n")
    if v.summary is None:
        out.write("S(M) undetermined (some targets Unknown)\n")
    else:
        inner = ", ".join(map(str, v.summary))
        out.write(f"S(M) = {{{inner}}}\n")


def _cmd_homology(args, out) -> int:
    data = _load_json(args.input)
    cx = ser.complex_from_json(data)
    coeff = parse_coefficients(args.coeff)
    result = homology(cx, coeff)
    if args.json:
        _emit_json({"coefficients": str(coeff), "homology": ser.graded_to_json(result)}, out)
    else:
        out.write(f"homology over {coeff}\n")
        _print_graded(result, out)
    return EXIT_OK


def _cmd_lens(args, out) -> int:
    spec = LensSpec(args.m, tuple(int(x) for x in args.l.split(",")))
    hom = lens_homology(spec)
    verdict = lens_dimension_set(spec) if args.classify else None
    if args.json:
        payload = {
            "spec": {"m": spec.m, "l": list(spec.l)},
            "dimension": spec.dimension,
            "homology": ser.graded_to_json(hom),
        }
        if verdict is not None:
            payload["verdict"] = ser.verdict_to_json(verdict)
        _emit_json(payload, out)
    else:
        out.write(f"{spec}: closed {spec.dimension}-manifold\n")
        _print_graded(hom, out)
        if verdict is not None:
            _print_verdict(verdict, out)
    return EXIT_OK


def _cmd_bundle(args, out) -> int:
    spec = BundleSpec(args.em, args.en)
    hom = bundle_homology(spec)
    verdict = bundle_dimension_set(spec) if args.classify else None
    if args.json:
        payload = {
            "spec": {"m": spec.m, "n": spec.n},
            "dimension": spec.dimension,
            "homology": ser.graded_to_json(hom),
        }
        if verdict is not None:
            payload["verdict"] = ser.verdict_to_json(verdict)
        _emit_json(payload, out)
    else:
        out.write(f"{spec}: linear S^3-bundle over S^4, total space dimension 7\n")
        _print_graded(hom, out)
        if verdict is not None:
            _print_verdict(verdict, out)
    return EXIT_OK


def _cmd_classify(args, out) -> int:
    verdict = classify(args.name)
    if args.json:
        _emit_json(ser.verdict_to_json(verdict), out)
    else:
        out.write(f"{args.name}: dimension {verdict.dimension}\n")
        _print_verdict(verdict, out)
    return EXIT_OK


def _cmd_catalog(args, out) -> int:
    entry = catalog_lookup(args.name)
    if args.json:
        _emit_json(
            {
                "name": entry.name,
                "dimension": entry.dimension,
                "orientable": entry.orientable,
                "homology": ser.graded_to_json(entry.homology),
                "facts": [
                    {"p_from": f.p_from, "p_to": f.p_to, "status": f.kind.value,
                     "note": f.note}
                    for f in entry.facts
                ],
            },
            out,
        )
    else:
        out.write(f"{entry.name}: dimension {entry.dimension}, "
                  f"orientable = {str(entry.orientable).lower()}\n")
        _print_graded(entry.homology, out)
        for f in entry.facts:
            out.write(f"known: p in {f.p_from}..{f.p_to} {f.kind.value} ({f.note})\n")
    return EXIT_OK


def _cmd_realize(args, out) -> int:
    plan = realization_parameters(args.m)
    candidates = realization_candidates(args.m)
    forced = args.m * args.m
    result = None
    if plan.n >= 5:
        from .steinles import forced_middle_order

        result = forced_middle_order(realization_instance(args.m))
        if result.root != args.m:
            raise InconsistencyError(
                f"skeleton root {result.root} disagrees with m = {args.m}"
            )
    if args.json:
        payload = {
            "m": args.m,
            "k": plan.k,
            "p": plan.p,
            "n": plan.n,
            "w_description": plan.w_description,
            "forced_middle_order": forced,
            "candidates": [ser.group_to_json(g) for g in candidates],
            "open_flag": plan.open_flag,
        }
        _emit_json(payload, out)
    else:
        out.write(f"m = {args.m}: k = {plan.k}, p = {plan.p}, n = {plan.n}\n")
        out.write(f"W: {plan.w_description}\n")
        out.write(f"forced |H_{plan.k}(M)| = {forced}\n")
        out.write("candidates: " + "; ".join(str(g) for g in candidates) + "\n")
        if plan.open_flag:
            out.write(f"open: {plan.open_flag}\n")
    return EXIT_OK


def _cmd_lemma_check(args, out) -> int:
    if args.input is None and args.random is None:
        raise ValueError("lemma-check needs --input FILE or --random SEED COUNT")
    if args.input is not None:
        seq = ser.sequence_from_json(_load_json(args.input))
        report = verify_exactness(seq)
        if not report.exact:
            for f in report.failures:
                out.write(f"{f}\n")
            return EXIT_INCONSISTENT
        odd, even = alternating_order_identity(seq)
        payload = {"exact": True, "odd_product": odd, "even_product": even}
        orders = seq.term_orders()
        symmetric = all(
            orders.get(i, 1) == orders.get(-i, 1) for i in map(abs, orders)
        )
        if symmetric:
            result = central_square_order(seq)
            payload.update(root=result.root,
                           center_order=result.root * result.root)
        if args.json:
            _emit_json(payload, out)
        else:
            out.write(f"exact; odd product = {odd}, even product = {even}\n")
            if symmetric:
                out.write(
                    f"symmetric; |A_0| = {payload['center_order']} = {payload['root']}^2\n"
                )
        return EXIT_OK
    seed, count = args.random
    checked = []
    for offset in range(count):
        seq = splice_symmetric(seed + offset, 2, 64)
        result = central_square_order(seq)
        odd, even = alternating_order_identity(seq)
        if odd != even or result.center_order != result.root**2:
            return EXIT_INCONSISTENT
        checked.append(result.root)
    if args.json:
        _emit_json({"seed": seed, "count": count, "roots": checked}, out)
    else:
        out.write(f"{count} symmetric sequences from seed {seed}: all exact, "
                  f"all central orders perfect squares\n")
    return EXIT_OK


def _cmd_snf(args, out) -> int:
    mat = ser.matrix_from_json(_load_json(args.input))
    result = smith_normal_form(mat)
    if args.json:
        _emit_json(ser.snf_to_json(result), out)
    else:
        out.write(f"diagonal: {list(result.diagonal)}\n")
        for row in result.S.entries:
            out.write(" ".join(map(str, row)) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sgm-topo",
        description="Exact homology computations and special-generic-map verdicts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="emit machine-readable JSON")

    p = sub.add_parser("homology", help="homology of a chain complex from JSON")
    p.add_argument("--input", required=True, help="chain complex JSON file")
    p.add_argument("--coeff", default="Z", help="Z, Q, or Fp:P")
    add_json(p)
    p.set_defaults(fn=_cmd_homology)

    p = sub.add_parser("lens", help="lens quotient homology and verdict")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--l", required=True, help="comma-separated rotation parameters")
    p.add_argument("--classify", action="store_true")
    add_json(p)
    p.set_defaults(fn=_cmd_lens)

    p = sub.add_parser("bundle", help="sphere-bundle total space homology and verdict")
    p.add_argument("--em", type=int, required=True, help="first classifying integer m")
    p.add_argument("--en", type=int, required=True, help="second classifying integer n")
    p.add_argument("--classify", action="store_true")
    add_json(p)
    p.set_defaults(fn=_cmd_bundle)

    p = sub.add_parser("classify", help="dimension-set verdict for a catalog name")
    p.add_argument("name")
    add_json(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("catalog", help="catalog entry: homology and known facts")
    p.add_argument("name")
    add_json(p)
    p.set_defaults(fn=_cmd_catalog)

    p = sub.add_parser("realize", help="dimensions and middle homology candidates "
                                       "realizing a square torsion order")
    p.add_argument("--m", type=int, required=True)
    add_json(p)
    p.set_defaults(fn=_cmd_realize)

    p = sub.add_parser("lemma-check", help="verify exactness and the square-order "
                                           "identity of a sequence")
    p.add_argument("--input", help="exact sequence JSON file")
    p.add_argument("--random", nargs=2, type=int, metavar=("SEED", "COUNT"),
                   help="check COUNT generated symmetric sequences")
    add_json(p)
    p.set_defaults(fn=_cmd_lemma_check)

    p = sub.add_parser("snf", help="Smith normal form of a matrix from JSON")
    p.add_argument("--input", required=True, help="matrix JSON file")
    add_json(p)
    p.set_defaults(fn=_cmd_snf)

    return parser


def run(argv: list[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args, out)
    except NotExactError as exc:
        err.write(f"inconsistent input: {exc}\n")
        return EXIT_INCONSISTENT
    except InconsistencyError as exc:
        err.write(f"inconsistent input: {exc}\n")
        return EXIT_INCONSISTENT
    except (BoundExceededError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        err.write(f"invalid input: {exc}\n")
        return EXIT_BAD_INPUT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
