"""Command-line front end.

Every command reads JSON documents, prints one JSON object on stdout (keys
sorted, rationals as ``"p"`` or ``"p/q"`` strings) and logs to stderr.

Document arguments are file paths, inline JSON, or ``gallery:NAME`` for a
bundled example.

Exit codes: 0 success, 2 input error, 3 resource cap, 4 audit failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from importlib import resources

from . import cones, exact, lattice, oracle, space
from .errors import CapExceeded, ConsistencyError, InputError, PreRieszError
from .operators import (build_ctx, interior_from_cones, operator_from_doc, operator_to_doc,
                        phi, sprime_to_doc)
from .splits import DEFAULT_MAX_SUBSETS

log = logging.getLogger("preriesz")

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_AUDIT = 0, 2, 3, 4

# One line per output kind, stating the fact the output instantiates.
STATEMENTS = {
    "cone": "A polyhedral cone is both the conic hull of its extremal rays and the "
            "intersection of its facet half-spaces; its dual swaps the two lists.",
    "space-check": "A closed pointed generating cone makes the space an Archimedean "
                   "ordered space, hence pre-Riesz; every interior point is an order unit.",
    "anti-lattice": "Two nonzero positive elements are disjoint iff their supports on the "
                    "extremal dual rays are disjoint; none such means an anti-lattice.",
    "no-disjoint": "Two elements are disjoint iff their supports on the extremal dual rays "
                   "are disjoint; a split of those rays into two rank-deficient halves "
                   "yields a disjoint pair.",
    "norm": "The order unit norm is the largest ratio |f(x)| / f(v) over extremal dual rays f.",
    "interior": "The positive operators have interior points iff the codomain cone is "
                "generating and the domain cone admits an equivalent norm additive on it; "
                "then y0 x0' is interior for interior y0 and x0'.",
    "sprime": "The extremal positive functionals on operators are exactly x -> <y', T x> for "
              "extremal x in the domain cone and extremal y' in the dual codomain cone.",
    "phi": "Evaluation against those functionals is a bipositive embedding into a space of "
           "functions with the pointwise order, and a vector lattice cover.",
    "disjoint": "Operators are disjoint iff their images under that embedding have disjoint "
                "supports.",
    "modulus": "An operator has a modulus iff the pointwise absolute value of its image lies "
               "in the range, iff it splits as a difference of disjoint positive operators.",
    "bands": "Bands are the fixed points of the double disjoint complement; they are the "
             "subspaces vanishing on a closed set of atoms.",
    "audit": "Definition-level checks: extremal functionals by double description, "
             "disjointness by equality of upper-bound sets, density by vertex enumeration.",
}


# -- document loading -----------------------------------------------------------

def gallery_names() -> list:
    root = resources.files("preriesz") / "gallery"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_doc(arg):
    """Parse a path, inline JSON or ``gallery:NAME`` into a JSON value."""
    if not isinstance(arg, str):
        return arg
    try:
        if arg.startswith("gallery:"):
            res = resources.files("preriesz") / "gallery" / (arg[len("gallery:"):] + ".json")
            if not res.is_file():
                raise InputError(f"no gallery entry {arg!r}; have {gallery_names()}")
            return json.loads(res.read_text())
        if arg.lstrip().startswith(("{", "[")):
            return json.loads(arg)
        with open(arg) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON in {arg!r}: {e}") from None
    except OSError as e:
        raise InputError(f"cannot read {arg!r}: {e.strerror}") from None


def _resolve(doc):
    """Follow ``gallery:`` references nested inside a document."""
    return load_doc(doc) if isinstance(doc, str) else doc


def load_space(arg, max_rows):
    return space.space_from_doc(_resolve(load_doc(arg)), max_rows)


def load_context(arg, max_rows):
    doc = load_doc(arg)
    if not isinstance(doc, dict) or "X" not in doc or "Y" not in doc:
        raise InputError("operator context document needs 'X' and 'Y' space documents")
    X = space.space_from_doc(_resolve(doc["X"]), max_rows)
    Y = space.space_from_doc(_resolve(doc["Y"]), max_rows)
    return doc.get("name", ""), X, Y


def load_operator(arg, ctx):
    doc = load_doc(arg)
    if isinstance(doc, list):
        doc = {"entries": doc}
    return operator_from_doc(doc, ctx)


def load_vector(arg):
    doc = load_doc(arg)
    if not isinstance(doc, list):
        raise InputError("expected a JSON list of rationals")
    return exact.vec(doc)


# -- commands -------------------------------------------------------------------

def _cone_doc(doc):
    """Accept a bare cone document or a space document wrapping one."""
    doc = _resolve(doc)
    if isinstance(doc, dict) and "cone" in doc:
        return _resolve(doc["cone"])
    return doc


def cmd_cone(args) -> tuple:
    c = cones.cone_from_doc(_cone_doc(load_doc(args.cone)), args.max_dd_rows)
    if args.sub == "convert":
        return cones.cone_to_doc(c), "cone", EXIT_OK
    if args.sub == "dual":
        return cones.cone_to_doc(cones.dual_cone(c)), "cone", EXIT_OK
    return cones.check_report(c), "cone", EXIT_OK


def cmd_space(args) -> tuple:
    doc = load_doc(args.space)
    if args.sub == "check":
        c = cones.cone_from_doc(_cone_doc(doc), args.max_dd_rows)
        out = cones.check_report(c)
        out["ordered_space"] = c.is_pointed
        if c.is_pointed and c.is_full_dimensional:
            S = space.OrderedSpace(c)
            unit = exact.vec(sum(col) for col in zip(*S.ext_primal))
            out["order_unit"] = exact.fmt_vec(unit)
        return out, "space-check", EXIT_OK
    S = space.space_from_doc(doc, args.max_dd_rows)
    if args.sub == "anti-lattice":
        return space.anti_lattice_verdict(S).to_doc(), "anti-lattice", EXIT_OK
    if args.sub == "no-disjoint":
        return space.no_disjoint_pair_verdict(S, args.max_subsets).to_doc(), "no-disjoint", EXIT_OK
    if args.unit is None or args.x is None:
        raise InputError("norm needs --unit and --x")
    v, x = load_vector(args.unit), load_vector(args.x)
    return {"norm": exact.fmt(space.order_unit_norm(S, v, x)),
            "unit": exact.fmt_vec(v), "x": exact.fmt_vec(x)}, "norm", EXIT_OK


def _modes(mode: str) -> list:
    return ["compositional", "direct"] if mode == "both" else [mode]


def cmd_opspace(args) -> tuple:
    name, X, Y = load_context(args.context, args.max_dd_rows)
    sub = args.sub
    if sub == "interior":
        return interior_from_cones(X.cone, Y.cone).to_doc(), "interior", EXIT_OK
    ctx = build_ctx(X, Y, args.max_dd_rows)
    if sub == "sprime":
        return {"size": len(ctx.sprime), "atoms": sprime_to_doc(ctx),
                "phi_matrix": exact.fmt_mat(ctx.phi_matrix),
                "z0": operator_to_doc(ctx.z0)}, "sprime", EXIT_OK
    if sub == "phi":
        T = _need_op(args.op, ctx, "--op")
        return {"phi": exact.fmt_vec(phi(ctx, T)),
                "support": sorted(lattice.support(ctx, T))}, "phi", EXIT_OK
    if sub == "disjoint":
        T1 = _need_op(args.op, ctx, "--op")
        T2 = _need_op(args.op2, ctx, "--op2")
        out = {"disjoint": lattice.disjoint_ops(ctx, T1, T2),
               "support_1": sorted(lattice.support(ctx, T1)),
               "support_2": sorted(lattice.support(ctx, T2))}
        if args.definition:
            out["by_definition"] = oracle.disjoint_by_definition_ops(ctx, T1, T2, args.max_dd_rows)
        return out, "disjoint", EXIT_OK
    if sub == "modulus":
        T = _need_op(args.op, ctx, "--op")
        m = lattice.modulus(ctx, T)
        out = {"exists": m is not None}
        if m is not None:
            out.update(m.to_doc())
        if args.via_bands:
            en = lattice.enumerate_bands(ctx, args.max_subsets)
            dec = lattice.modulus_via_bands(ctx, T, en.bands)
            out["via_bands"] = None if dec is None else dec.to_doc(ctx)
            out["bands_truncated"] = en.truncated
        return out, "modulus", EXIT_OK
    if sub == "bands":
        return lattice.enumerate_bands(ctx, args.max_subsets).to_doc(ctx), "bands", EXIT_OK
    if sub in ("anti-lattice", "no-disjoint"):
        key = "is_anti_lattice" if sub == "anti-lattice" else "holds"
        verdicts = {}
        for mode in _modes(args.mode):
            if sub == "anti-lattice":
                v = lattice.op_anti_lattice_verdict(ctx, mode)
            else:
                v = lattice.op_no_disjoint_verdict(ctx, mode, args.max_subsets)
            verdicts[mode] = v.to_doc(key)
        out = {"verdicts": verdicts}
        values = {d[key] for d in verdicts.values()}
        out[key] = values.pop() if len(values) == 1 else None
        if len(verdicts) > 1:
            out["modes_agree"] = out[key] is not None
        code = EXIT_OK if out[key] is not None else EXIT_AUDIT
        return out, sub, code
    return _audit(args, name, ctx)


def _audit(args, name, ctx) -> tuple:
    reports = []
    t = time.perf_counter()
    reports.append(oracle.extremality_audit(ctx, name, args.max_dd_rows))
    log.info("extremality audit: %.2fs", time.perf_counter() - t)
    t = time.perf_counter()
    reports.append(oracle.order_density_spot_check(ctx, args.samples, args.seed, name,
                                                   args.max_dd_rows))
    log.info("order density: %.2fs", time.perf_counter() - t)
    t = time.perf_counter()
    reports.append(oracle.disjointness_comparison(ctx, args.pairs, args.seed, name,
                                                  args.max_dd_rows))
    log.info("disjointness comparison: %.2fs", time.perf_counter() - t)
    passed = all(r.passed for r in reports)
    return ({"passed": passed, "reports": [r.to_doc() for r in reports]}, "audit",
            EXIT_OK if passed else EXIT_AUDIT)


def _need_op(arg, ctx, flag):
    if arg is None:
        raise InputError(f"this command needs {flag}")
    return load_operator(arg, ctx)


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for sampled audits")
    common.add_argument("--max-subsets", type=int, default=DEFAULT_MAX_SUBSETS,
                        help="node cap for band and disjoint-pair searches")
    common.add_argument("--max-dd-rows", type=int, default=cones.DEFAULT_MAX_DD_ROWS,
                        help="cap on intermediate rays in double description")
    common.add_argument("--report", action="store_true",
                        help="add a prose statement of what the output instantiates")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="preriesz", description=__doc__.splitlines()[0])
    groups = p.add_subparsers(dest="group", required=True)

    g = groups.add_parser("cone", help="polyhedral cone conversions")
    s = g.add_subparsers(dest="sub", required=True)
    for name in ("convert", "dual", "check"):
        s.add_parser(name, parents=[common]).add_argument("cone")

    g = groups.add_parser("space", help="ordered space analyses")
    s = g.add_subparsers(dest="sub", required=True)
    for name in ("check", "anti-lattice", "no-disjoint", "norm"):
        sp = s.add_parser(name, parents=[common])
        sp.add_argument("space")
        if name == "norm":
            sp.add_argument("--unit", required=True, help="order unit v as a JSON list")
            sp.add_argument("--x", required=True, help="vector x as a JSON list")

    g = groups.add_parser("opspace", help="operator space analyses")
    s = g.add_subparsers(dest="sub", required=True)
    for name in ("interior", "sprime", "phi", "disjoint", "modulus", "bands",
                 "anti-lattice", "no-disjoint", "audit"):
        sp = s.add_parser(name, parents=[common])
        sp.add_argument("context", help="document with 'X' and 'Y' space documents")
        if name in ("phi", "disjoint", "modulus"):
            sp.add_argument("--op", help="operator document or JSON matrix")
        if name == "disjoint":
            sp.add_argument("--op2", help="second operator")
            sp.add_argument("--definition", action="store_true",
                            help="also decide disjointness from upper-bound sets")
        if name == "modulus":
            sp.add_argument("--via-bands", action="store_true",
                            help="also search a band decomposition")
        if name in ("anti-lattice", "no-disjoint"):
            sp.add_argument("--mode", choices=["compositional", "direct", "both"],
                            default="both")
        if name == "audit":
            sp.add_argument("--samples", type=int, default=50)
            sp.add_argument("--pairs", type=int, default=100)
    return p


def run(argv=None) -> tuple:
    """Parse ``argv`` and execute; returns ``(exit code, stdout text)``."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    handler = {"cone": cmd_cone, "space": cmd_space, "opspace": cmd_opspace}[args.group]
    try:
        out, kind, code = handler(args)
    except CapExceeded as e:
        log.error("%s", e)
        return EXIT_CAP, json.dumps({"error": "cap", "what": e.what, "cap": e.cap},
                                    sort_keys=True) + "\n"
    except (InputError, KeyError, TypeError) as e:
        log.error("input error: %s", e)
        return EXIT_INPUT, json.dumps({"error": "input", "message": str(e)},
                                      sort_keys=True) + "\n"
    except ConsistencyError as e:
        log.error("internal check failed: %s", e)
        return 1, json.dumps({"error": "consistency", "message": str(e)}, sort_keys=True) + "\n"
    if args.report:
        out["report"] = STATEMENTS[kind]
    return code, json.dumps(out, sort_keys=True, indent=2) + "\n"


def main(argv=None) -> int:
    try:
        code, text = run(argv)
    except PreRieszError as e:  # pragma: no cover - defensive
        print(f"error: {e}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
