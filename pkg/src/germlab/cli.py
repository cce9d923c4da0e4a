"""Command line front end.

Commands:
  classify  -- isotopy class of a germ (Morin first, then the plane /
               surface / corank-2 criteria)
  perturb   -- Morin points of a family A/B/C perturbation, single
               parameter tuple or a sweep grid
  tables    -- machine-readable class-count and family-invariant tables
  verify    -- classify and compare against a claimed label

Exit codes: 0 success, 1 verify mismatch, 2 parse error, 3 unrecognized
germ.  JSON output is deterministic (sorted keys, fixed separators) so
identical inputs give byte-identical bytes.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from .polyring import rat
from .germ import analyze, NotCorankOneError, DegenerateGermError, GermError
from .morin import recognize_morin, class_count, normal_form
from .lowdim import classify_plane, classify_surface
from .sigma20 import classify_sigma20, DegenerateSigmaError
from .germparse import parse_map, render_map, ParseError
from . import perturb as pt

EXIT_OK = 0
EXIT_VERIFY_MISMATCH = 1
EXIT_PARSE_ERROR = 2
EXIT_UNRECOGNIZED = 3


class UnrecognizedError(Exception):
    pass


def _emit(payload, as_json, human_lines):
    if as_json:
        sys.stdout.write(json.dumps(payload, sort_keys=True,
                                    separators=(",", ":")) + "\n")
    else:
        for line in human_lines:
            sys.stdout.write(line + "\n")


def _label_dict(label):
    return {
        "family": label.family,
        "k": label.k,
        "signs": list(label.signs),
        "invariant": _inv_json(label.invariant),
        "normal_form": (render_map(label.normal_form)
                        if label.normal_form is not None else None),
        "describe": label.describe(),
    }


def _inv_json(inv):
    kind = inv[0]
    if kind == "none":
        return {"kind": "none"}
    value = inv[1]
    if isinstance(value, tuple):
        return {"kind": kind, "value": list(value)}
    return {"kind": kind, "value": value}


def classify_any(f):
    """Dispatch: Morin recognition first, then the plane-germ criteria
    (n=m=2), the surface criteria (n=2, m=3) and the corank-two criteria
    (n=m=4).  Returns (label, route); raises UnrecognizedError when no
    criterion applies."""
    if f.src_dim == 2 and f.tgt_dim == 3:
        label = classify_surface(f)
        if label.family == "unrecognized":
            raise UnrecognizedError("no surface criterion matched")
        return label, "surface"
    if f.src_dim != f.tgt_dim:
        raise UnrecognizedError(
            "no classifier for a germ (R^%d,0) -> (R^%d,0)"
            % (f.src_dim, f.tgt_dim))
    ana = analyze(f)
    if ana.corank0 <= 1:
        try:
            return recognize_morin(f, analysis=ana).class_label, "morin"
        except DegenerateGermError:
            if f.src_dim == 2:
                label = classify_plane(f)
                if label.family != "unrecognized":
                    return label, "plane"
            raise UnrecognizedError("degenerate germ: no criterion matched")
    if ana.corank0 == 2 and f.src_dim == 4:
        try:
            return classify_sigma20(f).class_label, "sigma20"
        except DegenerateSigmaError as e:
            raise UnrecognizedError(str(e))
    raise UnrecognizedError("corank %d at the origin: out of scope"
                            % ana.corank0)


def _read_input(args):
    if args.input:
        if args.input == "-":
            return sys.stdin.read()
        with open(args.input) as fh:
            return fh.read()
    if args.germ:
        return args.germ
    raise ParseError("no germ given (use --input or an inline argument)", 1, 1)


def cmd_classify(args):
    text = _read_input(args)
    f = parse_map(text)
    try:
        label, route = classify_any(f)
    except UnrecognizedError as e:
        _emit({"error": str(e), "family": "unrecognized"}, args.json,
              ["unrecognized: %s" % e])
        return EXIT_UNRECOGNIZED
    payload = {"route": route, "label": _label_dict(label)}
    human = ["class: %s" % label.describe(),
             "route: %s" % route,
             "invariant: %s" % (label.invariant,)]
    if label.normal_form is not None:
        human.append("normal form: %s" % render_map(label.normal_form))
    _emit(payload, args.json, human)
    return EXIT_OK


def _parse_claim(claim):
    """'butterfly eps1=-1 eps2=-1' -> (family, {eps1: -1, eps2: -1})."""
    bits = claim.split()
    if not bits:
        raise ValueError("empty claimed label")
    family = bits[0]
    signs = {}
    for b in bits[1:]:
        if "=" not in b:
            raise ValueError("bad sign clause %r" % b)
        name, val = b.split("=", 1)
        if name not in ("eps1", "eps2"):
            raise ValueError("unknown sign name %r" % name)
        signs[name] = int(val)
    return family, signs


def cmd_verify(args):
    text = _read_input(args)
    f = parse_map(text)
    try:
        label, route = classify_any(f)
    except UnrecognizedError as e:
        _emit({"error": str(e)}, args.json, ["unrecognized: %s" % e])
        return EXIT_UNRECOGNIZED
    family, signs = _parse_claim(args.claim)
    got = dict(zip(("eps1", "eps2"), label.signs))
    ok = (label.family == family and
          all(got.get(k) == v for k, v in signs.items()))
    payload = {
        "claimed": args.claim,
        "actual": _label_dict(label),
        "match": ok,
    }
    human = ["claimed: %s" % args.claim,
             "actual:  %s" % label.describe(),
             "match: %s" % ("yes" if ok else "no")]
    if not ok:
        human.append("invariant diff: actual %s" % (label.invariant,))
    _emit(payload, args.json, human)
    return EXIT_OK if ok else EXIT_VERIFY_MISMATCH


def _parse_params(text):
    if not text:
        return ()
    return tuple(rat(Fraction(p.strip())) for p in text.split(","))


def _parse_grid(text, nparams):
    """--grid 'lo:hi:step[,lo:hi:step...]' -> list of parameter tuples."""
    ranges = []
    for chunk in text.split(","):
        lo, hi, step = (Fraction(v) for v in chunk.split(":"))
        if step <= 0:
            raise ValueError("grid step must be positive")
        vals = []
        v = lo
        while v <= hi:
            vals.append(v)
            v += step
        ranges.append(vals)
    while len(ranges) < nparams:
        ranges.append(list(ranges[-1]))
    grid = [()]
    for vals in ranges[:nparams]:
        grid = [g + (v,) for g in grid for v in vals]
    return grid


def cmd_perturb(args):
    family = args.family.upper()
    nparams = {"B": 1, "C": 2}.get(family, (args.l - 1) if args.l else None)
    if nparams is None:
        raise ValueError("family A needs --l")
    if args.grid:
        grid = _parse_grid(args.grid, nparams)
        reports, summary = pt.sweep(family, args.n, grid, l=args.l,
                                    precision_bits=args.precision)
        payload = {"summary": summary,
                   "reports": [pt.report_to_dict(r) for r in reports]}
        human = ["sweep %s n=%d: %d grid points, max count %d (c(f)=%s%s)" %
                 (family, args.n, summary["grid_size"], summary["max_count"],
                  summary["c_f_bound"],
                  ", attained" if summary["attained"] else ""),
                 "all points verified: %s" % summary["all_verified"]]
        _emit(payload, args.json, human)
        return EXIT_OK
    spec = pt.UnfoldingSpec(family, args.n, _parse_params(args.params),
                            l=args.l)
    rep = pt.morin_points(spec, precision_bits=args.precision)
    payload = pt.report_to_dict(rep)
    human = ["%r: %d Morin point(s), bound c(f)=%d, stable=%s" %
             (spec, rep.count, rep.c_f_bound, rep.stable)]
    for note in rep.notes:
        human.append("note: %s" % note)
    for p in rep.points:
        d = pt.point_to_dict(p)
        human.append("  t ~ %s  invariant=%s  table=%s  verified=%s" %
                     (d["t"]["approx"], d["invariant"], d["table_invariant"],
                      p.verified))
    _emit(payload, args.json, human)
    return EXIT_OK


_INV_FORMULAS = {
    ("A", 2): "1", ("A", 3): "qbar_x3", ("A", 4): "(1, qbar_x4)",
    ("A", 5): "qbar_x5",
    ("B", 2): "t", ("B", 3): "t^2", ("B", 4): "(t, t)", ("B", 5): "t",
    ("C", 2): "t", ("C", 3): "-20*t^2 + 3*t + u1",
    ("C", 4): "(t, t*(30*t^2 - 4*t - u1))",
    ("C", 5): "t*(-42*t^2 + 5*t + u1)",
}

_REFERENCE_SPECS = {
    "A": lambda n: pt.UnfoldingSpec("A", n, [0, -1], l=3),  # roots 0, +-1
    "B": lambda n: pt.UnfoldingSpec("B", n, [-pt.FAMILY_B_CN[n]]),
    "C": lambda n: pt.UnfoldingSpec("C", n, [Fraction(1, 4), 2]),
}


def cmd_tables(args):
    t1 = [{"k": n, "n": n, "count": class_count(n, n)} for n in range(1, 7)]
    t2 = [{"k": k, "n": n, "count": class_count(k, n)}
          for n in range(2, 7) for k in range(1, n)]
    families = []
    for fam in ("A", "B", "C"):
        for n in (2, 3, 4, 5):
            spec = _REFERENCE_SPECS[fam](n)
            rep = pt.morin_points(spec, precision_bits=args.precision)
            families.append({
                "family": fam,
                "n": n,
                "u": [pt._rat_repr(v) for v in spec.u],
                "l": spec.l,
                "count": rep.count,
                "c_f_bound": rep.c_f_bound,
                "inv_formula": _INV_FORMULAS[(fam, n)],
                "invariants": [_inv_json(p.invariant_value)
                               for p in rep.points],
                "all_verified": all(p.verified for p in rep.points),
            })
    payload = {"class_counts_k_eq_n": t1, "class_counts_k_lt_n": t2,
               "families": families}
    human = ["class counts (k = n): " +
             ", ".join("n=%d:%d" % (r["n"], r["count"]) for r in t1),
             "class counts (k < n): 2 for even k, 1 for odd k"]
    for row in families:
        human.append("%s n=%d: %d/%d points, inv %s, verified=%s" %
                     (row["family"], row["n"], row["count"], row["c_f_bound"],
                      row["inv_formula"], row["all_verified"]))
    _emit(payload, args.json, human)
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(
        prog="germlab",
        description="Exact classification of polynomial map-germs up to "
                    "orientation-preserving A-equivalence.")
    default_prec = int(os.environ.get("GERMLAB_PRECISION",
                                      pt.DEFAULT_PRECISION_BITS))
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, germ_arg=False):
        p.add_argument("--json", action="store_true",
                       help="deterministic JSON output")
        p.add_argument("--precision", type=int, default=default_prec,
                       help="root isolation precision exponent (bits, 20-120)")
        if germ_arg:
            p.add_argument("germ", nargs="?", help="inline germ text")
            p.add_argument("--input", "-i",
                           help="germ file, or - for stdin")

    pc = sub.add_parser("classify", help="classify a germ")
    common(pc, germ_arg=True)

    pv = sub.add_parser("verify", help="classify and compare with a claim")
    common(pv, germ_arg=True)
    pv.add_argument("--claim", required=True,
                    help="claimed label, e.g. 'butterfly eps1=-1 eps2=-1'")

    pp = sub.add_parser("perturb", help="Morin points of a perturbation")
    common(pp)
    pp.add_argument("--family", required=True, choices=["A", "B", "C",
                                                        "a", "b", "c"])
    pp.add_argument("--n", type=int, required=True, choices=[2, 3, 4, 5])
    pp.add_argument("--l", type=int, help="family A degree (l >= 2)")
    pp.add_argument("--params", help="comma-separated rational parameters")
    pp.add_argument("--grid", help="sweep grid 'lo:hi:step[,lo:hi:step...]'")

    pts = sub.add_parser("tables", help="machine-readable golden tables")
    common(pts)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if not 20 <= args.precision <= 120:
        ap.error("--precision must be in [20, 120]")
    try:
        if args.command == "classify":
            return cmd_classify(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "perturb":
            return cmd_perturb(args)
        return cmd_tables(args)
    except ParseError as e:
        sys.stderr.write("parse error: %s\n" % e)
        return EXIT_PARSE_ERROR
    except NotCorankOneError as e:
        sys.stderr.write("unrecognized: %s\n" % e)
        return EXIT_UNRECOGNIZED
    except (GermError, ValueError) as e:
        sys.stderr.write("error: %s\n" % e)
        return EXIT_UNRECOGNIZED


if __name__ == "__main__":
    sys.exit(main())
