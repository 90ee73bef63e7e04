"""Command-line front end.

Exit codes: 0 success, 1 a bound failed with trusted hypotheses, 2 input or
parse error, 3 resource limit, 4 hypothesis violated.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import checks
from .checks import PrimeWitness
from .dimension import krull_dim
from .errors import HypothesisViolated, InputError, ResourceLimit
from .groebner import Limits, resource_limits
from .ideals import kernel
from .matrix import minors
from .modules import equidim_certificate, fitting_ideal, order_ideal, row_ideal, sym_presentation
from .session import load_session
from .sweep import SweepConfig, SweepViolation, sweep

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_RESOURCE, EXIT_HYPOTHESIS = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def build_parser():
    defaults = Limits()
    p = _Parser(
        prog="heightbounds",
        description="Groebner-basis height computations and checks of height bounds "
                    "for order ideals, row ideals and Fitting ideals.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("-s", "--session", help="session file declaring the ring and named objects")
    p.add_argument("--json", action="store_true", help="print a JSON document instead of text")
    p.add_argument("--max-pairs", type=int, help=f"S-pair cap (default {defaults.max_pairs}, env GH_MAX_PAIRS)")
    p.add_argument("--max-degree", type=int, help=f"degree cap (default {defaults.max_degree}, env GH_MAX_DEGREE)")
    p.add_argument("--max-basis", type=int, help=f"basis size cap (default {defaults.max_basis}, env GH_MAX_BASIS)")
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print a JSON document instead of text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, what in (("gb", "reduced Groebner basis"), ("dim", "Krull dimension of R/I"),
                       ("height", "height of I")):
        sp = sub.add_parser(name, help=what, parents=[common])
        sp.add_argument("name", help="ideal or polynomial name")
    sp = sub.add_parser("minors", help="t x t minors", parents=[common])
    sp.add_argument("matrix")
    sp.add_argument("t", type=int)
    sp = sub.add_parser("fitting", help="Fitting ideal Fitt_i of coker(MATRIX)", parents=[common])
    sp.add_argument("matrix")
    sp.add_argument("i", type=int)
    for name in ("rowideal", "orderideal"):
        sp = sub.add_parser(name, help=f"{name[:-5]} ideal of a vector against a presentation",
                            parents=[common])
        sp.add_argument("matrix")
        sp.add_argument("vector")
    sp = sub.add_parser("kernel", help="generators of the syzygies of the columns", parents=[common])
    sp.add_argument("matrix")
    sp = sub.add_parser("sym", help="defining ideal of the symmetric algebra of coker(MATRIX)",
                        parents=[common])
    sp.add_argument("matrix")

    sp = sub.add_parser("check", help="evaluate one height bound", parents=[common],
                        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    sp.add_argument("theorem", choices=checks.THEOREMS)
    sp.add_argument("--matrix", help="presentation matrix (psi for gpit)")
    sp.add_argument("--vector", help="b for lemma_1_1 / row_ideal_equidim, x for gpit")
    sp.add_argument("--column", help="added column for macaulay_ee")
    sp.add_argument("--t", type=int, help="minor size for bruns / macaulay_ee")
    sp.add_argument("--i", type=int, help="Fitting index for the kwiecinski checks")
    sp.add_argument("--cert", help="equidimensionality certificate (computed when omitted)")
    sp.add_argument("--prime", action="append", default=[],
                    help="prime witness; repeat for huneke_rossi")
    sp.add_argument("--ideal", help="first ideal for serre")
    sp.add_argument("--ideal2", help="second ideal for serre")

    sp = sub.add_parser("sweep", help="randomized sweep over F_p", parents=[common],
                        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    sp.add_argument("--theorem", required=True, choices=sorted(checks.THEOREMS))
    sp.add_argument("--rows", type=int, default=2)
    sp.add_argument("--cols", type=int, default=1)
    sp.add_argument("--char", type=int, default=5)
    sp.add_argument("--max-deg", type=int, default=1)
    sp.add_argument("--inhomogeneous", action="store_true", help="sample all degrees <= max-deg")
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--nvars", type=int, default=3)
    sp.add_argument("--index", type=int, help="t or i (theorem-specific default)")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--csv", help="write the per-sample CSV here ('-' for stdout)")
    return p


def _limits(args):
    base = Limits.from_env()
    kw = {}
    for attr in ("max_pairs", "max_degree", "max_basis"):
        v = getattr(args, attr)
        if v is not None:
            kw[attr] = v
    return Limits(**{**base.__dict__, **kw})


def _witness(sess, name):
    I, asserted = sess.prime(name)
    return PrimeWitness(I, asserted, name)


def _strs(polys):
    return [str(f) for f in polys]


def _run_check(args, sess):
    th = args.theorem

    def need(attr):
        v = getattr(args, attr)
        if v is None:
            raise InputError(f"check {th} needs --{attr}")
        return v

    cert = sess.certificate(args.cert) if args.cert else None
    if th == "lemma_1_1":
        return checks.check_lemma_1_1(sess.matrix(need("matrix")), sess.vector(need("vector")))
    if th == "gpit":
        return checks.check_gpit(sess.matrix(need("matrix")), sess.vector(need("vector")))
    if th == "mu_inequality":
        return checks.check_mu_inequality(sess.matrix(need("matrix")))
    if th == "macaulay_ee":
        return checks.check_macaulay_ee(sess.matrix(need("matrix")), sess.vector(need("column")), need("t"))
    if th == "bruns":
        return checks.check_bruns(sess.matrix(need("matrix")), need("t"))
    if th == "row_ideal_equidim":
        A = sess.matrix(need("matrix"))
        if cert is None:
            cert = equidim_certificate(sym_presentation(A))
        Q = _witness(sess, args.prime[0]) if args.prime else None
        return checks.check_row_ideal_equidim(A, sess.vector(need("vector")), cert, Q)
    if th == "kwiecinski":
        return checks.check_kwiecinski(sess.matrix(need("matrix")), need("i"), cert)
    if th == "kwiecinski_refined":
        P = _witness(sess, args.prime[0]) if args.prime else None
        return checks.check_kwiecinski_refined(sess.matrix(need("matrix")), need("i"), cert, P)
    if th == "huneke_rossi":
        return checks.check_huneke_rossi(sess.matrix(need("matrix")), [_witness(sess, n) for n in args.prime])
    if th == "serre":
        return checks.check_serre_subadditivity(sess.ideal(need("ideal")), sess.ideal(need("ideal2")))
    raise InputError(f"unknown theorem {th!r}")


def _emit(out, args, doc, text):
    out.write((json.dumps(doc, sort_keys=True, indent=2) if args.json else text) + "\n")


def _dispatch(args, out):
    if args.command == "sweep":
        cfg = SweepConfig(args.theorem, rows=args.rows, cols=args.cols, char=args.char,
                          max_deg=args.max_deg, homogeneous=not args.inhomogeneous,
                          samples=args.samples, seed=args.seed, nvars=args.nvars,
                          index=args.index, limits=_limits(args), workers=args.workers)
        try:
            res = sweep(cfg)
        except SweepViolation as exc:
            _emit(out, args, {"violation": exc.bundle},
                  f"VIOLATION {exc}\nreproduction session:\n{exc.bundle['session']}")
            return EXIT_FAILED
        if args.csv == "-":
            out.write(res.to_csv())
        elif args.csv:
            with open(args.csv, "w", encoding="utf-8", newline="") as fh:
                fh.write(res.to_csv())
        if args.csv != "-":
            _emit(out, args, {"counts": res.counts(),
                              "slack_histogram": {str(k): v for k, v in res.slack_histogram().items()}},
                  res.summary())
        return EXIT_OK

    if not args.session:
        raise InputError(f"command {args.command!r} needs --session")
    sess = load_session(args.session)
    cmd = args.command

    if cmd == "check":
        try:
            rep = _run_check(args, sess)
        except HypothesisViolated as exc:
            rep = exc.report
            doc = {"error": str(exc), "report": rep.to_dict() if rep else None}
            _emit(out, args, doc, f"hypothesis violated: {exc}" + (f"\n{rep.render()}" if rep else ""))
            return EXIT_HYPOTHESIS
        _emit(out, args, rep.to_dict(), rep.render())
        return EXIT_FAILED if not rep.holds and rep.trusted else EXIT_OK

    if cmd in ("gb", "dim", "height"):
        I = sess.ideal(args.name)
        if cmd == "gb":
            gb = _strs(I.gb())
            _emit(out, args, {"name": args.name, "gb": gb}, "\n".join(gb) if gb else "(zero ideal)")
            return EXIT_OK
        d = krull_dim(I)
        doc = {"name": args.name, "dim": d.dim, "height": d.height,
               "independent_set": list(d.witness_independent_set), "unit": d.unit}
        first, second = (f"height {d.height}", f"dim {d.dim}")
        if cmd == "dim":
            first, second = second, first
        text = f"{first}, {second}" + (" (unit ideal)" if d.unit else "")
        _emit(out, args, doc, text)
        return EXIT_OK

    if cmd == "minors":
        ms = _strs(minors(sess.matrix(args.matrix), args.t))
        _emit(out, args, {"matrix": args.matrix, "t": args.t, "minors": ms}, "\n".join(ms) if ms else "(none)")
        return EXIT_OK
    if cmd == "fitting":
        I = fitting_ideal(sess.matrix(args.matrix), args.i)
        gens = _strs(I.generators)
        _emit(out, args, {"matrix": args.matrix, "i": args.i, "generators": gens}, str(I))
        return EXIT_OK
    if cmd in ("rowideal", "orderideal"):
        fn = row_ideal if cmd == "rowideal" else order_ideal
        I = fn(sess.matrix(args.matrix), sess.vector(args.vector))
        _emit(out, args, {"generators": _strs(I.generators)}, str(I))
        return EXIT_OK
    if cmd == "kernel":
        K = kernel(sess.matrix(args.matrix))
        cols = [_strs(c) for c in K.columns()]
        text = "\n".join("(" + ", ".join(c) + ")" for c in cols) if cols else "(zero module)"
        _emit(out, args, {"columns": cols}, text)
        return EXIT_OK
    if cmd == "sym":
        S = sym_presentation(sess.matrix(args.matrix))
        gens = _strs(S.defining_ideal.generators)
        d = S.dim()
        _emit(out, args, {"ring_variables": list(S.extended_ring.variables), "generators": gens, "dim": d},
              f"ring {', '.join(S.extended_ring.variables)}\nideal {S.defining_ideal}\ndim {d}")
        return EXIT_OK
    raise InputError(f"unknown command {cmd!r}")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        with resource_limits(_limits(args)):
            return _dispatch(args, out)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except ResourceLimit as exc:
        err.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE
    except HypothesisViolated as exc:
        err.write(f"hypothesis violated: {exc}\n")
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
