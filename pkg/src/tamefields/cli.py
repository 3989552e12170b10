"""Command-line front end.

Exit codes: 0 success (or every suite case passed), 1 a computation or
suite case failed, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources

from .classify import classify_field
from .doag import (decide_all_models, doag_decide_sentence, doag_qe, evaluate_in_group,
                   format_formula, free_vars, parse_formula)
from .dsl import parse_element, parse_field, parse_group, parse_mpoly, parse_poly
from .errors import DSLSyntaxError, SemanticError, TameFieldsError
from .extension import analyze_extension
from .gauss import GaussAssignment, gauss_residue, gauss_value, leading_form
from .hensel import hensel_lift
from .ogroup import INFINITY, GroupElem
from .pcs import artin_schreier_prefix, geometric_prefix, pcs_poly_trace, pcs_validate
from .suite import DEFAULT_SEED, run_suite
from .valfield import RatFuncField

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_LEVEL = 8


def report_schema() -> dict:
    """The JSON schema that every ``--json`` report satisfies."""
    text = resources.files("tamefields").joinpath("schema/report.schema.json").read_text()
    return json.loads(text)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _s(x) -> str:
    return "oo" if x is INFINITY else str(x)


def _rational_tuple(text: str) -> tuple:
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    try:
        return tuple(Fraction(part.strip()) for part in body.split(","))
    except ValueError as exc:
        raise UsageError(f"cannot read {text!r} as a group element") from exc


def _field(args, text):
    K = parse_field(text, default_prec=args.prec)
    if isinstance(K, RatFuncField) and K.perfect and K.level == 0:
        K = RatFuncField(K.residue_field, args.level, True)
    return K


# ---------------------------------------------------------------------------
# subcommands: each returns (exit_code, result_dict, text_lines)
# ---------------------------------------------------------------------------

def cmd_analyze_extension(args):
    K = _field(args, args.field)
    g = parse_poly(args.poly, K)
    rep = analyze_extension(K, g)
    res = rep.to_dict()
    res["values"] = [str(v) for v in rep.values]
    lines = [f"field      {K}", f"polynomial {g}", f"outcome    {rep.outcome} ({rep.confidence})",
             f"n={rep.n} e={rep.e} f={rep.f} defect={rep.defect}",
             f"flags      {', '.join(sorted(rep.flags)) or '-'}"]
    if rep.values:
        lines.append("values     " + ", ".join(str(v) for v in rep.values))
    lines += [f"note       {n}" for n in rep.notes]
    return EXIT_OK, res, lines


def cmd_classify_field(args):
    K = _field(args, args.field)
    cls = classify_field(K)
    lines = [f"field {K}"] + [f"{name:24s} {v}" for name, v in cls.items()]
    return EXIT_OK, cls.to_dict(), lines


def cmd_gauss_value(args):
    K = _field(args, args.field)
    xs = tuple(GroupElem(_rational_tuple(x)) for x in args.x)
    A = GaussAssignment(K, xs, args.ny)
    f = parse_mpoly(args.poly, K, nx=len(xs), ny=args.ny)
    w = gauss_value(A, f)
    _, lead = leading_form(A, f)
    residue = None
    if w is not INFINITY and w.is_zero():
        residue = str(gauss_residue(A, f))
    res = {"value": _s(w), "leading_form": str(lead), "residue": residue}
    lines = [f"value        {_s(w)}", f"leading form {lead}"]
    if residue is not None:
        lines.append(f"residue      {residue}")
    return EXIT_OK, res, lines


def cmd_hensel_lift(args):
    K = _field(args, args.field)
    f = parse_poly(args.poly, K)
    y0 = parse_element(args.y0, K)
    target = _rational_tuple(args.target)
    res = hensel_lift(K, f, y0, target if len(target) > 1 else target[0])
    out = {"root": str(res.root), "iterations": res.iterations,
           "trace": [[_s(a), _s(b)] for a, b in res.trace]}
    lines = [f"root       {res.root}", f"iterations {res.iterations}"]
    lines += [f"  step {i}: v(f(z)) = {_s(a)}, v(f'(z)) = {_s(b)}" for i, (a, b) in enumerate(res.trace)]
    return EXIT_OK, out, lines


def cmd_pcs_trace(args):
    K = _field(args, args.field)
    if args.geometric:
        prefix = geometric_prefix(K, args.steps)
    else:
        if args.a is None:
            raise UsageError("pcs-trace needs --a (Artin-Schreier prefix) or --geometric")
        prefix = artin_schreier_prefix(K, parse_element(args.a, K), args.steps)
    val = pcs_validate(K, prefix.terms) if len(prefix.terms) >= 3 else None
    out = {"terms": [str(a) for a in prefix.terms],
           "pseudo_cauchy": None if val is None else val.ok,
           "gaps": [] if val is None else [_s(g) for g in val.gaps]}
    lines = [f"prefix ({len(prefix.terms)} terms, {prefix.name})"]
    lines += [f"  a_{i} = {a}" for i, a in enumerate(prefix.terms)]
    if val is not None:
        lines.append(f"pseudo-Cauchy: {val.ok}" + ("" if val.ok else f" (fails at gap {val.index})"))
    if args.poly:
        f = parse_poly(args.poly, K)
        tr = pcs_poly_trace(K, prefix, f)
        fit = tr.fit
        out["poly"] = {"values": [_s(v) for v in tr.values],
                       "fit": {"kind": fit.kind, "beta": None if fit.beta is None else str(fit.beta),
                               "h": None if fit.h is None else str(fit.h),
                               "tail_start": fit.tail_start}}
        lines.append("v(f(a_n)): " + ", ".join(_s(v) for v in tr.values))
        lines.append(f"fit        {fit}")
    code = EXIT_OK if val is None or val.ok else EXIT_FAIL
    return code, out, lines


def cmd_decide_oag(args):
    phi = parse_formula(args.formula)
    out = {"formula": format_formula(phi)}
    if args.group:
        g = parse_group(args.group)
        if free_vars(phi):
            raise UsageError("evaluation in a group needs a sentence")
        truth = evaluate_in_group(g, phi)
        out.update(group=str(g), truth=truth)
        return EXIT_OK, out, [f"{'true' if truth else 'false'} in {g}"]
    if free_vars(phi):
        qf = doag_qe(phi)
        out["quantifier_free"] = format_formula(qf)
        return EXIT_OK, out, [format_formula(qf)]
    truth = doag_decide_sentence(phi)
    out["truth"] = truth
    lines = [f"{'true' if truth else 'false'} in every nontrivial divisible ordered abelian group"]
    if args.trivial_allowed:
        trivial = doag_decide_sentence(phi, nontrivial=False)
        out["trivial_group"] = trivial
        out["all_models"] = decide_all_models(phi)
        lines.append(f"{'true' if trivial else 'false'} in the trivial group")
    return EXIT_OK, out, lines


def cmd_verify_suite(args):
    res = run_suite(args.filter, seed=args.seed, jobs=args.jobs)
    lines = [f"{c.status:12s} {c.id:16s} {c.description}" for c in res.cases]
    counts = res.counts()
    lines.append(f"{len(res.cases)} cases: {counts['PASS']} pass, {counts['FAIL']} fail, "
                 f"{counts['INCONCLUSIVE']} inconclusive")
    return (EXIT_OK if res.ok else EXIT_FAIL), res.to_dict(), lines


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def options(suppress: bool) -> argparse.ArgumentParser:
        # subcommands repeat the options with suppressed defaults so that
        # "tamefields --json cmd" and "tamefields cmd --json" both work
        def d(value):
            return argparse.SUPPRESS if suppress else value
        o = argparse.ArgumentParser(add_help=False)
        o.add_argument("--json", action="store_true", default=d(False),
                       help="machine-readable output")
        o.add_argument("--prec", type=Fraction, default=d(None),
                       help="default Hahn precision (a rational, first coordinate)")
        o.add_argument("--seed", type=int, default=d(DEFAULT_SEED),
                       help="seed for random batteries")
        o.add_argument("--level", type=int, default=d(DEFAULT_LEVEL),
                       help=f"descent depth for F(p)(t^(1/p^oo)) (default {DEFAULT_LEVEL})")
        return o

    common = options(True)
    p = _Parser(prog="tamefields", description="Valued-field computations and checks.",
                parents=[options(False)])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("analyze-extension", parents=[common],
                       help="e, f and defect of K(theta) for a root theta of a monic polynomial")
    s.add_argument("field")
    s.add_argument("poly")
    s.set_defaults(func=cmd_analyze_extension)

    s = sub.add_parser("classify-field", parents=[common], help="tame/henselian/... verdicts")
    s.add_argument("field")
    s.set_defaults(func=cmd_classify_field)

    s = sub.add_parser("gauss-value", parents=[common],
                       help="Gauss value of a polynomial in x1.., y1.. over K")
    s.add_argument("field")
    s.add_argument("poly")
    s.add_argument("--x", action="append", default=[], metavar="VALUE",
                   help="value of the next x variable, e.g. 1/2 or '(1, 0)'; repeatable")
    s.add_argument("--ny", type=int, default=0, help="number of y variables")
    s.set_defaults(func=cmd_gauss_value)

    s = sub.add_parser("hensel-lift", parents=[common], help="Newton lifting of a simple root")
    s.add_argument("field")
    s.add_argument("poly")
    s.add_argument("y0")
    s.add_argument("--target", default="20", help="target precision (default 20)")
    s.set_defaults(func=cmd_hensel_lift)

    s = sub.add_parser("pcs-trace", parents=[common], help="pseudo-Cauchy prefixes and value fits")
    s.add_argument("field")
    s.add_argument("--a", help="element a for the Artin-Schreier prefix of X^p - X - a")
    s.add_argument("--geometric", action="store_true", help="use 1 + t + t^2 + ... instead")
    s.add_argument("--steps", type=int, default=8)
    s.add_argument("--poly", help="polynomial f whose values v(f(a_n)) are fitted")
    s.set_defaults(func=cmd_pcs_trace)

    s = sub.add_parser("decide-oag", parents=[common],
                       help="decide a sentence in divisible ordered groups, or eliminate quantifiers")
    s.add_argument("formula")
    s.add_argument("--trivial-allowed", action="store_true",
                   help="also report the value in the trivial group {0}")
    s.add_argument("--group", help="evaluate in a specific group such as Z or 'Z x Q'")
    s.set_defaults(func=cmd_decide_oag)

    s = sub.add_parser("verify-suite", parents=[common], help="run the acceptance battery")
    s.add_argument("--filter", default=None, help="tag or case id substring")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_verify_suite)
    return p


def _emit(args, payload: dict, lines: list, stream=None):
    stream = stream or sys.stdout
    if args.json:
        json.dump(payload, stream, indent=2, default=str)
        stream.write("\n")
    else:
        for line in lines:
            print(line, file=stream)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, result, lines = args.func(args)
    except (DSLSyntaxError, SemanticError, UsageError) as exc:
        err = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, DSLSyntaxError):
            err.update(line=exc.line, col=exc.col)
        _emit(args, {"command": args.command, "ok": False, "error": err},
              [f"error: {exc}"], sys.stdout if args.json else sys.stderr)
        return EXIT_USAGE
    except TameFieldsError as exc:
        _emit(args, {"command": args.command, "ok": False,
                     "error": {"type": type(exc).__name__, "message": str(exc)}},
              [f"{type(exc).__name__}: {exc}"], sys.stdout if args.json else sys.stderr)
        return EXIT_FAIL
    _emit(args, {"command": args.command, "ok": code == EXIT_OK, "result": result}, lines)
    return code


if __name__ == "__main__":
    sys.exit(main())
