"""Command-line front end: ``plausible <command> FILE ...``.

Exit codes:
    0  success (for ``prove``: the value is +1)
    1  negative verdict (``prove`` gives -1, ``verify`` or ``audit`` finds problems)
    2  usage error
    3  unknown proof algorithm
    4  formula does not parse
    5  query is not ground
    6  description file is unreadable or invalid
    7  certificate is malformed or belongs to another description
    8  evaluation rad too large to build
"""

from __future__ import annotations

import argparse
import sys

from . import audit as audit_mod
from . import certificate
from .algorithms import Alg
from .description import DescriptionError
from .engine import PLUS, EvaluationError, Evaluator
from .language import ParseError, parse_description, parse_formula
from .rad import RadTooLarge, build_evaluation_rad
from .syntax import format_formula, is_ground
from .truth import truth_value

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2
EXIT_ALG, EXIT_FORMULA, EXIT_NONGROUND, EXIT_DESCRIPTION = 3, 4, 5, 6
EXIT_CERTIFICATE, EXIT_TOO_LARGE = 7, 8


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise CliError(EXIT_DESCRIPTION, "cannot read %s: %s" % (path, e.strerror))
    try:
        return parse_description(text)
    except DescriptionError as e:
        raise CliError(EXIT_DESCRIPTION, "%s: %s" % (path, e))


def _alg(name):
    try:
        return Alg.parse(name)
    except ValueError as e:
        raise CliError(EXIT_ALG, str(e))


def _query(text):
    try:
        f = parse_formula(text)
    except ParseError as e:
        raise CliError(EXIT_FORMULA, "cannot parse formula %r: %s" % (text, e))
    if not is_ground(f):
        raise CliError(EXIT_NONGROUND, "query is not ground: %s" % format_formula(f))
    return f


def _name_algorithm(args, line):
    # stdout carries the bare verdict; the algorithm is always named on stderr
    if not args.quiet:
        print(line, file=sys.stderr)


def cmd_check(args, out):
    d = _load(args.file)
    n_strict = len(d.strict_instances)
    print("ok: %d constants, %d ground axiom clauses, %d rule instances (%d strict), %d priority pairs"
          % (len(d.constants), len(d.ground_axioms), len(d.instances), n_strict, len(d.priority)),
          file=out)
    print("digest %s" % d.digest(), file=out)
    return EXIT_OK


def cmd_prove(args, out):
    d = _load(args.file)
    alg = _alg(args.alg)
    f = _query(args.formula)
    v = Evaluator(d).P(alg, (), f)
    text = "+1" if v == PLUS else "-1"
    print(text, file=out)
    _name_algorithm(args, "P(%s, (), %s) = %s" % (alg.value, format_formula(f), text))
    return EXIT_OK if v == PLUS else EXIT_NEGATIVE


def cmd_truth(args, out):
    d = _load(args.file)
    alg = _alg(args.alg)
    f = _query(args.formula)
    v = truth_value(d, alg, f)
    print(v.value, file=out)
    _name_algorithm(args, "V(%s, %s) = %s" % (alg.value, format_formula(f), v.value))
    return EXIT_OK


def cmd_rad(args, out):
    d = _load(args.file)
    alg = _alg(args.alg)
    f = _query(args.formula)
    try:
        rad = build_evaluation_rad(d, alg, f, max_nodes=args.max_nodes)
    except RadTooLarge as e:
        raise CliError(EXIT_TOO_LARGE, str(e))
    text = certificate.to_json(rad) + "\n" if args.format == "json" else certificate.to_dot(rad)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(certificate.summary(rad), file=out)
    else:
        out.write(text)
    return EXIT_OK


def cmd_verify(args, out):
    d = _load(args.file)
    try:
        with open(args.certificate, encoding="utf-8") as fh:
            rad = certificate.from_json(fh.read(), d)
    except OSError as e:
        raise CliError(EXIT_CERTIFICATE, "cannot read %s: %s" % (args.certificate, e.strerror))
    except (certificate.CertificateError, ValueError) as e:
        raise CliError(EXIT_CERTIFICATE, str(e))
    problems = certificate.validate(rad, d)
    if problems:
        print("INVALID: %s" % certificate.summary(rad), file=out)
        for p in problems:
            print("  " + p, file=out)
        return EXIT_NEGATIVE
    print("valid: %s" % certificate.summary(rad), file=out)
    return EXIT_OK


def cmd_audit(args, out):
    d = _load(args.file)
    if args.universe == "literals":
        universe = audit_mod.literal_universe(d)
    else:
        universe = audit_mod.consequent_universe(d)
    for q in args.query or ():
        f = _query(q)
        if f not in universe:
            universe.append(f)
    results = audit_mod.Auditor(d, universe).run()
    print("audit over %d formulas" % len(universe), file=out)
    print(audit_mod.format_table(results), file=out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plausible", description="Plausible Logic reasoning engine")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="validate a description file")
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    for name, func, hlp in (("prove", cmd_prove, "print P(alg, (), formula) as +1 or -1"),
                            ("truth", cmd_truth, "print the truth value a, t, f or u")):
        c = sub.add_parser(name, help=hlp)
        c.add_argument("file")
        c.add_argument("formula")
        c.add_argument("--alg", "-a", required=True, help="phi, pi, psi, theta, thetap, beta, psip or pip")
        c.add_argument("--quiet", "-q", action="store_true", help="do not echo the evaluated call on stderr")
        c.set_defaults(func=func)

    c = sub.add_parser("rad", help="write the evaluation rad certificate")
    c.add_argument("file")
    c.add_argument("formula")
    c.add_argument("--alg", "-a", required=True)
    c.add_argument("--format", choices=("json", "dot"), default="json")
    c.add_argument("--out", "-o")
    c.add_argument("--max-nodes", type=int, default=100_000)
    c.set_defaults(func=cmd_rad)

    c = sub.add_parser("verify", help="check a JSON certificate against a description")
    c.add_argument("file")
    c.add_argument("certificate")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("audit", help="check hierarchy, coherence, consistency and closure properties")
    c.add_argument("file")
    c.add_argument("--universe", choices=("consequents", "literals"), default="consequents")
    c.add_argument("--query", "-q", action="append", help="extra formula to include (repeatable)")
    c.set_defaults(func=cmd_audit)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliError as e:
        print("error: %s" % e, file=sys.stderr)
        return e.code
    except EvaluationError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_DESCRIPTION


if __name__ == "__main__":
    sys.exit(main())
