"""Command-line front end.

Exit codes: 0 separable / yes / pass, 1 inseparable / no / fail, 2 undecided
after budget; errors use the codes in EXIT below and print one line
``error: <kind>: <message>`` on stderr.
"""
import argparse
import json
import sys
from pathlib import Path

from .closures import dc_lang, diagonal_via_sup, ideal_decompose, sup_decide
from .engine import (DEFAULT_BUDGET, Inseparable, Separable, Undecided, certificate_from_json, is_ptl_regular,
                     separate, sup_via_separability, validation_report)
from .errors import (GuardError, IllFormedSupInstance, NotDownwardClosed, ParseError, PtlsepError,
                     ReservedSymbolError)
from .grammar import parse_cfg
from .lang import LangRef
from .patterns import Pattern, contains_pattern, pattern_lang_nfa
from .ptl import show_formula
from .regular import Nfa
from .words import check_user_alphabet

EXIT = {
    "usage": 3,
    "parse": 4,
    "reserved-symbol": 5,
    "ill-formed-sup": 6,
    "not-downward-closed": 7,
    "guard": 8,
    "io": 9,
    "error": 10,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# input files

def _load_json(path: Path):
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from None


def parse_nfa_file(path) -> Nfa:
    path = Path(path)
    data = _load_json(path)
    try:
        M = Nfa.from_json(data)
    except ReservedSymbolError:
        raise
    except PtlsepError as exc:
        raise ParseError(f"{path}: {exc}") from None
    check_user_alphabet(M.alphabet)
    return M


def parse_language(path) -> LangRef:
    """Read a .cfg grammar or a .nfa (JSON) automaton."""
    path = Path(path)
    if path.suffix == ".cfg":
        try:
            return LangRef.of(parse_cfg(path.read_text()))
        except ParseError as exc:
            raise ParseError(f"{path}: {exc}") from None
    if path.suffix in (".nfa", ".json"):
        return LangRef.of(parse_nfa_file(path))
    raise UsageError(f"{path}: expected a .cfg or .nfa file")


def _write(path, text):
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _yes_no(flag: bool) -> int:
    print("yes" if flag else "no")
    return 0 if flag else 1


# ---------------------------------------------------------------------------
# commands

def _report_certificate(cert, args) -> int:
    if isinstance(cert, Separable):
        print(f"separable level {cert.level}: {show_formula(cert.formula)}")
        if args.dot:
            Path(args.dot).write_text(cert.separator.to_dot("separator"))
        code = 0
    elif isinstance(cert, Inseparable):
        print(f"inseparable pattern {cert.pattern}")
        if args.dot:
            Path(args.dot).write_text(pattern_lang_nfa(cert.pattern, 1).to_dot("pattern"))
        code = 1
    else:
        print(f"undecided after {cert.budget} rounds; resume {json.dumps(cert.resume)}")
        code = 2
    _write(args.emit, _dumps(cert.to_json()))
    return code


def cmd_separate(args) -> int:
    I, E = parse_language(args.I), parse_language(args.E)
    resume = json.loads(args.resume) if args.resume else None
    cert = separate(I, E, budget=args.budget, resume=resume, parallel=args.parallel)
    return _report_certificate(cert, args)


def cmd_is_ptl(args) -> int:
    L = parse_language(args.L)
    if not L.is_regular:
        raise UsageError("is-ptl needs a regular (.nfa) input")
    return _report_certificate(is_ptl_regular(L.obj, budget=args.budget), args)


def cmd_diagonal(args) -> int:
    L = parse_language(args.L)
    return _yes_no(diagonal_via_sup(L) if args.method == "sup" else L.diagonal())


def _order(text):
    order = [x for x in text.split(",") if x] if text else []
    check_user_alphabet(order)
    return order


def cmd_sup(args) -> int:
    L = parse_language(args.L)
    order = _order(args.order)
    if args.method == "separability":
        return _yes_no(sup_via_separability(L, order, budget=args.budget))
    return _yes_no(sup_decide(L, order))


def cmd_dclosure(args) -> int:
    D = dc_lang(parse_language(args.L))
    _write(args.emit, _dumps(D.to_json()))
    if args.dot:
        Path(args.dot).write_text(D.to_dot("downward_closure"))
    return 0


def cmd_ideals(args) -> int:
    L = parse_language(args.D)
    if not L.is_regular:
        raise UsageError("ideals needs a regular (.nfa) input")
    ideals = ideal_decompose(L.obj)
    _write(args.emit, _dumps([I.to_json() for I in ideals]))
    return 0


def cmd_pattern_check(args) -> int:
    L = parse_language(args.L)
    try:
        P = Pattern.from_json(_load_json(Path(args.P)))
    except ReservedSymbolError:
        raise
    except ParseError:
        raise
    except PtlsepError as exc:
        raise ParseError(f"{args.P}: {exc}") from None
    return _yes_no(contains_pattern(L, P))


def cmd_validate(args) -> int:
    try:
        cert = certificate_from_json(_load_json(Path(args.cert)))
    except ReservedSymbolError:
        raise
    except ParseError:
        raise
    except PtlsepError as exc:
        raise ParseError(f"{args.cert}: {exc}") from None
    I, E = parse_language(args.I), parse_language(args.E)
    problems = validation_report(cert, I, E, depth=args.depth)
    if problems:
        print("fail: " + "; ".join(problems))
        return 1
    print("pass")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ptlsep", description="Separability by piecewise testable languages.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def budget(sp):
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help=f"rounds to run (default {DEFAULT_BUDGET}; 0 = unlimited)")

    s = sub.add_parser("separate", help="decide separability of I and E")
    s.add_argument("I")
    s.add_argument("E")
    budget(s)
    s.add_argument("--emit", help="write the certificate JSON here (default stdout)")
    s.add_argument("--dot", help="write a DOT picture of the separator / pattern language")
    s.add_argument("--parallel", action="store_true", help="race the two searches in threads")
    s.add_argument("--resume", help="resume state JSON from an undecided certificate")
    s.set_defaults(func=cmd_separate)

    s = sub.add_parser("is-ptl", help="is a regular language piecewise testable?")
    s.add_argument("L")
    budget(s)
    s.add_argument("--emit")
    s.add_argument("--dot")
    s.set_defaults(func=cmd_is_ptl)

    s = sub.add_parser("diagonal", help="diagonal problem")
    s.add_argument("L")
    s.add_argument("--method", choices=["direct", "sup"], default="direct")
    s.set_defaults(func=cmd_diagonal)

    s = sub.add_parser("sup", help="simultaneous unboundedness for an order b1,...,bn")
    s.add_argument("L")
    s.add_argument("--order", required=True, help="comma-separated letters")
    s.add_argument("--method", choices=["direct", "separability"], default="direct")
    s.add_argument("--budget", type=int, default=0)
    s.set_defaults(func=cmd_sup)

    s = sub.add_parser("dclosure", help="downward closure as an NFA")
    s.add_argument("L")
    s.add_argument("--emit")
    s.add_argument("--dot")
    s.set_defaults(func=cmd_dclosure)

    s = sub.add_parser("ideals", help="ideal decomposition of a downward-closed NFA")
    s.add_argument("D")
    s.add_argument("--emit")
    s.set_defaults(func=cmd_ideals)

    s = sub.add_parser("pattern-check", help="does L contain the pattern?")
    s.add_argument("L")
    s.add_argument("P")
    s.set_defaults(func=cmd_pattern_check)

    s = sub.add_parser("validate", help="check a certificate against I and E")
    s.add_argument("cert")
    s.add_argument("I")
    s.add_argument("E")
    s.add_argument("--depth", type=int, default=3)
    s.set_defaults(func=cmd_validate)
    return p


def _fail(kind, msg) -> int:
    print(f"error: {kind}: {' '.join(str(msg).split())}", file=sys.stderr)
    return EXIT[kind]


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "budget", None) is not None and args.budget < 0:
            raise UsageError("--budget must be nonnegative")
        return args.func(args)
    except UsageError as exc:
        return _fail("usage", exc)
    except ParseError as exc:
        return _fail("parse", exc)
    except ReservedSymbolError as exc:
        return _fail("reserved-symbol", exc)
    except IllFormedSupInstance as exc:
        return _fail("ill-formed-sup", exc)
    except NotDownwardClosed as exc:
        return _fail("not-downward-closed", exc)
    except GuardError as exc:
        return _fail("guard", exc)
    except OSError as exc:
        return _fail("io", exc)
    except (PtlsepError, json.JSONDecodeError) as exc:
        return _fail("error", exc)


if __name__ == "__main__":
    sys.exit(main())
