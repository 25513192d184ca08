"""Command line front end.

Every verb that reads a presentation takes a file path; ``@NAME`` stands for
a bundled model (``@BPU4``, ``@BS1``, ``@P1``, ``@P1x4``).
Exit status: 0 on success, 1 when a check fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import sys
from pathlib import Path

from .algebra import DEFAULT_MAX_DEGREE, BoundError, GradedAlgebra
from .checker import verify_paper_suite
from .presentation import PresentationError, parse_poly, parse_presentation, presentation_to_text
from .spaces import MODEL_NAMES, MODEL_TEXTS, bundled_model, kunneth_product, quotient_by_ideal
from .steenrod import (
    UnknownSteenrodValue,
    adem_normalize,
    apply_sq,
    check_table_consistency,
    format_sum,
    format_word,
    milnor_q,
    parse_word,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _load(source: str):
    if source.startswith("@"):
        return bundled_model(source[1:])
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror}") from None
    try:
        return parse_presentation(text)
    except PresentationError as exc:
        raise PresentationError(f"{source}: {exc}") from None


def _algebra(args) -> GradedAlgebra:
    pres = _load(args.file)
    for w in pres.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return GradedAlgebra(pres, args.max_degree)


def _poly(alg: GradedAlgebra, text: str):
    try:
        return parse_poly(text, alg.pres)
    except PresentationError as exc:
        raise PresentationError(f"in {text!r}: {exc}") from None


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coniveau", description="Steenrod and Milnor operations on presented F2-algebras.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def with_bound(p):
        p.add_argument("--max-degree", type=_nonneg, default=DEFAULT_MAX_DEGREE, help="degree bound D (default 20)")
        return p

    p = with_bound(sub.add_parser("basis", help="basis of one degree of the quotient"))
    p.add_argument("file")
    p.add_argument("--degree", type=_nonneg, required=True)

    p = with_bound(sub.add_parser("poincare", help="dimensions in degrees 0..D"))
    p.add_argument("file")
    p.add_argument("--through", type=_nonneg, required=True)

    p = with_bound(sub.add_parser("nf", help="normal form of a polynomial"))
    p.add_argument("file")
    p.add_argument("poly")

    p = with_bound(sub.add_parser("sq", help="Steenrod square Sq^I"))
    p.add_argument("file")
    p.add_argument("i", type=_nonneg)
    p.add_argument("poly")

    p = with_bound(sub.add_parser("q", help="Milnor operation Q_I"))
    p.add_argument("file")
    p.add_argument("i", type=_nonneg)
    p.add_argument("poly")

    p = sub.add_parser("adem", help="admissible form of a word such as 'Sq1 Sq2'")
    p.add_argument("word")

    p = sub.add_parser("kunneth", help="tensor product of two presentations")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("quotient", help="add relations to a presentation")
    p.add_argument("file")
    p.add_argument("--kill", required=True, help="comma separated polynomials")
    p.add_argument("-o", "--output", required=True)

    p = with_bound(sub.add_parser("check-table", help="check the Sq table against the Adem relations"))
    p.add_argument("file")
    p.add_argument("--through", type=_nonneg, required=True)

    p = sub.add_parser("model", help="print a bundled presentation")
    p.add_argument("name", choices=MODEL_NAMES)

    p = with_bound(sub.add_parser("verify-paper", help="replay the BPU(4) coniveau computations"))
    p.add_argument("--json", action="store_true")
    p.add_argument("--model", help="use this presentation instead of the bundled BPU4")
    return parser


def _dispatch(args) -> int:
    verb = args.verb
    if verb == "basis":
        alg = _algebra(args)
        basis = alg.basis_polys(args.degree)
        print(f"degree {args.degree}: dimension {len(basis)}")
        if basis:
            for b in basis:
                print(alg.format(b))
        else:
            print("(empty)")
    elif verb == "poincare":
        alg = _algebra(args)
        print(" ".join(str(n) for n in alg.poincare_series(args.through)))
    elif verb == "nf":
        alg = _algebra(args)
        print(alg.format(alg.normal_form(_poly(alg, args.poly))))
    elif verb == "sq":
        alg = _algebra(args)
        print(alg.format(apply_sq(alg, args.i, _poly(alg, args.poly))))
    elif verb == "q":
        alg = _algebra(args)
        print(alg.format(milnor_q(alg, args.i, _poly(alg, args.poly))))
    elif verb == "adem":
        try:
            word = parse_word(args.word)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        print(format_sum(adem_normalize(word)))
    elif verb == "kunneth":
        prod = kunneth_product(_load(args.file_a), _load(args.file_b))
        for note in prod.warnings:
            print(f"note: {note}", file=sys.stderr)
        Path(args.output).write_text(presentation_to_text(prod), encoding="utf-8")
        print(f"wrote {args.output}: {prod.ngens} generators, {len(prod.relations)} relations")
    elif verb == "quotient":
        pres = _load(args.file)
        alg = GradedAlgebra(pres, DEFAULT_MAX_DEGREE)
        kill = [_poly(alg, t) for t in args.kill.split(",") if t.strip()]
        quot = quotient_by_ideal(pres, kill)
        Path(args.output).write_text(presentation_to_text(quot), encoding="utf-8")
        print(f"wrote {args.output}: {quot.ngens} generators, {len(quot.relations)} relations")
    elif verb == "check-table":
        alg = _algebra(args)
        tc = check_table_consistency(alg, args.through)
        for v in tc.violations:
            print(f"violation: {format_word(v.word)} on {v.generator}: "
                  f"{alg.format(v.direct)} != {alg.format(v.admissible)}")
        for s in tc.skipped:
            print(f"skipped: {format_word(s.word)} on {s.generator} ({s.reason})")
        print(f"{len(tc.violations)} violations, {len(tc.skipped)} skipped")
        return 0 if tc.consistent else 1
    elif verb == "model":
        sys.stdout.write(MODEL_TEXTS[args.name])
    elif verb == "verify-paper":
        pres = _load(args.model) if args.model else None
        report = verify_paper_suite(pres, args.max_degree)
        sys.stdout.write(report.to_json() if args.json else report.to_text())
        return 0 if report.overall else 1
    return 0


def run(argv: list[str]) -> tuple[int, str]:
    """Run one command; return ``(exit_status, stdout text)``.

    Diagnostics go to the real stderr.
    """
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        try:
            args = build_parser().parse_args(argv)
            status = _dispatch(args)
        except SystemExit as exc:  # --help
            status = exc.code if isinstance(exc.code, int) else 0
        except UsageError as exc:
            print(str(exc), file=sys.stderr)
            status = 2
        except (PresentationError, BoundError, UnknownSteenrodValue, KeyError) as exc:
            msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
            print(f"error: {msg}", file=sys.stderr)
            status = 2
    return status, out.getvalue()


def main(argv: list[str] | None = None) -> int:
    status, text = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
