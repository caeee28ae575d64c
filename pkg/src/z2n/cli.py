"""Command line front end.

Exit codes: 0 success, 2 unreadable input, 3 failed precondition
(NotInvertible and friends), 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import Z2nError

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_INTERNAL = 0, 2, 3, 4


class InputError(Exception):
    """Wraps any failure that happened while reading input."""

    def __init__(self, exc: Exception):
        super().__init__(str(exc))
        self.exc = exc


class InvariantFailure(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(exc) from None


def _load(path: str, *types):
    from .textio import parse

    try:
        value = parse(_read(path))
    except Z2nError as exc:
        raise InputError(exc) from None
    if types and not isinstance(value, types):
        names = " or ".join(t.__name__ for t in types)
        raise InputError(Z2nError(f"{path}: expected {names}, got {type(value).__name__}"))
    return value


def _parse_inline(func, text):
    try:
        return func(text)
    except Z2nError as exc:
        raise InputError(exc) from None


def cmd_dim(args) -> str:
    from .gmatrix import gl0_dimension
    from .shape import GradedShape

    rows = _parse_inline(GradedShape.parse, args.rows)
    cols = _parse_inline(GradedShape.parse, args.cols)
    return str(gl0_dimension(rows, cols))


def cmd_invert(args) -> str:
    from .gmatrix import GMatrix, identity, invert, mat_mul
    from .textio import format_value

    X = _load(args.file, GMatrix)
    Xi = invert(X)
    one = identity(X.algebra, X.row_shape)
    if mat_mul(X, Xi) != one or mat_mul(Xi, X) != one:
        raise InvariantFailure("computed inverse failed the two-sided check")
    return format_value(Xi)


def cmd_check_invertible(args) -> str:
    from .gmatrix import GMatrix, invertibility_criteria

    X = _load(args.file, GMatrix)
    blocks, over_lambda, whole = invertibility_criteria(X)
    if len({blocks, over_lambda, whole}) != 1:
        raise InvariantFailure("invertibility criteria disagree")
    return "\n".join(
        [
            f"diagonal-block-bodies {str(blocks).lower()}",
            f"diagonal-blocks-over-lambda {str(over_lambda).lower()}",
            f"body-matrix {str(whole).lower()}",
            f"invertible {str(blocks).lower()}",
        ]
    )


def cmd_mul(args) -> str:
    from .gmatrix import GMatrix, mat_mul
    from .grassmann import GElement, gmul
    from .textio import format_value

    a = _load(args.left, GMatrix, GElement)
    b = _load(args.right, GMatrix, GElement)
    if type(a) is not type(b):
        raise InputError(Z2nError("mul needs two matrices or two elements"))
    return format_value(mat_mul(a, b) if isinstance(a, GMatrix) else gmul(a, b))


def cmd_eval(args) -> str:
    from .points import LambdaPoint, Morphism, evaluate, evaluate_taylor
    from .textio import format_value

    phi = _load(args.morphism, Morphism)
    x = _load(args.point, LambdaPoint)
    y = evaluate(phi, x)
    if y != evaluate_taylor(phi, x):
        raise InvariantFailure("substitution and Taylor evaluation disagree")
    return format_value(y)


def cmd_compose(args) -> str:
    from .points import Morphism, compose

    psi = _load(args.outer, Morphism)
    phi = _load(args.inner, Morphism)
    return str(compose(psi, phi))


def cmd_act(args) -> str:
    from .action import canonical_action
    from .gmatrix import GMatrix
    from .points import LambdaPoint
    from .textio import format_value

    X = _load(args.matrix, GMatrix)
    x = _load(args.point, LambdaPoint)
    return format_value(canonical_action(X, x))


def _algebra_arg(text: str):
    from .grassmann import AlgebraSpec
    from .textio import parse, parse_algebra

    if Path(text).is_file():
        value = _load(text, AlgebraSpec)
        return value
    line = text if text.lstrip().startswith("algebra") else "algebra " + text
    return _parse_inline(parse_algebra, line)


def cmd_check_action(args) -> tuple[str, int]:
    from .action import canonical_action, check_action_axioms, squaring_sigma
    from .shape import GradedShape

    algebra = _algebra_arg(args.algebra)
    shape = _parse_inline(GradedShape.parse, args.shape)
    if shape.n != algebra.n:
        raise InputError(Z2nError(f"shape {shape} is not over Z_2^{algebra.n}"))
    sigma = {"canonical": canonical_action, "squaring": squaring_sigma}[args.sigma]
    report = check_action_axioms(algebra, shape, args.samples, args.seed, sigma, args.convention)
    lines = [f"samples {report.samples} seed {args.seed} convention {args.convention}"]
    lines += report.lines()
    if not report.all_ok:
        witness = Path(args.witness)
        witness.write_text(json.dumps(report.witnesses, indent=2, sort_keys=True) + "\n")
        lines.append(f"witness {witness}")
    return "\n".join(lines), EXIT_OK if report.all_ok else 1


def cmd_basis(args) -> str:
    from .linspace import format_word, sym_basis
    from .shape import GradedShape

    shape = _parse_inline(GradedShape.parse, args.shape)
    words = sym_basis(shape, args.k)
    return "\n".join(format_word(shape, w) for w in words)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="z2n", description="Z_2^n-graded commutative algebra toolkit")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("dim", help="graded dimension of gl_0(rows x cols)")
    p.add_argument("rows")
    p.add_argument("cols")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("invert", help="invert a degree-0 matrix (self-verified)")
    p.add_argument("file")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("check-invertible", help="report the three invertibility criteria")
    p.add_argument("file")
    p.set_defaults(func=cmd_check_invertible)

    p = sub.add_parser("mul", help="multiply two matrices or two elements")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("eval", help="image of a Lambda-point under a morphism")
    p.add_argument("morphism")
    p.add_argument("point")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("compose", help="composite OUTER o INNER of two morphisms")
    p.add_argument("outer")
    p.add_argument("inner")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("act", help="canonical action of a GL matrix on a Lambda-point")
    p.add_argument("matrix")
    p.add_argument("point")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("check-action", help="sample the action axioms")
    p.add_argument("--algebra", required=True, help="algebra line (e.g. 'n=2 gens 01*1 10*1 11*1 cap=3') or file")
    p.add_argument("--shape", required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--convention", choices=["right", "left"], default="right")
    p.add_argument("--sigma", choices=["canonical", "squaring"], default="canonical")
    p.add_argument("--witness", default="action-witness.json", help="where to write failure witnesses")
    p.set_defaults(func=cmd_check_action)

    p = sub.add_parser("basis", help="basis words of length K of the graded symmetric algebra")
    p.add_argument("shape")
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_basis)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except InputError as exc:
        print(f"error: {type(exc.exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvariantFailure as exc:
        print(f"error: InvariantFailure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Z2nError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    print(result)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
