"""Canonical printing and parsing of algebras, elements, matrices, points,
morphisms and block-diagonal linear maps.

Grammar (whitespace-insensitive, ``#`` starts a comment)::

    document  = [algebra] body
    algebra   = "algebra" "n=" INT "gens" {BITS "*" INT} "cap=" INT
    body      = expr                                 (* element; needs algebra *)
              | "matrix" "deg=" BITS "rows=" SHAPE "cols=" SHAPE {row}
              | "point" "shape=" SHAPE {expr}        (* one component per line *)
              | "morphism" "src=" SHAPE "tgt=" SHAPE "cap=" INT {coord "<-" expr}
              | "linmap" "src=" SHAPE "tgt=" SHAPE {"block" BITS ":" {rational}}
    row       = expr {";" expr}
    SHAPE     = INT "|" INT {"," INT}
    expr      = ["+" | "-"] term {("+" | "-") term}
    term      = factor {["*"] factor}                (* juxtaposition multiplies *)
    factor    = atom ["^" INT]
    atom      = rational | generator | "(" expr ")"
    rational  = INT ["/" INT]
    generator = "x" INT                              (* degree-0 base coordinate *)
              | BITS INT                             (* e.g. 011: first generator of degree 01 *)

A run of digits is a generator when it names a generator of the algebra in
scope, and a number otherwise (a run with a leading zero must name a
generator; after ``^`` it is always a number); the printer writes integer coefficients that
would collide with a generator name as ``k/1``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .degree import Degree, enumerate_degrees
from .errors import DegreeViolation, GrammarError, ParityViolation, ParseError, Z2nError
from .grassmann import AlgebraSpec, GElement, gmul
from .shape import GradedShape

# printing -------------------------------------------------------------------


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _format_coefficient(q: Fraction, algebra: AlgebraSpec) -> str:
    text = _format_rational(q)
    if q.denominator == 1 and text in algebra._by_name:
        text += "/1"
    return text


def format_monomial(mono, algebra: AlgebraSpec, sep: str = " ") -> str:
    parts = []
    for g, e in enumerate(mono):
        if e == 1:
            parts.append(algebra.gen_names[g])
        elif e > 1:
            parts.append(f"{algebra.gen_names[g]}^{e}")
    return sep.join(parts)


def format_element(a: GElement) -> str:
    alg = a.algebra
    if not a.terms:
        return "0"
    out = []
    for k, (mono, coef) in enumerate(a.sorted_terms()):
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        mtext = format_monomial(mono, alg)
        if not mtext:
            text = _format_coefficient(mag, alg)
        elif mag == 1:
            text = mtext
        else:
            text = f"{_format_coefficient(mag, alg)} {mtext}"
        if k == 0:
            out.append(("-" if sign == "-" else "") + text)
        else:
            out.append(f" {sign} {text}")
    return "".join(out)


def format_algebra(algebra: AlgebraSpec) -> str:
    degs = enumerate_degrees(algebra.n)
    gens = " ".join(f"{degs[j]}*{m}" for j, m in sorted(algebra.gen_counts.items()))
    gens = f" {gens}" if gens else ""
    return f"algebra n={algebra.n} gens{gens} cap={algebra.cap}"


def format_matrix(X, with_algebra: bool = False) -> str:
    lines = [format_algebra(X.algebra)] if with_algebra else []
    lines.append(f"matrix deg={X.degree} rows={X.row_shape} cols={X.col_shape}")
    for row in X.rows:
        lines.append("; ".join(format_element(v) for v in row))
    return "\n".join(lines)


def format_point(x, with_algebra: bool = False) -> str:
    lines = [format_algebra(x.algebra)] if with_algebra else []
    lines.append(f"point shape={x.shape}")
    lines.extend(format_element(v) for v in x.components)
    return "\n".join(lines)


def format_morphism(phi) -> str:
    target = AlgebraSpec.coordinate_ring(phi.target_shape, phi.cap)
    lines = [f"morphism src={phi.source_shape} tgt={phi.target_shape} cap={phi.cap}"]
    for name, pb in zip(target.gen_names, phi.pullbacks):
        lines.append(f"{name} <- {format_element(pb)}")
    return "\n".join(lines)


def format_linmap(L) -> str:
    degs = enumerate_degrees(L.source_shape.n)
    lines = [f"linmap src={L.source_shape} tgt={L.target_shape}"]
    for i, blk in enumerate(L.blocks):
        lines.append(f"block {degs[i]}:")
        if L.source_shape[i]:
            for row in blk:
                lines.append(" ".join(_format_rational(v) for v in row))
    return "\n".join(lines)


def format_value(value) -> str:
    from .linspace import BlockDiagMap
    from .gmatrix import GMatrix
    from .points import LambdaPoint, Morphism

    if isinstance(value, AlgebraSpec):
        return format_algebra(value)
    if isinstance(value, GElement):
        return format_algebra(value.algebra) + "\n" + format_element(value)
    if isinstance(value, GMatrix):
        return format_matrix(value, with_algebra=True)
    if isinstance(value, LambdaPoint):
        return format_point(value, with_algebra=True)
    if isinstance(value, Morphism):
        return format_morphism(value)
    if isinstance(value, BlockDiagMap):
        return format_linmap(value)
    raise TypeError(f"no text form for {type(value).__name__}")


# element expressions ----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+/\d+)|(x\d+)|(\d+)|([-+*^();]))")


class _ExprParser:
    def __init__(self, text: str, algebra: AlgebraSpec, line: int | None, col0: int):
        self.text = text
        self.alg = algebra
        self.line = line
        self.col0 = col0
        self.tokens = self._tokenize()
        self.pos = 0

    def _error(self, msg, col=None, cls=GrammarError):
        column = None if col is None else col + self.col0 + 1
        if issubclass(cls, ParseError):
            return cls(msg, self.line, column)
        return cls(f"line {self.line}, column {column}: {msg}")

    def _tokenize(self):
        out = []
        i = 0
        text = self.text
        while i < len(text):
            if text[i].isspace():
                i += 1
                continue
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                raise self._error(f"unexpected character {text[i]!r}", i)
            start = m.start(m.lastindex)
            rat, xname, digits, punct = m.groups()
            if rat is not None:
                out.append(("num", Fraction(rat), start))
            elif xname is not None:
                out.append(("gen", xname, start))
            elif digits is not None:
                if digits in self.alg._by_name:
                    out.append(("gen", digits, start))
                elif len(digits) > 1 and digits[0] == "0":
                    raise self._error(f"unknown generator {digits!r}", start)
                else:
                    out.append(("num", Fraction(int(digits)), start))
            else:
                out.append((punct, punct, start))
            i = m.end()
        return out

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> GElement:
        if not self.tokens:
            raise self._error("empty expression", 0)
        value = self.expr()
        kind, _, col = self.peek()
        if kind is not None:
            raise self._error(f"unexpected token {self.text[col:col + 8]!r}", col)
        return value

    def expr(self) -> GElement:
        sign = 1
        kind, _, _ = self.peek()
        if kind in ("+", "-"):
            self.take()
            sign = -1 if kind == "-" else 1
        value = self.term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            value = value + t if op == "+" else value - t
        return value

    def term(self) -> GElement:
        value = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                value = gmul(value, self.factor())
            elif kind in ("num", "gen", "("):
                value = gmul(value, self.factor())
            else:
                return value

    def factor(self) -> GElement:
        kind, val, col = self.peek()
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            ekind, eval_, ecol = self.take()
            if ekind == "gen" and eval_.isdigit():
                ekind, eval_ = "num", Fraction(int(eval_))
            if ekind != "num" or eval_.denominator != 1:
                raise self._error("exponent must be a nonnegative integer", ecol)
            k = int(eval_)
            if kind == "gen" and k > 1:
                g = self.alg.generator_index(val)
                if self.alg.odd[g]:
                    raise self._error(
                        f"generator {val} has odd self-pairing and cannot be raised to {k}",
                        col,
                        ParityViolation,
                    )
            return base**k
        return base

    def atom(self) -> GElement:
        kind, val, col = self.take()
        if kind == "num":
            return self.alg.scalar(val)
        if kind == "gen":
            if val not in self.alg._by_name:
                raise self._error(f"unknown generator {val!r}", col)
            return self.alg.generator(val)
        if kind == "(":
            inner = self.expr()
            if self.take()[0] != ")":
                raise self._error("missing ')'", col)
            return inner
        if kind is None:
            raise self._error("expression ended early", col)
        raise self._error(f"unexpected {val!r}", col)


def parse_element(text: str, algebra: AlgebraSpec, line: int | None = None, col0: int = 0) -> GElement:
    return _ExprParser(text, algebra, line, col0).parse()


# documents -------------------------------------------------------------------


def _fields(line: str, lineno: int, keys: list[str]) -> dict:
    """Parse ``key=value`` fields after the header word."""
    out = {}
    for tok in line.split()[1:]:
        if "=" not in tok:
            raise GrammarError(f"expected key=value, got {tok!r}", lineno)
        k, v = tok.split("=", 1)
        if k not in keys:
            raise GrammarError(f"unknown field {k!r}", lineno)
        out[k] = v
    missing = [k for k in keys if k not in out]
    if missing:
        raise GrammarError(f"missing field(s) {', '.join(missing)}", lineno)
    return out


def _shape(text: str, lineno: int) -> GradedShape:
    try:
        return GradedShape.parse(text)
    except Z2nError as exc:
        raise GrammarError(str(exc), lineno) from None


def _int(text: str, lineno: int) -> int:
    if not text.isdigit():
        raise GrammarError(f"expected a nonnegative integer, got {text!r}", lineno)
    return int(text)


def parse_algebra(line: str, lineno: int | None = None) -> AlgebraSpec:
    words = line.split()
    if not words or words[0] != "algebra":
        raise GrammarError("algebra line must start with 'algebra'", lineno)
    n = cap = None
    counts: dict[int, int] = {}
    in_gens = False
    for w in words[1:]:
        if w.startswith("n="):
            n = _int(w[2:], lineno)
            in_gens = False
        elif w.startswith("cap="):
            cap = _int(w[4:], lineno)
            in_gens = False
        elif w == "gens":
            in_gens = True
        elif in_gens and "*" in w:
            bits, m = w.split("*", 1)
            try:
                deg = Degree.parse(bits)
            except Z2nError as exc:
                raise GrammarError(str(exc), lineno) from None
            if deg.is_zero():
                raise GrammarError("the zero degree carries no generators", lineno)
            counts[deg.index] = counts.get(deg.index, 0) + _int(m, lineno)
            if n is not None and len(bits) != n:
                raise GrammarError(f"degree {bits} does not have n={n} bits", lineno)
        else:
            raise GrammarError(f"unexpected {w!r} in algebra line", lineno)
    if n is None or cap is None:
        raise GrammarError("algebra line needs n= and cap=", lineno)
    try:
        return AlgebraSpec(n, counts, cap)
    except Z2nError as exc:
        raise GrammarError(str(exc), lineno) from None


def _strip(text: str) -> list[tuple[int, str]]:
    out = []
    for k, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((k, line))
    return out


def _rewrap(exc: Z2nError, lineno: int):
    if isinstance(exc, ParseError):
        return exc
    return type(exc)(f"line {lineno}: {exc}")


def parse(text: str, algebra: AlgebraSpec | None = None):
    """Read one value from text; returns an AlgebraSpec, GElement, GMatrix,
    LambdaPoint, Morphism or BlockDiagMap."""
    lines = _strip(text)
    if not lines:
        raise GrammarError("empty input")
    if lines[0][1].split()[0] == "algebra":
        algebra = parse_algebra(lines[0][1], lines[0][0])
        lines = lines[1:]
        if not lines:
            return algebra
    lineno, head = lines[0]
    word = head.split()[0]
    if word == "morphism":
        return _parse_morphism(lines)
    if word == "linmap":
        return _parse_linmap(lines)
    if algebra is None:
        raise GrammarError("an 'algebra' line must come first", lineno)
    if word == "matrix":
        return _parse_matrix(lines, algebra)
    if word == "point":
        return _parse_point(lines, algebra)
    if len(lines) != 1:
        raise GrammarError("an element is a single expression line", lines[1][0])
    return parse_element(head, algebra, lineno)


def _parse_matrix(lines, algebra):
    from .gmatrix import GMatrix

    lineno, head = lines[0]
    f = _fields(head, lineno, ["deg", "rows", "cols"])
    try:
        deg = Degree.parse(f["deg"])
    except Z2nError as exc:
        raise GrammarError(str(exc), lineno) from None
    rows_shape, cols_shape = _shape(f["rows"], lineno), _shape(f["cols"], lineno)
    body = lines[1:]
    if len(body) != rows_shape.total:
        raise GrammarError(f"expected {rows_shape.total} matrix rows, got {len(body)}", lineno)
    rows = []
    for ln, text in body:
        cells = text.split(";")
        if len(cells) != cols_shape.total:
            raise GrammarError(f"expected {cols_shape.total} entries, got {len(cells)}", ln)
        row, col = [], 0
        for cell in cells:
            row.append(parse_element(cell, algebra, ln, col))
            col += len(cell) + 1
        rows.append(row)
    try:
        return GMatrix(algebra, rows_shape, cols_shape, deg, rows)
    except DegreeViolation as exc:
        raise DegreeViolation(f"line {lineno + 1}+: {exc}") from None
    except Z2nError as exc:
        raise _rewrap(exc, lineno) from None


def _parse_point(lines, algebra):
    from .points import make_point

    lineno, head = lines[0]
    shape = _shape(_fields(head, lineno, ["shape"])["shape"], lineno)
    comps = [parse_element(text, algebra, ln) for ln, text in lines[1:]]
    if len(comps) != shape.total:
        raise GrammarError(f"expected {shape.total} components, got {len(comps)}", lineno)
    try:
        return make_point(algebra, shape, comps)
    except Z2nError as exc:
        raise _rewrap(exc, lineno) from None


def _parse_morphism(lines):
    from .points import Morphism

    lineno, head = lines[0]
    f = _fields(head, lineno, ["src", "tgt", "cap"])
    src, tgt, cap = _shape(f["src"], lineno), _shape(f["tgt"], lineno), _int(f["cap"], lineno)
    if src.n != tgt.n:
        raise GrammarError("source and target shapes have different n", lineno)
    source_ring = AlgebraSpec.coordinate_ring(src, cap)
    target_ring = AlgebraSpec.coordinate_ring(tgt, cap)
    pullbacks: dict[int, GElement] = {}
    for ln, text in lines[1:]:
        if "<-" not in text:
            raise GrammarError("expected '<coord> <- <expression>'", ln)
        name, expr = text.split("<-", 1)
        name = name.strip()
        if name not in target_ring._by_name:
            raise GrammarError(f"unknown target coordinate {name!r}", ln)
        g = target_ring.generator_index(name)
        if g in pullbacks:
            raise GrammarError(f"coordinate {name} given twice", ln)
        pullbacks[g] = parse_element(expr, source_ring, ln, text.index("<-") + 2)
    missing = [target_ring.gen_names[g] for g in range(target_ring.ngens) if g not in pullbacks]
    if missing:
        raise GrammarError(f"missing pullback(s) for {', '.join(missing)}", lineno)
    try:
        return Morphism(src, tgt, cap, [pullbacks[g] for g in range(target_ring.ngens)])
    except Z2nError as exc:
        raise _rewrap(exc, lineno) from None


def _parse_linmap(lines):
    from .linspace import BlockDiagMap

    lineno, head = lines[0]
    f = _fields(head, lineno, ["src", "tgt"])
    src, tgt = _shape(f["src"], lineno), _shape(f["tgt"], lineno)
    if src.n != tgt.n:
        raise GrammarError("source and target shapes have different n", lineno)
    degs = enumerate_degrees(src.n)
    blocks: dict[int, list] = {}
    pos = 1
    while pos < len(lines):
        ln, text = lines[pos]
        m = re.fullmatch(r"block\s+([01]+)\s*:", text)
        if not m:
            raise GrammarError(f"expected 'block <bits>:', got {text!r}", ln)
        try:
            i = Degree.parse(m.group(1)).index
        except Z2nError as exc:
            raise GrammarError(str(exc), ln) from None
        if len(m.group(1)) != src.n or i in blocks:
            raise GrammarError(f"bad or repeated block {m.group(1)}", ln)
        pos += 1
        rows = []
        want = tgt[i] if src[i] else 0
        for _ in range(want):
            if pos >= len(lines):
                raise GrammarError(f"block {degs[i]} needs {tgt[i]} rows", ln)
            rln, rtext = lines[pos]
            try:
                row = [Fraction(v) for v in rtext.split()]
            except ValueError:
                raise GrammarError(f"bad rational in {rtext!r}", rln) from None
            if len(row) != src[i]:
                raise GrammarError(f"block {degs[i]} rows need {src[i]} entries", rln)
            rows.append(row)
            pos += 1
        blocks[i] = rows
    full = []
    for i in range(len(src)):
        if not src[i]:
            full.append([[] for _ in range(tgt[i])])
        elif i in blocks:
            full.append(blocks[i])
        elif not tgt[i]:
            full.append([])
        else:
            raise GrammarError(f"missing block {degs[i]}", lineno)
    return BlockDiagMap(src, tgt, full)
