"""A small text language for describing point constructions and the
relations they are claimed to satisfy.

A script is a sequence of newline-terminated statements:

    param eps = 0.5                    # named scalar, overridable
    point A = (0, 0)                   # literal coordinates
    point B = (1, eps * 2)             # coordinates may use params
    point M = midpoint(A, B)           # construction call
    assert collinear(A, M, B)          # relation over defined points

Coordinates and the rotation angle are arithmetic expressions over
numbers and params with the usual precedence; every other construction
argument is the label of a previously defined point.  Comments run from
`#` to the end of the line.  Angles are in degrees.

Parsing is strict and single pass: labels must be defined before use,
duplicate definitions are rejected, and arity mistakes are reported at
the offending call.  Evaluation is total: a construction that fails
numerically (say, intersecting parallel bisectors) poisons its label,
and every assertion touching a poisoned label comes back as a failed
verdict carrying the original error instead of raising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Union

from .centers import CenterKind, Orientation, equilateral_apex, \
    right_isosceles_apex, triangle_center
from .configurations import Configuration, second_intersection
from .core import (
    DEFAULT_TOL,
    GeometryError,
    Point,
    ToleranceBudget,
    angle_bisector,
    circumcircle,
    dist,
    intersect,
    line_through,
    midpoint,
    reflect_line,
    reflect_point,
    rotate,
)
from .relations import RELATION_ARITIES, RelationVerdict, evaluate_relation

__all__ = [
    "ScriptError",
    "ParseError",
    "UseBeforeDefine",
    "ArityError",
    "UnknownParam",
    "Program",
    "parse",
    "evaluate",
    "format_program",
    "FUNCTIONS",
    "RELATIONS",
]


class ScriptError(Exception):
    """Base for everything the script layer can raise."""


class ParseError(ScriptError):
    """Syntax or static-semantics failure at a 1-based source position."""

    def __init__(self, line: int, col: int, message: str,
                 expected: tuple[str, ...]) -> None:
        if not expected:
            raise ValueError("a ParseError must name what it expected")
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.message = message
        self.expected = expected


class UseBeforeDefine(ParseError):
    """A label or param referenced before its defining statement."""


class ArityError(ParseError):
    """A construction or relation applied to the wrong number of arguments."""


class UnknownParam(ScriptError):
    """An override names a param the program never declared."""


# ---------------------------------------------------------------------------
# vocabulary

# construction name -> (number of point arguments, takes a trailing angle)
FUNCTIONS: dict[str, tuple[int, bool]] = {
    "midpoint": (2, False),
    "reflect_line": (3, False),
    "reflect_point": (2, False),
    "rotate": (2, True),
    "centroid": (3, False),
    "circumcenter": (3, False),
    "incenter": (3, False),
    "orthocenter": (3, False),
    "ninepoint": (3, False),
    "fermat1": (3, False),
    "fermat2": (3, False),
    "eq_apex": (3, False),
    "ri_apex": (3, False),
    "second_intersection": (5, False),
    "bisector_meet": (6, False),
}

RELATIONS: tuple[str, ...] = (
    "collinear", "concyclic", "concurrent", "perpendicular",
    "equal_length", "on_conic", "coaxial", "perspective",
)

_CENTER_FOR = {
    "centroid": CenterKind.X2,
    "circumcenter": CenterKind.X3,
    "incenter": CenterKind.X1,
    "orthocenter": CenterKind.X4,
    "ninepoint": CenterKind.X5,
    "fermat1": CenterKind.X13,
    "fermat2": CenterKind.X14,
}


def _arity_phrase(kind: str) -> str:
    lo, hi, step = RELATION_ARITIES[kind]
    if hi == lo:
        return f"exactly {lo} point labels"
    grouped = "" if step == 1 else f" in groups of {step}"
    return f"{lo} or more point labels{grouped}"


# ---------------------------------------------------------------------------
# syntax tree

@dataclass(frozen=True)
class NumberLit:
    value: float


@dataclass(frozen=True)
class ParamRef:
    name: str


@dataclass(frozen=True)
class UnaryNeg:
    operand: "Scalar"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Scalar"
    right: "Scalar"


Scalar = Union[NumberLit, ParamRef, UnaryNeg, BinOp]


@dataclass(frozen=True)
class CoordPair:
    x: Scalar
    y: Scalar


@dataclass(frozen=True)
class Construct:
    func: str
    points: tuple[str, ...]
    angle: Scalar | None = None


PointExpr = Union[CoordPair, Construct]


@dataclass(frozen=True)
class Define:
    label: str
    expr: PointExpr
    span: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class ParamDecl:
    name: str
    default: float
    span: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class AssertStmt:
    kind: str
    labels: tuple[str, ...]
    span: tuple[int, int] = field(default=(0, 0), compare=False)


Statement = Union[Define, ParamDecl, AssertStmt]


@dataclass(frozen=True)
class Program:
    statements: tuple[Statement, ...]

    def params(self) -> dict[str, float]:
        return {s.name: s.default for s in self.statements
                if isinstance(s, ParamDecl)}

    def asserts(self) -> tuple[AssertStmt, ...]:
        return tuple(s for s in self.statements if isinstance(s, AssertStmt))


# ---------------------------------------------------------------------------
# lexer

@dataclass(frozen=True)
class _Token:
    kind: str  # ident | number | punct | newline | eof
    text: str
    line: int
    col: int


_PUNCT = "(),=+-*/"


def _lex(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    lines = source.split("\n")
    for lineno, raw in enumerate(lines, start=1):
        i = 0
        n = len(raw)
        while i < n:
            ch = raw[i]
            if ch in " \t\r":
                i += 1
                continue
            if ch == "#":
                break
            col = i + 1
            if ch.isalpha() or ch == "_":
                j = i + 1
                while j < n and (raw[j].isalnum() or raw[j] in "_'"):
                    j += 1
                tokens.append(_Token("ident", raw[i:j], lineno, col))
                i = j
                continue
            if ch.isdigit():
                j = i + 1
                while j < n and raw[j].isdigit():
                    j += 1
                if j < n and raw[j] == ".":
                    j += 1
                    while j < n and raw[j].isdigit():
                        j += 1
                if j < n and raw[j] in "eE":
                    k = j + 1
                    if k < n and raw[k] in "+-":
                        k += 1
                    if k < n and raw[k].isdigit():
                        j = k + 1
                        while j < n and raw[j].isdigit():
                            j += 1
                tokens.append(_Token("number", raw[i:j], lineno, col))
                i = j
                continue
            if ch in _PUNCT:
                tokens.append(_Token("punct", ch, lineno, col))
                i += 1
                continue
            raise ParseError(lineno, col, f"unexpected character {ch!r}",
                             expected=("a statement",))
        tokens.append(_Token("newline", "", lineno, len(raw) + 1))
    tokens.append(_Token("eof", "", len(lines), len(lines[-1]) + 1))
    return tokens


# ---------------------------------------------------------------------------
# parser

class _Parser:
    """Recursive descent over the token list.

    Error positions follow one convention throughout: a missing separator
    or terminator is reported at the last consumed token (the place the
    missing piece should follow), while an unexpected or unknown name is
    reported at the offending token itself.
    """

    def __init__(self, tokens: list[_Token]) -> None:
        self.tokens = tokens
        self.i = 0
        self.point_labels: set[str] = set()
        self.param_names: set[str] = set()

    @property
    def cur(self) -> _Token:
        return self.tokens[self.i]

    @property
    def prev(self) -> _Token:
        return self.tokens[max(self.i - 1, 0)]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def expect(self, text: str, *alternatives: str) -> _Token:
        if self.cur.kind == "punct" and self.cur.text == text:
            return self.advance()
        options = (text,) + alternatives
        shown = " or ".join(f"'{t}'" for t in options)
        raise ParseError(self.prev.line, self.prev.col,
                         f"expected {shown}", expected=options)

    def expect_ident(self, what: str) -> _Token:
        if self.cur.kind == "ident":
            return self.advance()
        tok = self.cur
        raise ParseError(tok.line, tok.col,
                         f"expected {what}, found {tok.text or tok.kind!r}",
                         expected=(what,))

    # ---- statements ----

    def program(self) -> Program:
        statements: list[Statement] = []
        while True:
            while self.cur.kind == "newline":
                self.advance()
            if self.cur.kind == "eof":
                break
            statements.append(self.statement())
            if self.cur.kind not in ("newline", "eof"):
                raise ParseError(self.prev.line, self.prev.col,
                                 "expected end of statement",
                                 expected=("newline",))
        if not statements:
            tok = self.cur
            raise ParseError(tok.line, tok.col, "empty program",
                             expected=("point", "param", "assert"))
        return Program(tuple(statements))

    def statement(self) -> Statement:
        tok = self.cur
        if tok.kind != "ident" or tok.text not in ("point", "param", "assert"):
            raise ParseError(tok.line, tok.col,
                             f"expected a statement, found {tok.text!r}",
                             expected=("point", "param", "assert"))
        self.advance()
        if tok.text == "point":
            return self.point_stmt((tok.line, tok.col))
        if tok.text == "param":
            return self.param_stmt((tok.line, tok.col))
        return self.assert_stmt((tok.line, tok.col))

    def _fresh(self, tok: _Token) -> str:
        if tok.text in self.point_labels or tok.text in self.param_names:
            raise ParseError(tok.line, tok.col,
                             f"duplicate definition of {tok.text!r}",
                             expected=("a fresh name",))
        return tok.text

    def point_stmt(self, span: tuple[int, int]) -> Define:
        label = self._fresh(self.expect_ident("a point label"))
        self.expect("=")
        expr = self.point_expr()
        self.point_labels.add(label)
        return Define(label, expr, span)

    def param_stmt(self, span: tuple[int, int]) -> ParamDecl:
        name = self._fresh(self.expect_ident("a param name"))
        self.expect("=")
        negate = False
        if self.cur.kind == "punct" and self.cur.text == "-":
            negate = True
            self.advance()
        if self.cur.kind != "number":
            raise ParseError(self.prev.line, self.prev.col,
                             "expected a number", expected=("a number",))
        value = float(self.advance().text)
        self.param_names.add(name)
        return ParamDecl(name, -value if negate else value, span)

    def assert_stmt(self, span: tuple[int, int]) -> AssertStmt:
        tok = self.expect_ident("a relation name")
        if tok.text not in RELATIONS:
            raise ParseError(tok.line, tok.col,
                             f"unknown relation {tok.text!r}",
                             expected=RELATIONS)
        self.expect("(")
        # collect label tokens first: a wrong argument count is a shape
        # error and should win over unresolved names inside the list
        arg_toks = [self.expect_ident("a point label")]
        while self.cur.kind == "punct" and self.cur.text == ",":
            self.advance()
            arg_toks.append(self.expect_ident("a point label"))
        self.expect(")", ",")
        lo, hi, step = RELATION_ARITIES[tok.text]
        n = len(arg_toks)
        if n < lo or (hi is not None and n > hi) or n % step:
            raise ArityError(tok.line, tok.col,
                             f"{tok.text} takes {_arity_phrase(tok.text)}, "
                             f"got {n}",
                             expected=(_arity_phrase(tok.text),))
        labels = [self.resolve_point(t) for t in arg_toks]
        return AssertStmt(tok.text, tuple(labels), span)

    def point_ref(self) -> str:
        return self.resolve_point(self.expect_ident("a point label"))

    def resolve_point(self, tok: _Token) -> str:
        if tok.text in self.point_labels:
            return tok.text
        if tok.text in self.param_names:
            raise ParseError(tok.line, tok.col,
                             f"{tok.text!r} is a param, not a point",
                             expected=("a point label",))
        raise UseBeforeDefine(tok.line, tok.col,
                              f"point {tok.text!r} is not defined yet",
                              expected=("a previously defined point",))

    # ---- expressions ----

    def point_expr(self) -> PointExpr:
        tok = self.cur
        if tok.kind == "punct" and tok.text == "(":
            self.advance()
            x = self.scalar()
            self.expect(",")
            y = self.scalar()
            self.expect(")")
            return CoordPair(x, y)
        if tok.kind == "ident":
            if tok.text in FUNCTIONS:
                return self.construct()
            raise ParseError(tok.line, tok.col,
                             f"unknown construction {tok.text!r}",
                             expected=tuple(sorted(FUNCTIONS)))
        raise ParseError(tok.line, tok.col,
                         "expected coordinates or a construction call",
                         expected=("(", "a construction name"))

    def construct(self) -> Construct:
        tok = self.advance()
        n_points, takes_angle = FUNCTIONS[tok.text]
        total = n_points + (1 if takes_angle else 0)
        self.expect("(")
        args: list[str] = []
        angle: Scalar | None = None
        got = 0
        while True:
            if got < n_points:
                args.append(self.point_ref())
            elif takes_angle and got == n_points:
                angle = self.scalar()
            elif self.cur.kind == "ident":
                self.advance()  # surplus argument; count it for the report
            else:
                self.scalar()
            got += 1
            if self.cur.kind == "punct" and self.cur.text == ",":
                self.advance()
                continue
            break
        self.expect(")")
        if got != total:
            wants = (f"{n_points} point labels and an angle" if takes_angle
                     else f"{n_points} point labels")
            raise ArityError(tok.line, tok.col,
                             f"{tok.text} takes {wants}, got {got}",
                             expected=(wants,))
        return Construct(tok.text, tuple(args), angle)

    def scalar(self) -> Scalar:
        node = self.term()
        while self.cur.kind == "punct" and self.cur.text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Scalar:
        node = self.factor()
        while self.cur.kind == "punct" and self.cur.text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Scalar:
        tok = self.cur
        if tok.kind == "number":
            self.advance()
            return NumberLit(float(tok.text))
        if tok.kind == "ident":
            self.advance()
            if tok.text in self.param_names:
                return ParamRef(tok.text)
            if tok.text in self.point_labels:
                raise ParseError(tok.line, tok.col,
                                 f"{tok.text!r} is a point, not a number",
                                 expected=("a param name", "a number"))
            raise UseBeforeDefine(tok.line, tok.col,
                                  f"param {tok.text!r} is not declared yet",
                                  expected=("a declared param",))
        if tok.kind == "punct" and tok.text == "(":
            self.advance()
            node = self.scalar()
            self.expect(")")
            return node
        if tok.kind == "punct" and tok.text == "-":
            self.advance()
            return UnaryNeg(self.factor())
        raise ParseError(tok.line, tok.col, "expected a numeric expression",
                         expected=("a number", "a param name", "(", "-"))


def parse(source: str) -> Program:
    """Parse script text into a Program, or raise ParseError on the first
    failure (no recovery)."""
    return _Parser(_lex(source)).program()


# ---------------------------------------------------------------------------
# pretty printer

def _fmt_scalar(node: Scalar) -> str:
    if isinstance(node, NumberLit):
        return repr(node.value)
    if isinstance(node, ParamRef):
        return node.name
    if isinstance(node, UnaryNeg):
        inner = _fmt_scalar(node.operand)
        return f"-{inner}"
    return f"({_fmt_scalar(node.left)} {node.op} {_fmt_scalar(node.right)})"


def _fmt_point_expr(expr: PointExpr) -> str:
    if isinstance(expr, CoordPair):
        return f"({_fmt_scalar(expr.x)}, {_fmt_scalar(expr.y)})"
    args = list(expr.points)
    if expr.angle is not None:
        args.append(_fmt_scalar(expr.angle))
    return f"{expr.func}({', '.join(args)})"


def format_program(program: Program) -> str:
    """Canonical text whose parse is structurally identical to `program`.

    Scalar operations are emitted fully parenthesized, so precedence never
    reshapes the tree on the way back in.
    """
    out = []
    for stmt in program.statements:
        if isinstance(stmt, ParamDecl):
            out.append(f"param {stmt.name} = {stmt.default!r}")
        elif isinstance(stmt, Define):
            out.append(f"point {stmt.label} = {_fmt_point_expr(stmt.expr)}")
        else:
            out.append(f"assert {stmt.kind}({', '.join(stmt.labels)})")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# evaluator

class _PoisonedLabel(Exception):
    """Internal: a construction argument failed earlier."""


def _eval_scalar(node: Scalar, params: dict[str, float]) -> float:
    if isinstance(node, NumberLit):
        return node.value
    if isinstance(node, ParamRef):
        return params[node.name]
    if isinstance(node, UnaryNeg):
        return -_eval_scalar(node.operand, params)
    left = _eval_scalar(node.left, params)
    right = _eval_scalar(node.right, params)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    return left / right


def _eval_construct(expr: Construct, pts: list[Point],
                    angle: float | None, tol: ToleranceBudget) -> Point:
    name = expr.func
    if name == "midpoint":
        return midpoint(pts[0], pts[1])
    if name == "reflect_line":
        return reflect_line(pts[0], line_through(pts[1], pts[2], tol))
    if name == "reflect_point":
        return reflect_point(pts[0], pts[1])
    if name == "rotate":
        assert angle is not None
        return rotate(pts[0], pts[1], math.radians(angle))
    if name in _CENTER_FOR:
        return triangle_center(_CENTER_FOR[name], pts[0], pts[1], pts[2], tol)
    if name == "eq_apex":
        return equilateral_apex(pts[0], pts[1], Orientation.TOWARD_REFERENCE,
                                pts[2], tol)
    if name == "ri_apex":
        return right_isosceles_apex(pts[0], pts[1],
                                    Orientation.TOWARD_REFERENCE, pts[2], tol)
    if name == "second_intersection":
        circle = circumcircle(pts[2], pts[3], pts[4], tol)
        return second_intersection(pts[0], pts[1], circle, tol)
    if name == "bisector_meet":
        b1 = angle_bisector(pts[1], pts[0], pts[2], tol)
        b2 = angle_bisector(pts[4], pts[3], pts[5], tol)
        return intersect(b1, b2, tol)[0]
    raise ValueError(f"unhandled construction {name!r}")


def evaluate(program: Program, overrides: dict[str, float] | None = None,
             tol: ToleranceBudget = DEFAULT_TOL,
             ) -> tuple[Configuration, list[RelationVerdict]]:
    """Run the program: build every point, then judge every assertion.

    Overrides replace declared param defaults.  Failed constructions do
    not raise; they poison their label, and each assertion over a poisoned
    label yields a failed verdict carrying the underlying error.  Residuals
    are normalized by the diameter of all defined points, matching how the
    deformation engine judges claims against whole configurations.
    """
    params = program.params()
    for name, value in (overrides or {}).items():
        if name not in params:
            raise UnknownParam(f"param {name!r} is not declared "
                               f"(have: {', '.join(sorted(params)) or 'none'})")
        params[name] = float(value)

    points: dict[str, Point] = {}
    poisoned: dict[str, str] = {}
    for stmt in program.statements:
        if not isinstance(stmt, Define):
            continue
        try:
            if isinstance(stmt.expr, CoordPair):
                points[stmt.label] = Point(_eval_scalar(stmt.expr.x, params),
                                           _eval_scalar(stmt.expr.y, params))
            else:
                args = []
                for label in stmt.expr.points:
                    if label in poisoned:
                        raise _PoisonedLabel(poisoned[label])
                    args.append(points[label])
                angle = (None if stmt.expr.angle is None
                         else _eval_scalar(stmt.expr.angle, params))
                points[stmt.label] = _eval_construct(stmt.expr, args, angle, tol)
        except _PoisonedLabel as exc:
            poisoned[stmt.label] = str(exc)
        except (GeometryError, ArithmeticError) as exc:
            poisoned[stmt.label] = f"{stmt.label}: {exc}"

    scale = None
    if len(points) >= 2:
        pts = list(points.values())
        scale = max(dist(p, q) for i, p in enumerate(pts) for q in pts[i + 1:])

    verdicts: list[RelationVerdict] = []
    for stmt in program.asserts():
        bad = next((lb for lb in stmt.labels if lb in poisoned), None)
        if bad is not None:
            verdicts.append(RelationVerdict.failed(
                stmt.kind, flags=("evaluation_error",), error=poisoned[bad]))
            continue
        try:
            verdicts.append(evaluate_relation(
                stmt.kind, [points[lb] for lb in stmt.labels], tol,
                scale=scale))
        except (GeometryError, ArithmeticError) as exc:
            verdicts.append(RelationVerdict.failed(
                stmt.kind, flags=("evaluation_error",), error=str(exc)))

    config = Configuration(dict(points), "script", dict(params), ())
    return config, verdicts
