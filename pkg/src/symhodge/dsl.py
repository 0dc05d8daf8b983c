"""Parser and printer for the ``.lie`` description format.

A document is line-oriented; ``#`` starts a comment.  Example::

    dim 4
    names a b g t
    d t = a^b
    omega = a^g + b^t

``dim <even positive integer>`` must come first.  An optional ``names`` line
renames the generators (default e1..e2n).  Each ``d <id> = <2-form>`` line
gives the differential of one generator (omitted generators are closed), and
exactly one ``omega = <2-form>`` line is required.  A 2-form expression is a
±-separated sum of ``[rational] id ^ id`` terms with rationals written as
``p`` or ``p/q``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exterior import Form, format_form, wedge
from .liealg import LieAlgebra


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass
class AlgebraDocument:
    """A parsed Lie algebra + symplectic form description."""

    dim: int
    names: list[str]
    mc_equations: list[tuple[str, Form]]    # (generator name, d of that generator)
    omega: Form

    def algebra(self) -> LieAlgebra:
        by_name = dict(self.mc_equations)
        d_gens = [by_name.get(name, Form(self.dim, 2)) for name in self.names]
        return LieAlgebra(self.dim, d_gens, self.names)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraDocument)
            and (self.dim, self.names, self.omega) == (other.dim, other.names, other.omega)
            and dict(self.mc_equations) == dict(other.mc_equations)
        )


_TOKEN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|\d+/\d+|\d+|[\^=+\-]")


def _tokenize_line(text: str, line_no: int) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line_no, pos + 1)
        out.append((m.group(0), pos + 1))
        pos = m.end()
    return out


class _TwoFormParser:
    def __init__(self, tokens: list[tuple[str, int]], line_no: int,
                 dim: int, name_index: dict[str, int]):
        self.tokens = tokens
        self.line = line_no
        self.dim = dim
        self.name_index = name_index
        self.pos = 0

    def _peek(self) -> Optional[tuple[str, int]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> tuple[str, int]:
        if self.pos >= len(self.tokens):
            last_col = self.tokens[-1][1] if self.tokens else 1
            raise ParseError("unexpected end of expression", self.line, last_col)
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _generator(self) -> int:
        tok, col = self._take()
        idx = self.name_index.get(tok)
        if idx is None:
            raise ParseError(f"undeclared generator {tok!r}", self.line, col)
        return idx

    def parse(self) -> Form:
        total = Form(self.dim, 2)
        sign = 1
        first = True
        while self._peek() is not None:
            tok, col = self._peek()
            if tok in "+-":
                if first and tok == "+":
                    raise ParseError("expression may not start with '+'", self.line, col)
                self._take()
                sign = -1 if tok == "-" else 1
            elif not first:
                raise ParseError(f"expected '+' or '-' before {tok!r}", self.line, col)
            coef = Fraction(sign)
            tok, col = self._peek() or ("", 0)
            if re.fullmatch(r"\d+(/\d+)?", tok):
                self._take()
                coef *= Fraction(tok)
            i = self._generator()
            tok, col = self._take()
            if tok != "^":
                raise ParseError(f"expected '^', found {tok!r}", self.line, col)
            j = self._generator()
            term = wedge(Form.monomial(self.dim, [i]), Form.monomial(self.dim, [j]))
            if term.is_zero():
                raise ParseError("repeated generator in a wedge term", self.line, col)
            total = total + term.scale(coef)
            sign = 1
            first = False
        if first:
            raise ParseError("empty 2-form expression", self.line, 1)
        return total


def parse(text: str) -> AlgebraDocument:
    """Parse a document, raising :class:`ParseError` with line/column info."""
    dim: Optional[int] = None
    names: Optional[list[str]] = None
    name_index: dict[str, int] = {}
    mc_equations: list[tuple[str, Form]] = []
    seen_d: set[str] = set()
    omega: Optional[Form] = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = _tokenize_line(line, line_no)
        if not tokens:
            continue
        head, col = tokens[0]

        if dim is None:
            if head != "dim":
                raise ParseError("first statement must be 'dim <even integer>'", line_no, col)
            if len(tokens) != 2 or not tokens[1][0].isdigit():
                raise ParseError("usage: dim <even positive integer>", line_no, col)
            dim = int(tokens[1][0])
            if dim <= 0 or dim % 2:
                raise ParseError(f"dimension must be even and positive, got {dim}", line_no, col)
            names = [f"e{i}" for i in range(1, dim + 1)]
            name_index = {n: i + 1 for i, n in enumerate(names)}
            continue

        if head == "dim":
            raise ParseError("duplicate dim statement", line_no, col)

        if head == "names":
            if mc_equations or omega is not None:
                raise ParseError("names must precede d and omega lines", line_no, col)
            given = [t for t, _ in tokens[1:]]
            if len(given) != dim:
                raise ParseError(f"expected {dim} names, got {len(given)}", line_no, col)
            if len(set(given)) != dim:
                raise ParseError("duplicate generator name", line_no, col)
            for name in given:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                    raise ParseError(f"bad generator name {name!r}", line_no, col)
                if name in ("dim", "names", "d", "omega"):
                    raise ParseError(f"generator name {name!r} is reserved", line_no, col)
            names = given
            name_index = {n: i + 1 for i, n in enumerate(names)}
            continue

        if head == "d":
            if len(tokens) < 3 or tokens[2][0] != "=":
                raise ParseError("usage: d <generator> = <2-form>", line_no, col)
            gen, gen_col = tokens[1]
            if gen not in name_index:
                raise ParseError(f"undeclared generator {gen!r}", line_no, gen_col)
            if gen in seen_d:
                raise ParseError(f"duplicate differential for {gen!r}", line_no, gen_col)
            seen_d.add(gen)
            form = _TwoFormParser(tokens[3:], line_no, dim, name_index).parse()
            mc_equations.append((gen, form))
            continue

        if head == "omega":
            if len(tokens) < 2 or tokens[1][0] != "=":
                raise ParseError("usage: omega = <2-form>", line_no, col)
            if omega is not None:
                raise ParseError("duplicate omega line", line_no, col)
            omega = _TwoFormParser(tokens[2:], line_no, dim, name_index).parse()
            continue

        raise ParseError(f"unknown statement {head!r}", line_no, col)

    if dim is None:
        raise ParseError("empty document: missing 'dim' statement", 1, 1)
    if omega is None:
        raise ParseError("missing 'omega = <2-form>' line", 1, 1)
    return AlgebraDocument(dim, names, mc_equations, omega)


def print_document(doc: AlgebraDocument) -> str:
    """Canonical text form; ``parse(print_document(doc)) == doc``."""
    lines = [f"dim {doc.dim}"]
    if doc.names != [f"e{i}" for i in range(1, doc.dim + 1)]:
        lines.append("names " + " ".join(doc.names))
    by_name = dict(doc.mc_equations)
    for name in doc.names:
        form = by_name.get(name)
        if form is not None and not form.is_zero():
            lines.append(f"d {name} = {format_form(form, doc.names)}")
    lines.append(f"omega = {format_form(doc.omega, doc.names)}")
    return "\n".join(lines) + "\n"


def document_from(algebra: LieAlgebra, omega: Form) -> AlgebraDocument:
    """Document describing an in-memory algebra and form."""
    eqs = [
        (name, form)
        for name, form in zip(algebra.generator_names, algebra.d_on_generators)
        if not form.is_zero()
    ]
    return AlgebraDocument(algebra.dim, list(algebra.generator_names), eqs, omega)
