"""S-expression syntax for formulas.

::

    term    := NAT | vN | (+ term term ...) | (* term term ...)
    formula := (= t t) | (<= t t) | (< t t) | (!= t t) | (dvd t t)
             | (mod t t t)                  ; t1 ≡ t2 (mod t3)
             | (and f f ...) | (or f f ...)
             | (exists f) | (exists NAME f)  ; NAME is a label only

``vN`` is the de Bruijn index ``N``: inside ``(exists ...)`` ``v0`` is the
bound variable.  ``;`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from diophantine.formula.ast import (
    Add,
    And,
    Const,
    Dvd,
    Eq,
    Exists,
    Formula,
    Le,
    Lt,
    ModCong,
    Mul,
    Ne,
    Or,
    Term,
    Var,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


@dataclass
class _Tok:
    text: str
    line: int
    col: int


@dataclass
class _List:
    items: list
    line: int
    col: int


_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    line, col = 1, 1
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        text = m.group(0)
        if not text.isspace() and not text.startswith(";"):
            toks.append(_Tok(text, line, col))
        nl = text.count("\n")
        if nl:
            line += nl
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    return toks


def _read(toks: list[_Tok]):
    stack: list[_List] = []
    top = []
    for tok in toks:
        if tok.text == "(":
            stack.append(_List([], tok.line, tok.col))
        elif tok.text == ")":
            if not stack:
                raise ParseError("unbalanced ')'", tok.line, tok.col)
            done = stack.pop()
            (stack[-1].items if stack else top).append(done)
        else:
            (stack[-1].items if stack else top).append(tok)
    if stack:
        raise ParseError("missing ')'", stack[-1].line, stack[-1].col)
    return top


_VAR = re.compile(r"v(\d+)$")


def _term(node) -> Term:
    if isinstance(node, _Tok):
        if node.text.isdigit():
            return Const(int(node.text))
        m = _VAR.match(node.text)
        if m:
            return Var(int(m.group(1)))
        raise ParseError(f"expected a term, got {node.text!r}", node.line, node.col)
    if not node.items or not isinstance(node.items[0], _Tok):
        raise ParseError("expected (+ ...) or (* ...)", node.line, node.col)
    op = node.items[0].text
    if op not in ("+", "*"):
        raise ParseError(f"unknown term operator {op!r}", node.line, node.col)
    args = [_term(x) for x in node.items[1:]]
    if len(args) < 2:
        raise ParseError(f"{op!r} needs at least two arguments", node.line, node.col)
    out = args[-1]
    cls = Add if op == "+" else Mul
    for a in reversed(args[:-1]):
        out = cls(a, out)
    return out


_BINARY = {"=": Eq, "<=": Le, "<": Lt, "!=": Ne, "dvd": Dvd}


def _formula(node) -> Formula:
    if isinstance(node, _Tok):
        raise ParseError(f"expected a formula, got {node.text!r}", node.line, node.col)
    if not node.items or not isinstance(node.items[0], _Tok):
        raise ParseError("expected an operator", node.line, node.col)
    op = node.items[0].text
    args = node.items[1:]

    def arity(n: int):
        if len(args) != n:
            raise ParseError(f"{op!r} takes {n} arguments, got {len(args)}", node.line, node.col)

    if op in _BINARY:
        arity(2)
        return _BINARY[op](_term(args[0]), _term(args[1]))
    if op == "mod":
        arity(3)
        return ModCong(*(_term(a) for a in args))
    if op in ("and", "or"):
        if len(args) < 1:
            raise ParseError(f"{op!r} needs arguments", node.line, node.col)
        fs = [_formula(a) for a in args]
        out = fs[-1]
        cls = And if op == "and" else Or
        for f in reversed(fs[:-1]):
            out = cls(f, out)
        return out
    if op == "exists":
        if len(args) == 2 and isinstance(args[0], _Tok):
            return Exists(_formula(args[1]), args[0].text)
        arity(1)
        return Exists(_formula(args[0]))
    raise ParseError(f"unknown formula operator {op!r}", node.line, node.col)


def parse_formula(src: str) -> Formula:
    top = _read(_tokenize(src))
    if len(top) != 1:
        if not top:
            raise ParseError("empty input", 1, 1)
        extra = top[1]
        raise ParseError("trailing input after formula", extra.line, extra.col)
    return _formula(top[0])


def parse_term(src: str) -> Term:
    top = _read(_tokenize(src))
    if len(top) != 1:
        raise ParseError("expected exactly one term", 1, 1)
    return _term(top[0])


def term_to_sexpr(t: Term) -> str:
    if isinstance(t, Const):
        return str(t.value)
    if isinstance(t, Var):
        return f"v{t.index}"
    if isinstance(t, (Add, Mul)):
        op = "+" if isinstance(t, Add) else "*"
        return f"({op} {term_to_sexpr(t.left)} {term_to_sexpr(t.right)})"
    raise ValueError(f"cannot serialise {t!r}")


def to_sexpr(f: Formula) -> str:
    if isinstance(f, ModCong):
        return f"(mod {term_to_sexpr(f.left)} {term_to_sexpr(f.right)} {term_to_sexpr(f.modulus)})"
    for name, cls in _BINARY.items():
        if type(f) is cls:
            return f"({name} {term_to_sexpr(f.left)} {term_to_sexpr(f.right)})"
    if isinstance(f, (And, Or)):
        op = "and" if isinstance(f, And) else "or"
        return f"({op} {to_sexpr(f.left)} {to_sexpr(f.right)})"
    if isinstance(f, Exists):
        label = f"{f.name} " if f.name else ""
        return f"(exists {label}{to_sexpr(f.body)})"
    raise ValueError(f"cannot serialise {f!r}")
