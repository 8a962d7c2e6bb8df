"""Reading and printing terms in the ASCII surface syntax.

    term := var | "\\" var "." term | term term | "!" term
          | "#" opname "(" term ("," term)* ")" | "(" term ")" | "[]"

Application is left-associative, ``!`` binds tighter than application, and an
abstraction extends as far to the right as possible.  ``λ`` is accepted as a
synonym for the backslash.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from bangcalc.syntax import (
    HOLE,
    Abs,
    App,
    Bang,
    BVar,
    Hole,
    Op,
    Term,
    Var,
    dangling,
    free_vars,
)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int) -> None:
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<hole>\[\])
  | (?P<lam>[\\λ])
  | (?P<op>\#[A-Za-z][A-Za-z0-9_]*)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<punct>[.()!,])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(src: str) -> list[_Tok]:
    out: list[_Tok] = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        kind = m.lastgroup
        assert kind is not None
        if kind != "ws":
            text = m.group()
            out.append(_Tok(text if kind == "punct" else kind, text, pos))
        pos = m.end()
    out.append(_Tok("eof", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str) -> None:
        self.toks = _tokenize(src)
        self.i = 0
        self.env: list[str] = []

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str) -> _Tok:
        tok = self.peek()
        if tok.kind != kind:
            want = {"ident": "identifier", "eof": "end of input"}.get(kind, repr(kind))
            got = tok.text or "end of input"
            raise ParseError(f"expected {want}, found {got!r}", tok.pos)
        self.i += 1
        return tok

    def term(self) -> Term:
        if self.peek().kind == "lam":
            return self.lam()
        head = self.unary()
        while True:
            kind = self.peek().kind
            if kind == "lam":
                return App(head, self.lam())
            if kind in ("ident", "op", "hole", "(", "!"):
                head = App(head, self.unary())
            else:
                return head

    def lam(self) -> Term:
        self.take("lam")
        name = self.take("ident").text
        self.take(".")
        self.env.append(name)
        try:
            body = self.term()
        finally:
            self.env.pop()
        return Abs(name, body)

    def unary(self) -> Term:
        if self.peek().kind == "!":
            self.i += 1
            if self.peek().kind == "lam":
                return Bang(self.lam())
            return Bang(self.unary())
        return self.atom()

    def atom(self) -> Term:
        tok = self.peek()
        match tok.kind:
            case "ident":
                self.i += 1
                for depth, bound in enumerate(reversed(self.env)):
                    if bound == tok.text:
                        return BVar(depth)
                return Var(tok.text)
            case "hole":
                self.i += 1
                return HOLE
            case "(":
                self.i += 1
                inner = self.term()
                self.take(")")
                return inner
            case "op":
                self.i += 1
                self.take("(")
                args: list[Term] = []
                if self.peek().kind != ")":
                    args.append(self.term())
                    while self.peek().kind == ",":
                        self.i += 1
                        args.append(self.term())
                self.take(")")
                return Op(tok.text[1:], args)
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.pos)


def parse(src: str) -> Term:
    """Parse one term; operator arities are checked later by ``validate``."""
    p = _Parser(src)
    t = p.term()
    p.take("eof")
    return t


def _pick_name(hint: str, body: Term, names: list[str]) -> str:
    taken = set(free_vars(body))
    # enclosing binders the body still refers to must stay visible
    for k in dangling(body, 1):
        if k < len(names):
            taken.add(names[-1 - k])
    base = hint if hint and hint[0].isalpha() else "x"
    if base not in taken:
        return base
    stem = base.rstrip("0123456789") or "x"
    n = 1
    while f"{stem}{n}" in taken:
        n += 1
    return f"{stem}{n}"


def show(t: Term, *, canonical: bool = False) -> str:
    """Print ``t`` with minimal parentheses.

    With ``canonical=True`` binder hints are ignored and binders are named by
    depth, so alpha-equivalent terms print identically.
    """
    names: list[str] = []

    def go(u: Term, pos: str, tail: bool) -> str:
        # pos: "top" | "fun" | "arg" | "bang"
        match u:
            case Var(name=n):
                return n
            case BVar(index=i):
                return names[-1 - i] if i < len(names) else f"?{i}"
            case Hole():
                return "[]"
            case Abs(name=hint, body=b):
                if canonical:
                    hint = f"v{len(names)}"
                name = _pick_name(hint, b, names)
                names.append(name)
                try:
                    text = f"\\{name}.{go(b, 'top', True)}"
                finally:
                    names.pop()
                if pos in ("fun", "bang") or not tail:
                    return f"({text})"
                return text
            case App(fun=f, arg=a):
                wrap = pos in ("arg", "bang")
                text = f"{go(f, 'fun', False)} {go(a, 'arg', tail or wrap)}"
                return f"({text})" if wrap else text
            case Bang(body=b):
                return "!" + go(b, "bang", True)
            case Op(op=o, args=args):
                return f"#{o}(" + ", ".join(go(a, "top", True) for a in args) + ")"
        raise TypeError(f"not a term: {u!r}")

    return go(t, "top", True)
