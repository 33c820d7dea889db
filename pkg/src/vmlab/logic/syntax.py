"""First-order formula AST, tokenizer, recursive-descent parser and printer.

Concrete syntax::

    formula  := iff
    iff      := imp ('<->' imp)*          left associative
    imp      := or ('->' imp)?            right associative
    or       := and ('|' and)*
    and      := unary ('&' unary)*
    unary    := '~' unary | quant | atom | '(' formula ')'
    quant    := ('forall' | 'exists') var+ formula
    atom     := name '(' var (',' var)* ')' | var '=' var | var '!=' var
              | 'true' | 'false'

A quantifier's body extends as far to the right as possible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ..errors import FormulaSyntaxError


class Formula:
    """Base class of all AST nodes (frozen dataclasses, hashable)."""

    def free(self) -> frozenset[str]:
        raise NotImplementedError

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Const(Formula):
    value: bool

    def free(self):
        return frozenset()


@dataclass(frozen=True)
class Eq(Formula):
    left: str
    right: str

    def free(self):
        return frozenset((self.left, self.right))


@dataclass(frozen=True)
class Atom(Formula):
    """``name(args)``: a relation (arity 2), a unary predicate, or a call to
    a named definition."""

    name: str
    args: tuple[str, ...]

    def free(self):
        return frozenset(self.args)


@dataclass(frozen=True)
class Not(Formula):
    body: Formula

    def free(self):
        return self.body.free()


@dataclass(frozen=True)
class Binary(Formula):
    op: str        # one of '&', '|', '->', '<->'
    left: Formula
    right: Formula

    def free(self):
        return self.left.free() | self.right.free()


@dataclass(frozen=True)
class Quant(Formula):
    kind: str      # 'forall' or 'exists'
    var: str
    body: Formula

    def free(self):
        return self.body.free() - {self.var}


@dataclass(frozen=True)
class Definition:
    name: str
    params: tuple[str, ...]
    body: Formula


@dataclass
class Signature:
    """Symbols a formula may use: binary relations, unary predicates and
    previously parsed named definitions."""

    relations: set = field(default_factory=lambda: {"E"})
    predicates: set = field(default_factory=set)
    definitions: dict = field(default_factory=dict)

    def arity(self, name: str) -> int | None:
        if name in self.definitions:
            return len(self.definitions[name].params)
        if name in self.relations:
            return 2
        if name in self.predicates:
            return 1
        return None


_TOKEN = re.compile(r"\s*(?:(<->|->|:=|!=|[~&|(),=])|([A-Za-z_][A-Za-z0-9_']*))")
KEYWORDS = {"forall", "exists", "true", "false"}
BINARY_PREC = {"<->": 1, "->": 2, "|": 3, "&": 4}


def tokenize(text: str) -> list[tuple[str, int]]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[start]!r}", start)
        tok = m.group(1) or m.group(2)
        out.append((tok, m.start(1) if m.group(1) else m.start(2)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, sig: Signature, declared: Iterable[str] | None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.sig = sig
        self.declared = None if declared is None else set(declared)

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def pos(self):
        return self.toks[self.i][1] if self.i < len(self.toks) else len(self.text)

    def take(self, expected=None, what=None):
        tok = self.peek()
        if tok is None:
            desc = what or (repr(expected) if expected else "a token")
            raise FormulaSyntaxError(f"unexpected end of input, expected {desc}", self.pos())
        if expected is not None and tok != expected:
            raise FormulaSyntaxError(f"expected {expected!r}, found {tok!r}", self.pos())
        self.i += 1
        return tok

    def var(self, bound):
        p = self.pos()
        tok = self.take(what="a variable")
        if not _is_name(tok) or tok in KEYWORDS:
            raise FormulaSyntaxError(f"expected a variable, found {tok!r}", p)
        if self.declared is not None and tok not in bound and tok not in self.declared:
            raise FormulaSyntaxError(f"variable {tok!r} is neither bound nor declared free", p)
        return tok

    def formula(self, bound):
        left = self.implication(bound)
        while self.peek() == "<->":
            self.take()
            left = Binary("<->", left, self.implication(bound))
        return left

    def implication(self, bound):
        left = self.disjunction(bound)
        if self.peek() == "->":
            self.take()
            return Binary("->", left, self.implication(bound))
        return left

    def disjunction(self, bound):
        left = self.conjunction(bound)
        while self.peek() == "|":
            self.take()
            left = Binary("|", left, self.conjunction(bound))
        return left

    def conjunction(self, bound):
        left = self.unary(bound)
        while self.peek() == "&":
            self.take()
            left = Binary("&", left, self.unary(bound))
        return left

    def unary(self, bound):
        tok = self.peek()
        if tok == "~":
            self.take()
            return Not(self.unary(bound))
        if tok in ("forall", "exists"):
            self.take()
            names = [self.var(bound | {self.peek()})]
            # further names are more bound variables unless they start an atom
            while self._another_var():
                names.append(self.var(bound | {self.peek()}))
            body = self.formula(bound | set(names))
            for name in reversed(names):
                body = Quant(tok, name, body)
            return body
        if tok == "(":
            self.take()
            f = self.formula(bound)
            self.take(")")
            return f
        return self.atom(bound)

    def _another_var(self):
        tok = self.peek()
        if not _is_name(tok) or tok in KEYWORDS or self.i + 1 >= len(self.toks):
            return False
        return self.toks[self.i + 1][0] not in ("(", "=", "!=")

    def atom(self, bound):
        p = self.pos()
        tok = self.take(what="an atom")
        if tok in ("true", "false"):
            return Const(tok == "true")
        if not _is_name(tok) or tok in KEYWORDS:
            raise FormulaSyntaxError(f"unexpected {tok!r}", p)
        if self.peek() == "(":
            self.take()
            args = [self.var(bound)]
            while self.peek() == ",":
                self.take()
                args.append(self.var(bound))
            self.take(")")
            arity = self.sig.arity(tok)
            if arity is None:
                raise FormulaSyntaxError(f"unknown symbol {tok!r}", p)
            if arity != len(args):
                raise FormulaSyntaxError(f"{tok} takes {arity} argument(s), got {len(args)}", p)
            return Atom(tok, tuple(args))
        if self.declared is not None and tok not in bound and tok not in self.declared:
            raise FormulaSyntaxError(f"variable {tok!r} is neither bound nor declared free", p)
        op_pos = self.pos()
        op = self.take(what="'=' or '!='")
        if op not in ("=", "!="):
            raise FormulaSyntaxError(f"expected '=' after variable {tok!r}", op_pos)
        right = self.var(bound)
        return Eq(tok, right) if op == "=" else Not(Eq(tok, right))


def _is_name(tok) -> bool:
    return tok is not None and (tok[0].isalpha() or tok[0] == "_")


def parse_formula(text: str, signature: Signature | None = None,
                  free: Iterable[str] | None = None) -> Formula:
    """Parse ``text``.  When ``free`` is given, every unbound variable must be
    listed there (well-scopedness is then checked while parsing)."""
    p = _Parser(text, signature or Signature(), free)
    if not p.toks:
        raise FormulaSyntaxError("empty formula", 0)
    f = p.formula(set())
    if p.peek() is not None:
        raise FormulaSyntaxError(f"unexpected {p.peek()!r} after formula", p.pos())
    return f


_HEADER = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*\(([^)]*)\)\s*:=", re.M)


def parse_definitions(text: str, signature: Signature | None = None) -> dict[str, Definition]:
    """Parse blocks ``name(v1, ..., vk) := body``; later blocks may call
    earlier ones.  ``#`` starts a comment.  The signature gains the
    definitions as they are read."""
    sig = signature or Signature()
    clean = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    heads = list(_HEADER.finditer(clean))
    if not heads and clean.strip():
        raise FormulaSyntaxError("expected a definition 'name(vars) := body'", 0)
    if heads and clean[:heads[0].start()].strip():
        raise FormulaSyntaxError("text before the first definition", 0)
    defs = {}
    for k, m in enumerate(heads):
        name = m.group(1)
        params = tuple(v.strip() for v in m.group(2).split(",") if v.strip())
        end = heads[k + 1].start() if k + 1 < len(heads) else len(clean)
        body_text = clean[m.end():end]
        try:
            body = parse_formula(body_text, sig, params)
        except FormulaSyntaxError as exc:
            pos = None if exc.position is None else exc.position + m.end()
            raise FormulaSyntaxError(f"in definition {name}: {exc.detail}", pos) from None
        d = Definition(name, params, body)
        defs[name] = d
        sig.definitions[name] = d
    return defs


def to_text(f: Formula, parent: int = 0) -> str:
    """Print ``f`` so that :func:`parse_formula` gives back an equal AST."""
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Eq):
        return f"{f.left} = {f.right}"
    if isinstance(f, Atom):
        return f"{f.name}({', '.join(f.args)})"
    if isinstance(f, Not):
        return "~" + to_text(f.body, 5)
    if isinstance(f, Quant):
        body = to_text(f.body, 0)
        if isinstance(f.body, Binary):
            body = f"({body})"
        s = f"{f.kind} {f.var} {body}"
        return f"({s})" if parent else s
    if isinstance(f, Binary):
        prec = BINARY_PREC[f.op]
        if f.op == "->":
            lp, rp = prec + 1, prec
        else:
            lp, rp = prec, prec + 1
        s = f"{to_text(f.left, lp)} {f.op} {to_text(f.right, rp)}"
        return f"({s})" if parent > prec else s
    raise TypeError(f"not a formula: {f!r}")


def definition_text(d: Definition) -> str:
    return f"{d.name}({', '.join(d.params)}) := {to_text(d.body)}"


def substitute(f: Formula, mapping: Mapping[str, str]) -> Formula:
    """Rename free variables (capture is not an issue for the callers, which
    only substitute fresh or parameter names)."""
    if isinstance(f, Const):
        return f
    if isinstance(f, Eq):
        return Eq(mapping.get(f.left, f.left), mapping.get(f.right, f.right))
    if isinstance(f, Atom):
        return Atom(f.name, tuple(mapping.get(a, a) for a in f.args))
    if isinstance(f, Not):
        return Not(substitute(f.body, mapping))
    if isinstance(f, Binary):
        return Binary(f.op, substitute(f.left, mapping), substitute(f.right, mapping))
    if isinstance(f, Quant):
        inner = {k: v for k, v in mapping.items() if k != f.var}
        return Quant(f.kind, f.var, substitute(f.body, inner))
    raise TypeError(f"not a formula: {f!r}")


def quantifier_rank(f: Formula, definitions: Mapping[str, Definition] | None = None) -> int:
    """Rank with named definitions expanded."""
    defs = definitions or {}
    if isinstance(f, (Const, Eq)):
        return 0
    if isinstance(f, Atom):
        d = defs.get(f.name)
        return quantifier_rank(d.body, defs) if d else 0
    if isinstance(f, Not):
        return quantifier_rank(f.body, defs)
    if isinstance(f, Binary):
        return max(quantifier_rank(f.left, defs), quantifier_rank(f.right, defs))
    if isinstance(f, Quant):
        return 1 + quantifier_rank(f.body, defs)
    raise TypeError(f"not a formula: {f!r}")
