"""Reader and printer for the description-file language.

A file is a sequence of statements, each ending in a full stop::

    # comment
    const nancy, bob.
    axiom ~n(X) | c(X).
    def r1: c(X) => ~s(X).
    wrn w1: q(X), sc(X) ~> f(X).
    prefer r2 > r1.
    prefer r2[X=bob] > r1[X=bob].

Formulas use ``~`` (negation), ``&`` and ``|`` (``&`` binds tighter), and
parentheses, plus the prefix forms ``not(f)``, ``and(f, ...)`` and
``or(f, ...)``. ``~`` applied to a literal flips its sign; applied to
anything else, and ``not(...)`` always, it builds a negation node.
Identifiers starting with an uppercase letter or ``_`` are variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .description import (
    DescriptionError,
    PlausibleDescription,
    PriorityStatement,
    Rule,
    RuleKind,
    build_description,
    format_rule,
)
from .syntax import (
    And,
    Atom,
    Const,
    Formula,
    Literal,
    Not,
    Or,
    Substitution,
    Var,
    format_formula,
    term,
    to_cnf,
)

KEYWORDS = {"const", "axiom", "def", "wrn", "prefer"}
RESERVED = {"and", "or", "not"}


class ParseError(DescriptionError):
    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__("line %d, column %d: %s" % (line, column, message))


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>=>|~>|->)
  | (?P<ident>[A-Za-z0-9_]+)
  | (?P<punct>[~&|(),.:>\[\]=])
""", re.VERBOSE)


def tokenize(text: str) -> list:
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError("unexpected character %r" % text[pos], line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(Token(chunk if kind == "punct" else kind, chunk, line, col))
        nl = chunk.count("\n")
        if nl:
            line += nl
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


@dataclass
class DescriptionFile:
    """The parsed statements of one file, before validation."""

    constants: list = field(default_factory=list)
    axioms: list = field(default_factory=list)       # formulas as written
    rules: list = field(default_factory=list)
    priorities: list = field(default_factory=list)

    def clauses(self) -> list:
        out = []
        for f in self.axioms:
            for c in sorted(to_cnf(f), key=lambda c: sorted(map(str, c))):
                if c not in out:
                    out.append(c)
        return out

    def build(self) -> PlausibleDescription:
        return build_description(self.clauses(), self.rules, self.priorities, self.constants)


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def take(self, kind=None, text=None) -> Token:
        t = self.tok
        if kind is not None and t.kind != kind:
            want = text or kind
            raise self.error("expected %s, found %s" % (want, _describe(t)))
        self.i += 1
        return t

    def at(self, kind) -> bool:
        return self.tok.kind == kind

    # -- statements --------------------------------------------------------

    def file(self) -> DescriptionFile:
        out = DescriptionFile()
        while not self.at("eof"):
            t = self.take("ident", "a statement keyword")
            if t.text == "const":
                out.constants += self.const_list()
            elif t.text == "axiom":
                out.axioms.append(self.formula())
            elif t.text in ("def", "wrn"):
                out.rules.append(self.rule(t))
            elif t.text == "prefer":
                out.priorities.append(self.prefer())
            else:
                raise self.error("unknown statement %r" % t.text, t)
            self.take(".", "'.'")
        return out

    def const_list(self):
        names = [self.constant()]
        while self.at(","):
            self.take(",")
            names.append(self.constant())
        return names

    def constant(self) -> Const:
        t = self.take("ident", "a constant")
        c = term(t.text)
        if not isinstance(c, Const):
            raise self.error("%r is a variable name, not a constant" % t.text, t)
        return c

    def rule(self, keyword: Token) -> Rule:
        name = self.name()
        self.take(":", "':'")
        ants = []
        if not self.at("arrow"):
            ants.append(self.formula())
            while self.at(","):
                self.take(",")
                ants.append(self.formula())
        arrow = self.take("arrow", "'=>' or '~>'")
        if arrow.text == "->":
            raise self.error("strict rules cannot be written directly; state them as axioms", arrow)
        want = "=>" if keyword.text == "def" else "~>"
        if arrow.text != want:
            raise self.error("%s rules use %r" % (keyword.text, want), arrow)
        kind = RuleKind.DEFEASIBLE if want == "=>" else RuleKind.WARNING
        return Rule(name, kind, frozenset(ants), self.formula())

    def name(self) -> str:
        t = self.take("ident", "a rule name")
        if t.text in RESERVED or t.text in KEYWORDS:
            raise self.error("%r is reserved" % t.text, t)
        return t.text

    def prefer(self) -> PriorityStatement:
        sup, sb = self.named_binding()
        self.take(">", "'>'")
        inf, ib = self.named_binding()
        return PriorityStatement(sup, inf, sb, ib)

    def named_binding(self):
        name = self.name()
        pairs = {}
        if self.at("["):
            self.take("[")
            while True:
                t = self.take("ident", "a variable")
                v = term(t.text)
                if not isinstance(v, Var):
                    raise self.error("%r is not a variable" % t.text, t)
                self.take("=", "'='")
                pairs[v] = self.constant()
                if not self.at(","):
                    break
                self.take(",")
            self.take("]", "']'")
        return name, Substitution(tuple(pairs.items()))

    # -- formulas ----------------------------------------------------------

    def formula(self) -> Formula:
        ops = [self.conjunction()]
        while self.at("|"):
            self.take("|")
            ops.append(self.conjunction())
        return ops[0] if len(ops) == 1 else Or(frozenset(ops))

    def conjunction(self) -> Formula:
        ops = [self.unary()]
        while self.at("&"):
            self.take("&")
            ops.append(self.unary())
        return ops[0] if len(ops) == 1 else And(frozenset(ops))

    def unary(self) -> Formula:
        if self.at("~"):
            self.take("~")
            body = self.unary()
            return body.flip() if isinstance(body, Literal) else Not(body)
        if self.at("("):
            self.take("(")
            f = self.formula()
            self.take(")", "')'")
            return f
        t = self.take("ident", "a formula")
        if t.text in RESERVED:
            self.take("(", "'('")
            args = [self.formula()]
            while self.at(","):
                self.take(",")
                args.append(self.formula())
            self.take(")", "')'")
            if t.text == "not":
                if len(args) != 1:
                    raise self.error("not(...) takes one formula", t)
                return Not(args[0])
            return (And if t.text == "and" else Or)(frozenset(args))
        if t.text in KEYWORDS:
            raise self.error("%r is reserved" % t.text, t)
        args = ()
        if self.at("("):
            self.take("(")
            args = [self.take("ident", "a term").text]
            while self.at(","):
                self.take(",")
                args.append(self.take("ident", "a term").text)
            self.take(")", "')'")
        return Literal(Atom(t.text, tuple(term(a) for a in args)))


def _describe(t: Token) -> str:
    return "end of input" if t.kind == "eof" else repr(t.text)


def parse_file(text: str) -> DescriptionFile:
    return _Parser(text).file()


def parse_description(text: str) -> PlausibleDescription:
    """Parse and validate a description file."""
    return parse_file(text).build()


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if not p.at("eof"):
        raise p.error("unexpected %s after formula" % _describe(p.tok))
    return f


def format_description(d: PlausibleDescription) -> str:
    """Canonical file text; parsing it rebuilds an equal description."""
    return d.canonical_text()
