"""Terms, atoms, literals, formulas, clauses and substitutions.

Everything here is an immutable value. Conjunctions and disjunctions hold
their operands in a frozenset, so ``And({a, b}) == And({b, a})``.
The language is function-free: a term is a constant or a variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Mapping, Union


@dataclass(frozen=True, order=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, order=True)
class Var:
    name: str

    def __str__(self):
        return self.name


Term = Union[Const, Var]


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.pred
        return "%s(%s)" % (self.pred, ",".join(str(a) for a in self.args))

    @property
    def arity(self) -> int:
        return len(self.args)

    def is_ground(self) -> bool:
        return all(isinstance(a, Const) for a in self.args)


@dataclass(frozen=True)
class Literal:
    atom: Atom
    positive: bool = True

    def __str__(self):
        return str(self.atom) if self.positive else "~" + str(self.atom)

    def flip(self) -> Literal:
        return Literal(self.atom, not self.positive)


@dataclass(frozen=True)
class Not:
    body: "Formula"

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class And:
    operands: frozenset

    def __post_init__(self):
        if not isinstance(self.operands, frozenset):
            object.__setattr__(self, "operands", frozenset(self.operands))
        if not self.operands:
            raise ValueError("empty conjunction")

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Or:
    operands: frozenset

    def __post_init__(self):
        if not isinstance(self.operands, frozenset):
            object.__setattr__(self, "operands", frozenset(self.operands))
        if not self.operands:
            raise ValueError("empty disjunction")

    def __str__(self):
        return format_formula(self)


Formula = Union[Literal, Not, And, Or]
Clause = frozenset  # of Literal


def atom(pred: str, *args: str) -> Atom:
    """Build an atom; argument names starting with an uppercase letter or
    underscore are variables, everything else is a constant."""
    return Atom(pred, tuple(term(a) for a in args))


def term(name: str) -> Term:
    if name[:1].isupper() or name[:1] == "_":
        return Var(name)
    return Const(name)


def lit(text: str) -> Literal:
    """Shorthand used mostly by tests: ``lit("~s(X)")``."""
    positive = not text.startswith("~")
    text = text.lstrip("~")
    if "(" in text:
        pred, rest = text.split("(", 1)
        args = [a.strip() for a in rest.rstrip(")").split(",") if a.strip()]
    else:
        pred, args = text, []
    return Literal(atom(pred, *args), positive)


def conj(*fs: Formula) -> Formula:
    return fs[0] if len(fs) == 1 else And(frozenset(fs))


def disj(*fs: Formula) -> Formula:
    return fs[0] if len(fs) == 1 else Or(frozenset(fs))


def negate(f: Formula) -> Formula:
    """Negation that flips literal signs and unwraps an outer negation."""
    if isinstance(f, Literal):
        return f.flip()
    if isinstance(f, Not):
        return f.body
    return Not(f)


# -- printing ---------------------------------------------------------------

_PREC = {Or: 1, And: 2}


def format_formula(f: Formula) -> str:
    """Canonical text: ``~`` for negation, ``&``/``|`` infix, operands sorted."""
    if isinstance(f, Literal):
        return str(f)
    if isinstance(f, Not):
        if isinstance(f.body, Literal):
            return "not(%s)" % f.body
        return "~" + _wrap(f.body, 3)
    if len(f.operands) == 1:
        (g,) = f.operands
        return "%s(%s)" % ("and" if isinstance(f, And) else "or", format_formula(g))
    prec = _PREC[type(f)]
    sep = " & " if isinstance(f, And) else " | "
    return sep.join(sorted(_wrap(g, prec + 1) for g in f.operands))


def _wrap(f: Formula, min_prec: int) -> str:
    text = format_formula(f)
    p = _PREC.get(type(f))
    if p is not None and len(f.operands) > 1 and p < min_prec:
        return "(" + text + ")"
    return text


def sort_key(f) -> str:
    return format_formula(f)


def format_clause(c: Iterable[Literal]) -> str:
    return " | ".join(sorted(str(l) for l in c))


# -- structure --------------------------------------------------------------

def atoms_of(f: Formula) -> Iterator[Atom]:
    if isinstance(f, Literal):
        yield f.atom
    elif isinstance(f, Not):
        yield from atoms_of(f.body)
    else:
        for g in f.operands:
            yield from atoms_of(g)


def variables_of(f: Formula) -> set:
    return {a for at in atoms_of(f) for a in at.args if isinstance(a, Var)}


def constants_of(f: Formula) -> set:
    return {a for at in atoms_of(f) for a in at.args if isinstance(a, Const)}


def is_ground(f: Formula) -> bool:
    return all(at.is_ground() for at in atoms_of(f))


def clause_formula(c: Clause) -> Formula:
    """The formula ``OR c`` (a bare literal for unit clauses)."""
    return disj(*sorted(c, key=str))


# -- substitutions ----------------------------------------------------------

@dataclass(frozen=True)
class Substitution:
    """A finite map from variables to constants."""

    pairs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted(self.pairs)))
        for v, c in self.pairs:
            if not isinstance(v, Var) or not isinstance(c, Const):
                raise TypeError("substitution must map Var to Const: %r -> %r" % (v, c))

    @classmethod
    def of(cls, mapping: Mapping = None, **kw) -> Substitution:
        items = dict(mapping or {}, **kw)
        return cls(tuple((v if isinstance(v, Var) else Var(v),
                          c if isinstance(c, Const) else Const(c))
                         for v, c in items.items()))

    @property
    def domain(self) -> frozenset:
        """Doc(sigma), the variables this substitution changes."""
        return frozenset(v for v, _ in self.pairs)

    def get(self, v: Var):
        for k, c in self.pairs:
            if k == v:
                return c
        return None

    def restrict(self, vs: Iterable[Var]) -> Substitution:
        vs = set(vs)
        return Substitution(tuple(p for p in self.pairs if p[0] in vs))

    def as_dict(self) -> dict:
        return {v.name: c.name for v, c in self.pairs}

    def __str__(self):
        return "[%s]" % ", ".join("%s=%s" % (v, c) for v, c in self.pairs)

    def __bool__(self):
        return bool(self.pairs)


def substitute(f: Formula, sigma: Substitution) -> Formula:
    if not sigma:
        return f
    m = dict(sigma.pairs)
    return _subst(f, m)


def _subst(f, m):
    if isinstance(f, Literal):
        a = f.atom
        return Literal(Atom(a.pred, tuple(m.get(t, t) for t in a.args)), f.positive)
    if isinstance(f, Not):
        return Not(_subst(f.body, m))
    return type(f)(frozenset(_subst(g, m) for g in f.operands))


def substitute_clause(c: Clause, sigma: Substitution) -> Clause:
    return frozenset(_subst(l, dict(sigma.pairs)) for l in c)


def groundings(vs: Iterable[Var], constants: Iterable[Const]) -> Iterator[Substitution]:
    """Every substitution mapping exactly ``vs`` into ``constants``."""
    vs = sorted(vs)
    cs = sorted(constants)
    for combo in product(cs, repeat=len(vs)):
        yield Substitution(tuple(zip(vs, combo)))


# -- clausal form -----------------------------------------------------------

def _nnf(f: Formula, positive: bool = True):
    if isinstance(f, Literal):
        return f if positive else f.flip()
    if isinstance(f, Not):
        return _nnf(f.body, not positive)
    ops = [_nnf(g, positive) for g in f.operands]
    is_and = isinstance(f, And) == positive
    return ("and" if is_and else "or", ops)


def _cnf_of_nnf(n) -> set:
    if isinstance(n, Literal):
        return {frozenset([n])}
    kind, ops = n
    if kind == "and":
        out = set()
        for g in ops:
            out |= _cnf_of_nnf(g)
        return out
    acc = {frozenset()}
    for g in ops:
        acc = {a | b for a in acc for b in _cnf_of_nnf(g)}
    return acc


def is_tautologous_clause(c: Clause) -> bool:
    return any(l.flip() in c for l in c)


@lru_cache(maxsize=65536)
def to_cnf(f: Formula) -> frozenset:
    """Clause set equivalent to ``f`` by plain distribution.

    Tautologous clauses are dropped, so a tautology yields the empty set.
    """
    return frozenset(c for c in _cnf_of_nnf(_nnf(f)) if not is_tautologous_clause(c))
