"""Plausible-descriptions: axioms, compiled strict rules, grounded rule
instances, evidence sets and the priority relation.

A description is built once by :func:`build_description` and is read-only
afterwards. Evidence sets are memoized on the instance; the memo tables only
ever grow with values that are pure functions of the frozen content.
"""

from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Optional, Sequence

from . import classical
from .algorithms import Alg
from .syntax import (
    Clause,
    Const,
    Formula,
    Literal,
    Substitution,
    Var,
    atoms_of,
    conj,
    constants_of,
    disj,
    format_clause,
    format_formula,
    groundings,
    negate,
    substitute,
    substitute_clause,
    to_cnf,
    variables_of,
)


class DescriptionError(ValueError):
    """Raised when input cannot form a plausible-description."""


class UnsatisfiableAxioms(DescriptionError):
    def __init__(self, core):
        self.core = core
        super().__init__("axioms are unsatisfiable; minimal conflicting subset: "
                         + "; ".join(format_clause(c) for c in core))


class PriorityCycle(DescriptionError):
    def __init__(self, formula, witness):
        self.formula = formula
        self.witness = witness
        super().__init__("priority relation is not well-founded on %s: %s"
                         % (format_formula(formula), " < ".join(w.label() for w in witness)))


class RuleKind(Enum):
    STRICT = "->"
    DEFEASIBLE = "=>"
    WARNING = "~>"


def _format_rule(antecedents, kind, consequent):
    ants = ", ".join(sorted(format_formula(a) for a in antecedents))
    return "{%s} %s %s" % (ants, kind.value, format_formula(consequent))


@dataclass(frozen=True)
class Rule:
    name: str
    kind: RuleKind
    antecedents: frozenset
    consequent: Formula

    def __post_init__(self):
        if not isinstance(self.antecedents, frozenset):
            object.__setattr__(self, "antecedents", frozenset(self.antecedents))

    @property
    def variables(self) -> frozenset:
        return free_vars(self)

    def __str__(self):
        return _format_rule(self.antecedents, self.kind, self.consequent)


@dataclass(frozen=True)
class RuleInstance:
    """A ground rule. Equality ignores where the instance came from."""

    kind: RuleKind
    antecedents: frozenset
    consequent: Formula
    name: str = field(default="", compare=False)
    subst: Substitution = field(default=Substitution(), compare=False)

    @property
    def is_strict(self):
        return self.kind is RuleKind.STRICT

    @property
    def supports(self):
        """Strict and defeasible instances count as evidence for their team."""
        return self.kind is not RuleKind.WARNING

    def label(self) -> str:
        return self.name + (str(self.subst) if self.subst else "")

    def __str__(self):
        return _format_rule(self.antecedents, self.kind, self.consequent)


def format_rule(r: Rule) -> str:
    """A user rule as a ``def``/``wrn`` statement."""
    kw = "def" if r.kind is RuleKind.DEFEASIBLE else "wrn"
    ants = ", ".join(sorted(format_formula(a) for a in r.antecedents))
    return "%s %s: %s%s %s." % (kw, r.name, ants + " " if ants else "", r.kind.value,
                                format_formula(r.consequent))


def free_vars(r: Rule) -> frozenset:
    vs = set(variables_of(r.consequent))
    for a in r.antecedents:
        vs |= variables_of(a)
    return frozenset(vs)


def apply_substitution(r: Rule, sigma: Substitution) -> RuleInstance:
    vs = free_vars(r)
    extra = sigma.domain - vs
    if extra:
        raise DescriptionError("substitution for rule %s changes variables not in the rule: %s"
                               % (r.name, ", ".join(sorted(v.name for v in extra))))
    missing = vs - sigma.domain
    if missing:
        raise DescriptionError("rule %s: variable %s is not grounded"
                               % (r.name, ", ".join(sorted(v.name for v in missing))))
    return RuleInstance(
        r.kind,
        frozenset(substitute(a, sigma) for a in r.antecedents),
        substitute(r.consequent, sigma),
        r.name,
        sigma,
    )


def ground(rules: Iterable[Rule], constants: Iterable[Const]) -> list:
    """All instances of ``rules`` over ``constants``, duplicates removed,
    in first-seen order."""
    constants = sorted(set(constants))
    seen = {}
    for r in rules:
        for sigma in groundings(free_vars(r), constants):
            inst = apply_substitution(r, sigma)
            seen.setdefault(inst, inst)
    return list(seen)


def rul(c: Clause, prefix: str = "ax") -> list:
    """Compile a clause into its ``2**n - 1`` strict rules.

    For each non-empty ``K`` of the clause's literals ``L`` the consequent is
    ``OR K`` (the literal itself when ``|K| = 1``) and the antecedents are:
    none when ``K = L``; ``{~m}`` when ``L - K = {m}``; otherwise the single
    conjunction of the negated remaining literals. Rule names carry the bit
    mask of ``K`` over the clause's sorted literals.
    """
    lits = sorted(c, key=str)
    if not lits:
        raise DescriptionError("cannot compile the empty clause")
    rules = []
    n = len(lits)
    for mask in range(1, 2 ** n):
        k = [lits[i] for i in range(n) if mask >> i & 1]
        rest = [lits[i] for i in range(n) if not mask >> i & 1]
        if not rest:
            ants = frozenset()
        elif len(rest) == 1:
            ants = frozenset([rest[0].flip()])
        else:
            ants = frozenset([conj(*(l.flip() for l in rest))])
        rules.append(Rule("%s_%d" % (prefix, mask), RuleKind.STRICT, ants, disj(*k)))
    return rules


@dataclass(frozen=True)
class PriorityStatement:
    """``superior > inferior`` between named rules, optionally pinned."""

    superior: str
    inferior: str
    superior_binding: Substitution = Substitution()
    inferior_binding: Substitution = Substitution()


class PlausibleDescription:
    """The triple (Ax, R, >) together with its grounding RΣ."""

    def __init__(self, constants, axioms, ground_axioms, rules, strict_rules,
                 instances, priority):
        self.constants = frozenset(constants)
        self.axioms = tuple(axioms)
        self.ground_axioms = frozenset(ground_axioms)
        self.rules = tuple(rules)
        self.strict_rules = tuple(strict_rules)
        self.instances = tuple(instances)
        self.priority = frozenset(priority)
        self.index = {r: i for i, r in enumerate(self.instances)}
        self._superiors = {}
        for sup, inf in self.priority:
            self._superiors.setdefault(inf, set()).add(sup)
        self._prioritised = sorted({x for p in self.priority for x in p}, key=self.index.get)
        self._lock = threading.RLock()
        try:
            universe = {a for r in self.instances for f in (r.consequent, *r.antecedents)
                        for a in atoms_of(f)}
            self.space = classical.ModelSpace(self.ground_axioms, universe)
        except OverflowError:
            self.space = None
        self._pp = {}
        self._facts = {}
        self._consistent = {}
        self._evidence = {}
        self._wf = {}
        self._by_label = {}
        for r in self.instances:
            self._by_label.setdefault((r.name, r.subst), r)

    # -- basic views -----------------------------------------------------

    @property
    def strict_instances(self):
        return tuple(r for r in self.instances if r.kind is RuleKind.STRICT)

    def __len__(self):
        return len(self.instances)

    def is_fact(self, f: Formula) -> bool:
        """Ax entails f."""
        v = self._facts.get(f)
        if v is None:
            sp = self.space
            if sp is not None and sp.covers(f):
                v = sp.mask(f) == sp.full
            else:
                v = classical.entails(self.ground_axioms, f)
            with self._lock:
                self._facts[f] = v
        return v

    def _consistent_with_axioms(self, r: RuleInstance) -> bool:
        v = self._consistent.get(r)
        if v is None:
            if self.space is not None:
                v = self.space.mask(r.consequent) != 0
            else:
                v = classical.is_satisfiable(self.ground_axioms | to_cnf(r.consequent))
            with self._lock:
                self._consistent[r] = v
        return v

    def _supports(self, r: RuleInstance, f: Formula) -> bool:
        if not self._consistent_with_axioms(r):
            return False
        sp = self.space
        if sp is not None and sp.covers(f):
            return sp.mask(r.consequent) & ~sp.mask(f) == 0
        return classical.entails(self.ground_axioms | to_cnf(r.consequent), f)

    def possibly_provable(self, f: Formula) -> bool:
        """Whether some finite chain of supporters could establish ``f``,
        ignoring opposition and histories (a least fixpoint). When this is
        False no algorithm can give ``f`` the value +1."""
        v = self._pp.get(f)
        if v is not None:
            return v
        order, seen, stack = [], set(), [f]
        while stack:
            g = stack.pop()
            if g in seen or g in self._pp:
                continue
            seen.add(g)
            order.append(g)
            if not self.is_fact(g):
                for r in self.supporters(g, "sd"):
                    stack.extend(r.antecedents)
        val = {g: self.is_fact(g) for g in order}

        def known(a):
            return self._pp[a] if a in self._pp else val[a]

        changed = True
        while changed:
            changed = False
            for g in order:
                if not val[g] and any(all(known(a) for a in r.antecedents)
                                      for r in self.supporters(g, "sd")):
                    val[g] = True
                    changed = True
        with self._lock:
            self._pp.update(val)
        return val[f]

    # -- evidence ----------------------------------------------------------

    def evidence(self, f: Formula) -> tuple:
        """R[f] in canonical instance order."""
        v = self._evidence.get(f)
        if v is None:
            if self.is_fact(f):
                v = ()
            else:
                v = tuple(r for r in self.instances if self._supports(r, f))
            with self._lock:
                self._evidence[f] = v
        return v

    def supporters(self, f: Formula, which: str = "all") -> tuple:
        """R[f] (``which="all"``) or R_sd[f] (``which="sd"``)."""
        ev = self.evidence(f)
        if which == "all":
            return ev
        if which == "sd":
            return tuple(r for r in ev if r.supports)
        raise ValueError(which)

    def is_superior(self, sup: RuleInstance, inf: RuleInstance) -> bool:
        return sup in self._superiors.get(inf, ())

    def superior_supporters(self, f: Formula, s: RuleInstance) -> tuple:
        """R_sd[f] restricted to instances superior to ``s``."""
        sups = self._superiors.get(s)
        if not sups:
            return ()
        return tuple(t for t in self.supporters(f, "sd") if t in sups)

    def foe(self, alg: Alg, f: Formula, r: RuleInstance) -> tuple:
        """The instances ``alg`` treats as evidence against ``f`` when ``r`` supports it."""
        if alg in (Alg.PHI, Alg.PIP):
            return ()
        against = self.supporters(negate(f), "all")
        if alg is Alg.PSIP:
            sups = self._superiors.get(r, ())
            return tuple(s for s in against if s in sups)
        return against

    # -- priorities --------------------------------------------------------

    def check_well_founded(self, f: Formula) -> Optional[list]:
        """None when > is well-founded on ``f``; otherwise an alternating
        witness ``[r1, s2, r3, ...]`` with ``r3 > s2 > r1`` that loops back."""
        if not self.priority:
            return None
        if f in self._wf:
            return self._wf[f]
        nf = negate(f)
        fact_f = self.is_fact(f)
        fact_nf = self.is_fact(nf)
        pos = [r for r in self._prioritised
               if r.supports and not fact_f and self._supports(r, f)]
        neg = [s for s in self._prioritised
               if s.supports and not fact_nf and self._supports(s, nf)]
        # composed relation: upper > s > lower, keyed by lower
        up = {}
        for lower in pos:
            for s in neg:
                if not self.is_superior(s, lower):
                    continue
                for upper in pos:
                    if self.is_superior(upper, s):
                        up.setdefault(lower, []).append((s, upper))
        witness = _find_cycle(pos, up)
        with self._lock:
            self._wf[f] = witness
        return witness

    def ensure_well_founded(self, f: Formula) -> None:
        w = self.check_well_founded(f)
        if w is not None:
            raise PriorityCycle(f, w)

    # -- lookups -----------------------------------------------------------

    def lookup(self, name: str, subst: Substitution = Substitution()) -> RuleInstance:
        r = self._by_label.get((name, subst))
        if r is not None:
            return r
        for rule in self.rules + self.strict_rules:
            if rule.name == name:
                inst = apply_substitution(rule, subst)
                if inst in self.index:
                    return self.instances[self.index[inst]]
        raise DescriptionError("unknown rule instance %s%s" % (name, subst if subst else ""))

    def canonical_text(self) -> str:
        """The description in file syntax with every part in sorted order."""
        lines = []
        if self.constants:
            lines.append("const %s." % ", ".join(sorted(c.name for c in self.constants)))
        lines += sorted("axiom %s." % format_clause(c) for c in self.axioms)
        lines += [format_rule(r) for r in sorted(self.rules, key=lambda r: r.name)]
        lines += sorted("prefer %s > %s." % (a.label(), b.label()) for a, b in self.priority)
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.canonical_text().encode("utf-8")).hexdigest()


def _find_cycle(nodes, up) -> Optional[list]:
    state = {}
    stack = []

    def visit(n):
        state[n] = 1
        stack.append(n)
        for s, upper in up.get(n, ()):
            if state.get(upper) == 1:
                i = stack.index(upper)
                loop = stack[i:]
                return _expand(loop, up)
            if upper not in state:
                found = visit(upper)
                if found:
                    return found
        stack.pop()
        state[n] = 2
        return None

    for n in nodes:
        if n not in state:
            found = visit(n)
            if found:
                return found
    return None


def _expand(loop, up):
    out = []
    for i, lower in enumerate(loop):
        upper = loop[(i + 1) % len(loop)]
        s = next(s for s, u in up[lower] if u == upper)
        out += [lower, s]
    out.append(loop[0])
    return out


def _check_arity(formulas: Iterable[Formula], arities: dict) -> None:
    for f in formulas:
        for a in atoms_of(f):
            known = arities.setdefault(a.pred, a.arity)
            if known != a.arity:
                raise DescriptionError("predicate %s used with arity %d and %d"
                                       % (a.pred, known, a.arity))


def build_description(axioms: Sequence[Clause], rules: Sequence[Rule] = (),
                      priorities: Sequence = (), constants: Iterable = ()) -> PlausibleDescription:
    """Validate and ground a plausible-description.

    ``axioms`` are clauses, possibly with variables (read as universally
    closed). ``priorities`` holds :class:`PriorityStatement` objects or
    explicit ``(superior, inferior)`` pairs of :class:`RuleInstance`.
    The constant set is the declared constants plus any constant mentioned.
    """
    axioms = [frozenset(c) for c in axioms]
    for c in axioms:
        if not c:
            raise DescriptionError("empty clause in axioms")
    names = set()
    for r in rules:
        if r.kind is RuleKind.STRICT:
            raise DescriptionError("rule %s: strict rules come only from axioms" % r.name)
        if r.name in names:
            raise DescriptionError("duplicate rule name %s" % r.name)
        names.add(r.name)

    arities = {}
    _check_arity((l for c in axioms for l in c), arities)
    for r in rules:
        _check_arity(list(r.antecedents) + [r.consequent], arities)

    consts = {Const(c) if isinstance(c, str) else c for c in constants}
    for c in axioms:
        for l in c:
            consts |= constants_of(l)
    for r in rules:
        for f in list(r.antecedents) + [r.consequent]:
            consts |= constants_of(f)
    has_vars = any(variables_of(l) for c in axioms for l in c) or any(free_vars(r) for r in rules)
    if has_vars and not consts:
        raise DescriptionError("rules or axioms have variables but no constants are declared")

    ground_axioms = []
    for c in axioms:
        vs = {v for l in c for v in variables_of(l)}
        for sigma in groundings(vs, consts):
            g = substitute_clause(c, sigma)
            if g not in ground_axioms:
                ground_axioms.append(g)
    if not classical.is_satisfiable(ground_axioms):
        raise UnsatisfiableAxioms(classical.minimal_unsat_core(ground_axioms))

    strict_rules = []
    for i, c in enumerate(axioms):
        strict_rules += rul(c, prefix="ax%d" % i)
    clash = names & {r.name for r in strict_rules}
    if clash:
        raise DescriptionError("rule names reserved for compiled axioms: %s" % ", ".join(sorted(clash)))

    instances = ground(list(rules) + strict_rules, consts)
    instances.sort(key=lambda r: (str(r), r.label()))

    index = {r: i for i, r in enumerate(instances)}
    pairs = set()
    for p in priorities:
        if isinstance(p, PriorityStatement):
            pairs |= _expand_priority(instances, index, consts, list(rules) + strict_rules, p)
        else:
            sup, inf = p
            for x in (sup, inf):
                if x not in index:
                    raise DescriptionError("priority refers to unknown rule instance %s" % x)
            pairs.add((instances[index[sup]], instances[index[inf]]))

    d = PlausibleDescription(consts, axioms, ground_axioms, rules, strict_rules, instances, pairs)
    if pairs:
        seen = set()
        for r in instances:
            for f in (r.consequent, negate(r.consequent)):
                if f not in seen:
                    seen.add(f)
                    d.ensure_well_founded(f)
    return d


def _expand_priority(instances, index, constants, all_rules, p: PriorityStatement) -> set:
    by_name = {r.name: r for r in all_rules}
    for n in (p.superior, p.inferior):
        if n not in by_name:
            raise DescriptionError("priority refers to unknown rule %s" % n)
    sup, inf = by_name[p.superior], by_name[p.inferior]
    for rule, b in ((sup, p.superior_binding), (inf, p.inferior_binding)):
        extra = b.domain - free_vars(rule)
        if extra:
            raise DescriptionError("binding for %s names variables not in the rule: %s"
                                   % (rule.name, ", ".join(sorted(v.name for v in extra))))
    open_vars = (free_vars(sup) - p.superior_binding.domain) | (free_vars(inf) - p.inferior_binding.domain)
    out = set()
    for sigma in groundings(open_vars, constants):
        s1 = Substitution(p.superior_binding.pairs + sigma.restrict(free_vars(sup)).pairs)
        s2 = Substitution(p.inferior_binding.pairs + sigma.restrict(free_vars(inf)).pairs)
        a = apply_substitution(sup, s1)
        b = apply_substitution(inf, s2)
        out.add((instances[index[a]], instances[index[b]]))
    return out
