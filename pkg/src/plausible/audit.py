"""Property checks over a finite query universe.

Each check returns a :class:`CheckResult` listing concrete violations; an
empty list means the property held on every formula tried.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Iterable

from . import classical
from .algorithms import HIERARCHY, Alg
from .description import PlausibleDescription
from .engine import MINUS, PLUS, Evaluator
from .syntax import And, Literal, Not, Or, atoms_of, format_formula, negate, to_cnf
from .truth import TruthValue, truth_value

NON_PRIMED = (Alg.PHI, Alg.PI, Alg.PSI, Alg.THETA, Alg.THETAP, Alg.BETA)
TWO_CONSISTENT = (Alg.PHI, Alg.PI, Alg.PSI, Alg.THETA, Alg.BETA)


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def fail(self, msg: str):
        self.violations.append(msg)


def consequent_universe(d: PlausibleDescription) -> list:
    """Every instance consequent and its negation."""
    out = []
    for r in d.instances:
        for f in (r.consequent, negate(r.consequent)):
            if f not in out:
                out.append(f)
    return sorted(out, key=format_formula)


def literal_universe(d: PlausibleDescription) -> list:
    """Every ground literal over the atoms the description mentions."""
    atoms = {l.atom for c in d.ground_axioms for l in c}
    for r in d.instances:
        for f in (r.consequent, *r.antecedents):
            atoms |= set(atoms_of(f))
    out = []
    for a in sorted(atoms, key=str):
        out += [Literal(a, True), Literal(a, False)]
    return out


class Auditor:
    """Runs the checks against one description, sharing one evaluator."""

    def __init__(self, d: PlausibleDescription, universe: Iterable, evaluator: Evaluator = None):
        self.d = d
        self.universe = list(universe)
        self.ev = evaluator or Evaluator(d)
        self._values = {}

    def value(self, alg, x):
        key = (alg, x)
        if key not in self._values:
            self._values[key] = self.ev.P(alg, (), x)
        return self._values[key]

    def proved(self, alg) -> set:
        return {f for f in self.universe if self.value(alg, f) == PLUS}

    def disproved(self, alg) -> set:
        return {f for f in self.universe if self.value(alg, f) == MINUS}

    # -- checks --------------------------------------------------------------

    def hierarchy(self) -> CheckResult:
        res = CheckResult("hierarchy")
        proved = {a: self.proved(a) for a in HIERARCHY}
        disproved = {a: self.disproved(a) for a in HIERARCHY}
        res.checked = len(self.universe) * len(HIERARCHY)
        for lo, hi in zip(HIERARCHY, HIERARCHY[1:]):
            for f in proved[lo] - proved[hi]:
                res.fail("%s proves %s but %s does not" % (lo, format_formula(f), hi))
            for f in disproved[hi] - disproved[lo]:
                res.fail("%s disproves %s but %s does not" % (hi, format_formula(f), lo))
        equal = [(Alg.THETA, Alg.THETAP)]
        if not self.d.priority:
            equal += [(Alg.PI, Alg.PSI), (Alg.PSIP, Alg.PIP)]
        for a, b in equal:
            for f in proved[a] ^ proved[b]:
                res.fail("%s and %s differ on %s" % (a, b, format_formula(f)))
        return res

    def coherence(self) -> CheckResult:
        """Values are reproducible: a fresh evaluator without the
        reachability shortcut agrees with the shared one."""
        res = CheckResult("coherence")
        fresh = Evaluator(self.d, prune=False)
        for a in HIERARCHY:
            for f in self.universe:
                res.checked += 1
                v1 = self.value(a, f)
                v2 = fresh.P(a, (), f)
                if v1 not in (PLUS, MINUS) or v1 != v2:
                    res.fail("%s on %s gave %s and %s" % (a, format_formula(f), v1, v2))
        return res

    def two_consistency(self) -> CheckResult:
        res = CheckResult("strong 2-consistency")
        ax = self.d.ground_axioms
        for a in TWO_CONSISTENT:
            fs = sorted(self.proved(a), key=format_formula)
            for f, g in combinations_with_replacement(fs, 2):
                res.checked += 1
                if not classical.is_satisfiable(ax | to_cnf(f) | to_cnf(g)):
                    res.fail("%s proves %s and %s, jointly unsatisfiable with the axioms"
                             % (a, format_formula(f), format_formula(g)))
        return res

    def conjunction(self) -> CheckResult:
        res = CheckResult("plausible conjunction")
        facts = [f for f in self.universe if self.d.is_fact(f)]
        facts += [_clause(c) for c in sorted(self.d.ground_axioms, key=_ckey)][:4]
        for a in HIERARCHY:
            for g in self.proved(a):
                for f in facts:
                    if f == g:
                        continue
                    res.checked += 1
                    if self.ev.P(a, (), And(frozenset([f, g]))) != PLUS:
                        res.fail("%s proves %s but not its conjunction with fact %s"
                                 % (a, format_formula(g), format_formula(f)))
        return res

    def right_weakening(self) -> CheckResult:
        res = CheckResult("strong right weakening")
        ax = self.d.ground_axioms
        for a in HIERARCHY:
            for f in self.proved(a):
                for g in self.universe:
                    if not classical.entails(ax | to_cnf(f), g):
                        continue
                    res.checked += 1
                    if self.value(a, g) != PLUS:
                        res.fail("%s proves %s, which entails %s given the axioms, but not %s"
                                 % (a, format_formula(f), format_formula(g), format_formula(g)))
        return res

    def modus_ponens(self) -> CheckResult:
        res = CheckResult("modus ponens (strict)")
        for a in HIERARCHY:
            for r in self.d.strict_instances:
                if self.ev.P(a, (), r.antecedents) != PLUS:
                    continue
                res.checked += 1
                if self.ev.P(a, (), r.consequent) != PLUS:
                    res.fail("%s proves the antecedents of %s but not %s"
                             % (a, r.label(), format_formula(r.consequent)))
        return res

    def truth(self) -> CheckResult:
        res = CheckResult("truth values")
        T, F, A, U = TruthValue.TRUE, TruthValue.FALSE, TruthValue.AMBIGUOUS, TruthValue.UNDETERMINED
        flip = {T: F, F: T, A: A, U: U}
        for a in HIERARCHY:
            V = lambda f: truth_value(self.d, a, f, self.ev)
            for f in self.universe:
                res.checked += 1
                v = V(f)
                if V(Not(Not(f))) is not v:
                    res.fail("V(%s, ~~%s) differs from V(%s, %s)" % (a, format_formula(f), a, format_formula(f)))
                if V(negate(f)) is not flip[v] or V(Not(f)) is not flip[v]:
                    res.fail("V(%s, ~%s) is not the dual of %s" % (a, format_formula(f), v))
                if a in NON_PRIMED and v is A:
                    res.fail("%s gives %s the value a" % (a, format_formula(f)))
                proves = self.value(a, f) == PLUS
                if v is T and not proves:
                    res.fail("V(%s, %s) = t without a proof" % (a, format_formula(f)))
                if a in NON_PRIMED and proves and v is not T:
                    res.fail("%s proves %s but V = %s" % (a, format_formula(f), v))
            for f, g in combinations(self.universe[:12], 2):
                fg = frozenset([f, g])
                if V(And(fg)) is T and not (V(f) is T and V(g) is T):
                    res.fail("V(%s, %s & %s) = t but a conjunct is not t"
                             % (a, format_formula(f), format_formula(g)))
                if (V(f) is T or V(g) is T) and V(Or(fg)) is not T:
                    res.fail("a disjunct of %s | %s is t under %s but the disjunction is not"
                             % (format_formula(f), format_formula(g), a))
        return res

    def depth(self) -> CheckResult:
        res = CheckResult("recursion depth bound")
        res.checked = 1
        if self.ev.max_depth > self.ev.depth_limit:
            res.fail("depth %d exceeds %d" % (self.ev.max_depth, self.ev.depth_limit))
        return res

    def run(self) -> list:
        checks = [self.hierarchy, self.coherence, self.two_consistency, self.conjunction,
                  self.right_weakening, self.modus_ponens, self.truth, self.depth]
        return [c() for c in checks]


def _clause(c):
    lits = sorted(c, key=str)
    return lits[0] if len(lits) == 1 else Or(frozenset(lits))


def _ckey(c):
    return sorted(map(str, c))


def audit(d: PlausibleDescription, universe: Iterable = None) -> list:
    if universe is None:
        universe = consequent_universe(d)
    return Auditor(d, universe).run()


def format_table(results: list) -> str:
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        lines.append("%-*s  %s  (%d checked)" % (width, r.name, "PASS" if r.passed else "FAIL", r.checked))
        for v in r.violations[:5]:
            lines.append("    " + v)
        if len(r.violations) > 5:
            lines.append("    ... %d more" % (len(r.violations) - 5))
    return "\n".join(lines)
