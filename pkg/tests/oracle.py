"""Slow reference evaluator used only by the tests.

It reads the raw data of a description (ground axiom clauses, instances,
priority pairs) and recomputes everything else from scratch: entailment by
truth tables, evidence sets, foes, and the proof function written as two
separate conditions for +1 and for -1. Histories are frozensets; only
membership matters to the recursion.
"""

from itertools import product

from plausible.algorithms import Alg
from plausible.description import RuleKind
from plausible.syntax import And, Literal, Not, Or

CO = {
    Alg.PHI: Alg.PHI, Alg.BETA: Alg.BETA,
    Alg.PI: Alg.PIP, Alg.PIP: Alg.PI,
    Alg.PSI: Alg.PSIP, Alg.PSIP: Alg.PSI,
    Alg.THETA: Alg.THETAP, Alg.THETAP: Alg.THETA,
}


def holds(f, model):
    if isinstance(f, Literal):
        return model[f.atom] == f.positive
    if isinstance(f, Not):
        return not holds(f.body, model)
    if isinstance(f, And):
        return all(holds(g, model) for g in f.operands)
    if isinstance(f, Or):
        return any(holds(g, model) for g in f.operands)
    raise TypeError(f)


def atoms(f):
    if isinstance(f, Literal):
        return {f.atom}
    if isinstance(f, Not):
        return atoms(f.body)
    out = set()
    for g in f.operands:
        out |= atoms(g)
    return out


def neg(f):
    # semantic negation is all the oracle needs
    return Not(f)


class Oracle:
    """``shortcut=True`` answers -1 at once for formulas that no chain of
    supporting rules can reach from facts. That is sound (a +1 value always
    rests on such a chain) and keeps the large lottery fixtures tractable."""

    def __init__(self, d, shortcut=False):
        self.shortcut = shortcut
        self._reach = {}
        self._R = {}
        self.clauses = list(d.ground_axioms)
        self.instances = list(d.instances)
        self.priority = set(d.priority)
        universe = {l.atom for c in self.clauses for l in c}
        for r in self.instances:
            universe |= atoms(r.consequent)
            for a in r.antecedents:
                universe |= atoms(a)
        self.universe = sorted(universe, key=str)
        self.models = []
        for bits in product((False, True), repeat=len(self.universe)):
            m = dict(zip(self.universe, bits))
            if all(any(m[l.atom] == l.positive for l in c) for c in self.clauses):
                self.models.append(m)
        self.memo = {}

    def _models_for(self, f):
        extra = [a for a in atoms(f) if a not in self.universe]
        if not extra:
            return self.models
        out = []
        for m in self.models:
            for bits in product((False, True), repeat=len(extra)):
                mm = dict(m)
                mm.update(zip(extra, bits))
                out.append(mm)
        return out

    def fact(self, f):
        return all(holds(f, m) for m in self._models_for(f))

    def R(self, f):
        """Evidence for f."""
        if f in self._R:
            return self._R[f]
        self._R[f] = out = self._evidence(f)
        return out

    def _evidence(self, f):
        if self.fact(f):
            return []
        out = []
        for r in self.instances:
            ms = [m for m in self._models_for(And({r.consequent, f})) if holds(r.consequent, m)]
            if ms and all(holds(f, m) for m in ms):
                out.append(r)
        return out

    def R_sd(self, f):
        return [r for r in self.R(f) if r.kind is not RuleKind.WARNING]

    def R_sd_above(self, f, s):
        return [t for t in self.R_sd(f) if (t, s) in self.priority]

    def foe(self, alg, f, r):
        if alg in (Alg.PHI, Alg.PIP):
            return []
        against = self.R(neg(f))
        if alg is Alg.PSIP:
            return [s for s in against if (s, r) in self.priority]
        return against

    # -- the proof function ---------------------------------------------

    def reachable(self, f):
        """Least fixpoint: f is a fact or some supporter has reachable antecedents."""
        if f not in self._reach:
            todo, seen = [f], []
            while todo:
                g = todo.pop()
                if g in seen or g in self._reach:
                    continue
                seen.append(g)
                for r in self.R_sd(g):
                    todo.extend(r.antecedents)
            val = {g: self.fact(g) for g in seen}
            look = lambda a: self._reach[a] if a in self._reach else val[a]
            while True:
                new = [g for g in seen if not val[g] and any(
                    all(look(a) for a in r.antecedents) for r in self.R_sd(g))]
                if not new:
                    break
                for g in new:
                    val[g] = True
            self._reach.update(val)
        return self._reach[f]

    def P(self, alg, H, x):
        key = (alg, H, x)
        if key in self.memo:
            return self.memo[key]
        if self.shortcut and not isinstance(x, frozenset) and not self.reachable(x):
            self.memo[key] = -1
            return -1
        plus = self._plus(alg, H, x)
        minus = self._minus(alg, H, x)
        assert plus != minus, "incoherent or undefined at %s" % (key,)
        v = 1 if plus else -1
        self.memo[key] = v
        return v

    def _plus(self, alg, H, x):
        if isinstance(x, frozenset):
            return all(self.P(alg, H, f) == 1 for f in x)
        if alg is Alg.PHI:
            return self.fact(x)
        if self.fact(x):
            return True
        f = x
        for r in self.R_sd(f):
            if (alg, r) in H or self.P(alg, H | {(alg, r)}, r.antecedents) != 1:
                continue
            ok = True
            for s in self.foe(alg, f, r):
                team = any((alg, t) not in H and self.P(alg, H | {(alg, t)}, t.antecedents) == 1
                           for t in self.R_sd_above(f, s))
                co = CO[alg]
                disabled = (co, s) not in H and self.P(co, H | {(co, s)}, s.antecedents) == -1
                if not (team or disabled):
                    ok = False
                    break
            if ok:
                return True
        return False

    def _minus(self, alg, H, x):
        if isinstance(x, frozenset):
            return any(self.P(alg, H, f) == -1 for f in x)
        if alg is Alg.PHI:
            return not self.fact(x)
        if self.fact(x):
            return False
        f = x
        for r in self.R_sd(f):
            if (alg, r) in H or self.P(alg, H | {(alg, r)}, r.antecedents) == -1:
                continue
            found = False
            for s in self.foe(alg, f, r):
                no_team = all((alg, t) in H or self.P(alg, H | {(alg, t)}, t.antecedents) == -1
                              for t in self.R_sd_above(f, s))
                co = CO[alg]
                enabled = (co, s) in H or self.P(co, H | {(co, s)}, s.antecedents) == 1
                if no_team and enabled:
                    found = True
                    break
            if not found:
                return False
        return True

    def value(self, alg, f):
        return self.P(alg, frozenset(), f)
