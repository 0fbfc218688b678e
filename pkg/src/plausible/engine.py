"""Proof function P and its helpers For and Dftd for all eight algorithms.

Values are computed through the max/min characterisation with
short-circuiting. A history is carried as a frozenset of encoded
``(algorithm, instance)`` entries; P depends on the history only through
membership, so the set is also the memo key.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Union

from .algorithms import Alg
from .description import DescriptionError, PlausibleDescription, RuleInstance
from .syntax import Formula, format_formula, is_ground

PLUS = 1
MINUS = -1

_ALGS = list(Alg)
_ALG_CODE = {a: i for i, a in enumerate(_ALGS)}


class EvaluationError(ValueError):
    pass


class HistoryEntry(NamedTuple):
    alg: Alg
    instance: RuleInstance

    def __str__(self):
        return "%s:%s" % (self.alg.value, self.instance.label())


History = tuple  # of HistoryEntry


def is_formula_set(x) -> bool:
    return isinstance(x, (frozenset, set, list, tuple))


class Evaluator:
    """Memoizing evaluator bound to one description.

    The cache is valid for the evaluator's lifetime because P, For and Dftd
    are pure functions of their arguments. ``max_depth`` records the deepest
    nesting of formula evaluations seen so far.
    """

    def __init__(self, description: PlausibleDescription, memo: bool = True, prune: bool = True):
        self.d = description
        self.memo = memo
        self.prune = prune
        self.n = len(description.instances)
        self.depth_limit = 2 * self.n + 4
        self._p = {}
        self._for = {}
        self._dftd = {}
        self._depth = 0
        self.max_depth = 0
        self.calls = 0
        need = 12 * (self.depth_limit + 10) + 200
        if sys.getrecursionlimit() < need:
            sys.setrecursionlimit(need)

    # -- history encoding ------------------------------------------------

    def _code(self, alg: Alg, r: RuleInstance) -> int:
        return _ALG_CODE[alg] * self.n + self.d.index[r]

    def encode_history(self, alg: Alg, history: Iterable) -> frozenset:
        allowed = {alg, alg.co}
        codes = []
        for e in history:
            a, r = e
            if a not in allowed:
                raise EvaluationError("history entry %s has tag foreign to %s" % (e, alg.value))
            if r not in self.d.index:
                raise EvaluationError("history entry %s is not a rule instance of the description" % (e,))
            codes.append(self._code(a, r))
        if len(set(codes)) != len(codes):
            raise EvaluationError("history has repeated entries")
        return frozenset(codes)

    # -- public entry points ---------------------------------------------

    def P(self, alg: Alg, history: Iterable = (), x=None) -> int:
        h = self.encode_history(alg, history)
        self._check_ground(x)
        return self._P(alg, h, _norm(x))

    def For(self, alg: Alg, history: Iterable, f: Formula, r: RuleInstance) -> int:
        h = self.encode_history(alg, history)
        self._check_for(alg, f, r)
        return self._For(alg, h, f, r)

    def Dftd(self, alg: Alg, history: Iterable, f: Formula, r: RuleInstance, s: RuleInstance) -> int:
        h = self.encode_history(alg, history)
        self._check_for(alg, f, r)
        if s not in self.d.foe(alg, f, r):
            raise EvaluationError("%s is not a foe of %s for %s" % (s.label(), r.label(), format_formula(f)))
        return self._Dftd(alg, h, f, r, s)

    def _check_ground(self, x):
        fs = x if is_formula_set(x) else [x]
        for f in fs:
            if not is_ground(f):
                raise EvaluationError("query is not ground: %s" % format_formula(f))

    def _check_for(self, alg, f, r):
        if alg is Alg.PHI:
            raise EvaluationError("For/Dftd are undefined for phi")
        if self.d.is_fact(f):
            raise EvaluationError("For/Dftd are undefined for facts: %s" % format_formula(f))
        if r not in self.d.supporters(f, "sd"):
            raise EvaluationError("%s is not in R_sd[%s]" % (r.label(), format_formula(f)))

    # -- recursion ----------------------------------------------------------

    def _P(self, alg, h, x):
        key = (alg, h, x)
        if self.memo:
            v = self._p.get(key)
            if v is not None:
                return v
        self.calls += 1
        if isinstance(x, frozenset):
            v = PLUS
            for f in sorted(x, key=format_formula):
                if self._P(alg, h, f) == MINUS:
                    v = MINUS
                    break
        else:
            v = self._P_formula(alg, h, x)
        if self.memo:
            self._p[key] = v
        return v

    def _P_formula(self, alg, h, f):
        d = self.d
        if d.is_fact(f):
            return PLUS
        if alg is Alg.PHI:
            return MINUS
        d.ensure_well_founded(f)
        if self.prune and not d.possibly_provable(f):
            return MINUS
        self._depth += 1
        if self._depth > self.max_depth:
            self.max_depth = self._depth
            if self._depth > self.depth_limit:
                raise EvaluationError("recursion depth %d exceeds bound %d"
                                      % (self._depth, self.depth_limit))
        try:
            for r in d.supporters(f, "sd"):
                if self._For(alg, h, f, r) == PLUS:
                    return PLUS
            return MINUS
        finally:
            self._depth -= 1

    def _For(self, alg, h, f, r):
        key = (alg, h, f, r)
        if self.memo:
            v = self._for.get(key)
            if v is not None:
                return v
        v = self._For_uncached(alg, h, f, r)
        if self.memo:
            self._for[key] = v
        return v

    def _For_uncached(self, alg, h, f, r):
        c = self._code(alg, r)
        if c in h:
            return MINUS
        if self._P(alg, h | {c}, r.antecedents) == MINUS:
            return MINUS
        for s in self.d.foe(alg, f, r):
            if self._Dftd(alg, h, f, r, s) == MINUS:
                return MINUS
        return PLUS

    def _Dftd(self, alg, h, f, r, s):
        key = (alg, h, f, r, s)
        if self.memo:
            v = self._dftd.get(key)
            if v is not None:
                return v
        v = self._Dftd_uncached(alg, h, f, s)
        if self.memo:
            self._dftd[key] = v
        return v

    def _Dftd_uncached(self, alg, h, f, s):
        for t in self.d.superior_supporters(f, s):
            c = self._code(alg, t)
            if c not in h and self._P(alg, h | {c}, t.antecedents) == PLUS:
                return PLUS
        co = alg.co
        c = self._code(co, s)
        if c not in h and self._P(co, h | {c}, s.antecedents) == MINUS:
            return PLUS
        return MINUS


def _norm(x):
    if is_formula_set(x):
        return frozenset(x)
    return x


def eval_P(d: PlausibleDescription, alg: Alg, history: Iterable = (), x=None) -> int:
    """P(alg, history, x) for a formula or a finite set of formulas."""
    return Evaluator(d).P(alg, history, x)


def eval_For(d, alg, history, f, r) -> int:
    return Evaluator(d).For(alg, history, f, r)


def eval_Dftd(d, alg, history, f, r, s) -> int:
    return Evaluator(d).Dftd(alg, history, f, r, s)


def proves(d: PlausibleDescription, alg: Alg, f, evaluator: Evaluator = None) -> bool:
    ev = evaluator or Evaluator(d)
    return ev.P(alg, (), f) == PLUS


def provable_set(d: PlausibleDescription, alg: Alg, queries: Iterable[Formula],
                 evaluator: Evaluator = None):
    """Split ``queries`` into (proved, disproved) by P(alg, (), q)."""
    ev = evaluator or Evaluator(d)
    proved, disproved = set(), set()
    for q in queries:
        (proved if ev.P(alg, (), q) == PLUS else disproved).add(q)
    return proved, disproved
