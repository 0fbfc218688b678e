"""Ground classical satisfiability, entailment and tautology checking.

Satisfiability is decided by DPLL with unit propagation. Atoms are numbered
in lexicographic order of their printed form and branching always picks the
smallest unassigned atom, trying true first, so found models are reproducible.
"""

from __future__ import annotations

from typing import Iterable

from .syntax import And, Clause, Formula, Literal, Not, Or, atoms_of, negate, to_cnf


def _encode(clauses: Iterable[Clause]):
    clauses = list(clauses)
    atoms = sorted({l.atom for c in clauses for l in c}, key=str)
    index = {a: i + 1 for i, a in enumerate(atoms)}
    encoded = []
    for c in clauses:
        encoded.append(tuple(index[l.atom] if l.positive else -index[l.atom] for l in c))
    return atoms, encoded


def _propagate(clauses, assignment):
    """Unit propagation in place. Returns False on conflict."""
    changed = True
    while changed:
        changed = False
        for c in clauses:
            unassigned = None
            n_unassigned = 0
            satisfied = False
            for x in c:
                v = assignment.get(abs(x))
                if v is None:
                    n_unassigned += 1
                    unassigned = x
                elif v == (x > 0):
                    satisfied = True
                    break
            if satisfied:
                continue
            if n_unassigned == 0:
                return False
            if n_unassigned == 1:
                assignment[abs(unassigned)] = unassigned > 0
                changed = True
    return True


def _dpll(clauses, n_vars, assignment):
    if not _propagate(clauses, assignment):
        return None
    for v in range(1, n_vars + 1):
        if v not in assignment:
            break
    else:
        return assignment
    for value in (True, False):
        trial = dict(assignment)
        trial[v] = value
        result = _dpll(clauses, n_vars, trial)
        if result is not None:
            return result
    return None


def find_model(clauses: Iterable[Clause]):
    """A satisfying assignment ``{Atom: bool}`` over the mentioned atoms, or None."""
    atoms, encoded = _encode(clauses)
    if any(len(c) == 0 for c in encoded):
        return None
    result = _dpll(encoded, len(atoms), {})
    if result is None:
        return None
    return {a: result[i + 1] for i, a in enumerate(atoms)}


def is_satisfiable(clauses: Iterable[Clause]) -> bool:
    return find_model(clauses) is not None


def entails(axioms: Iterable[Clause], f: Formula) -> bool:
    """True iff every model of ``axioms`` satisfies ``f``."""
    return not is_satisfiable(set(axioms) | to_cnf(negate(f)))


def is_tautology(f: Formula) -> bool:
    return entails((), f)


def minimal_unsat_core(clauses: Iterable[Clause]) -> list:
    """Deletion-based minimal unsatisfiable subset of an unsatisfiable set."""
    core = sorted(set(clauses), key=lambda c: sorted(map(str, c)))
    if is_satisfiable(core):
        raise ValueError("clause set is satisfiable")
    i = 0
    while i < len(core):
        trial = core[:i] + core[i + 1:]
        if not is_satisfiable(trial):
            core = trial
        else:
            i += 1
    return core


def evaluate(f: Formula, model: dict) -> bool:
    """Truth value of ``f`` under ``model``; atoms missing from it are false."""
    if isinstance(f, Literal):
        return model.get(f.atom, False) == f.positive
    if isinstance(f, Not):
        return not evaluate(f.body, model)
    if isinstance(f, And):
        return all(evaluate(g, model) for g in f.operands)
    if isinstance(f, Or):
        return any(evaluate(g, model) for g in f.operands)
    raise TypeError(f)


class ModelSpace:
    """All models of a ground clause set over a fixed atom universe, with
    formulas evaluated to bit masks over those models.

    ``entails(extra, f)`` answers the same question as
    ``entails(clauses | to_cnf(extra), f)`` when every atom of ``extra`` and
    ``f`` lies in the universe. Construction gives up (raises ``OverflowError``)
    once more than ``limit`` models exist.
    """

    def __init__(self, clauses: Iterable[Clause], atoms: Iterable, limit: int = 4096):
        self.atoms = sorted(set(atoms) | {l.atom for c in clauses for l in c}, key=str)
        self.index = {a: i for i, a in enumerate(self.atoms)}
        _, encoded = _encode_with(self.index, clauses)
        self.models = []
        self._enumerate(encoded, {}, limit)
        self.full = (1 << len(self.models)) - 1
        self._masks = {}

    def _enumerate(self, clauses, assignment, limit):
        trial = dict(assignment)
        if not _propagate(clauses, trial):
            return
        for v in range(1, len(self.atoms) + 1):
            if v not in trial:
                break
        else:
            self.models.append(tuple(trial[i + 1] for i in range(len(self.atoms))))
            if len(self.models) > limit:
                raise OverflowError("more than %d models" % limit)
            return
        for value in (True, False):
            trial2 = dict(trial)
            trial2[v] = value
            self._enumerate(clauses, trial2, limit)

    def covers(self, f: Formula) -> bool:
        return all(a in self.index for a in atoms_of(f))

    def mask(self, f: Formula) -> int:
        m = self._masks.get(f)
        if m is None:
            m = self._mask(f)
            self._masks[f] = m
        return m

    def _mask(self, f):
        if isinstance(f, Literal):
            i = self.index[f.atom]
            m = 0
            for j, model in enumerate(self.models):
                if model[i] == f.positive:
                    m |= 1 << j
            return m
        if isinstance(f, Not):
            return self.full & ~self.mask(f.body)
        if isinstance(f, And):
            m = self.full
            for g in f.operands:
                m &= self.mask(g)
            return m
        m = 0
        for g in f.operands:
            m |= self.mask(g)
        return m


def _encode_with(index, clauses):
    encoded = []
    for c in clauses:
        encoded.append(tuple(index[l.atom] + 1 if l.positive else -(index[l.atom] + 1) for l in c))
    return index, encoded
