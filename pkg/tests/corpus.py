"""Seeded random descriptions for the property suites.

Each description is propositional, mentions at most six atoms, has at most
eight user rules and at most ten rule-instances in total, and carries a
random priority relation that passes the well-foundedness check.
"""

import random

from plausible.description import (
    DescriptionError,
    PriorityStatement,
    Rule,
    RuleKind,
    build_description,
)
from plausible.syntax import And, Atom, Literal, Or

MAX_INSTANCES = 10


def _literal(rng, atoms):
    return Literal(rng.choice(atoms), rng.random() < 0.5)


def _formula(rng, atoms):
    x = rng.random()
    if x < 0.8:
        return _literal(rng, atoms)
    a, b = _literal(rng, atoms), _literal(rng, atoms)
    if a.atom == b.atom:
        return a
    return (And if x < 0.9 else Or)(frozenset([a, b]))


def random_description(rng):
    while True:
        atoms = [Atom("p%d" % i, ()) for i in range(rng.randint(2, 6))]
        clauses = []
        for _ in range(rng.randint(0, 2)):
            k = rng.randint(1, 2)
            chosen = rng.sample(atoms, k)
            clauses.append(frozenset(Literal(a, rng.random() < 0.5) for a in chosen))
        n_strict = sum(2 ** len(c) - 1 for c in set(clauses))
        budget = min(8, MAX_INSTANCES - n_strict)
        rules = []
        for i in range(rng.randint(1, max(1, budget))):
            ants = frozenset(_formula(rng, atoms) for _ in range(rng.choice((0, 1, 1, 2))))
            kind = RuleKind.WARNING if rng.random() < 0.15 else RuleKind.DEFEASIBLE
            # consequents crowd onto a few atoms so that rules conflict often
            rules.append(Rule("r%d" % i, kind, ants, _formula(rng, atoms[:3])))
        priorities = []
        if rules and rng.random() < 0.7:
            for _ in range(rng.randint(1, 6)):
                a, b = rng.sample(range(len(rules)), 2) if len(rules) > 1 else (0, 0)
                if a != b:
                    priorities.append(PriorityStatement(rules[a].name, rules[b].name))
        try:
            d = build_description(clauses, rules, priorities)
        except DescriptionError:
            continue
        if len(d.instances) <= MAX_INSTANCES:
            return d


def corpus(n=120, seed=20240601):
    rng = random.Random(seed)
    return [random_description(rng) for _ in range(n)]
