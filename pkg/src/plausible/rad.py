"""Evaluation rads: the part of an evaluation that justifies its value.

Nodes have one of four shapes: a formula ``(alg, H, f)``, a set of formulas
``(alg, H, F)``, an evidence node ``(alg, H, f, r)`` valued by For, and a
defeat node ``(alg, H, f, r, s)`` valued by Dftd. Every arc from a node
to one of its full children is classified, and only necessary children plus
one optional child per parent are kept.

Two nodes with the same shape, algorithm, subject and history *set* are
merged; the stored history is the ordering of the first path that reached
the node. P, For and Dftd only look at history membership, so merging does
not change any value.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from .algorithms import Alg
from .description import PlausibleDescription, RuleInstance
from .engine import MINUS, PLUS, EvaluationError, Evaluator, HistoryEntry, is_formula_set
from .syntax import Formula, format_formula


class NodeKind(Enum):
    FORMULA = "formula"
    SET = "set"
    FOR = "for"
    DFTD = "dftd"


class Role(Enum):
    """How a child arises from its parent."""

    ELEMENT = "element"          # member of a formula set
    EVIDENCE = "evidence"        # supporter of a formula
    ANTECEDENT = "antecedent"    # A(r) under the extended history
    FOE = "foe"                  # an opposing instance to be defeated
    TEAM = "team"                # a superior supporter
    DISABLE = "disable"          # A(s) under the co-algorithm


class Status(Enum):
    NECESSARY = "necessary"
    OPTIONAL = "optional"
    IRRELEVANT = "irrelevant"


@dataclass(frozen=True)
class EvalNode:
    kind: NodeKind
    alg: Alg
    history: tuple                      # of HistoryEntry
    subject: Union[Formula, frozenset]
    rule: Optional[RuleInstance] = None
    foe: Optional[RuleInstance] = None
    value: Optional[int] = field(default=None, compare=False)

    @property
    def key(self):
        return (self.kind, self.alg, frozenset(self.history), self.subject, self.rule, self.foe)

    def describe(self) -> str:
        parts = [self.alg.value, "H%d" % len(self.history), format_subject(self.subject)]
        if self.rule is not None:
            parts.append(self.rule.label())
        if self.foe is not None:
            parts.append(self.foe.label())
        return "(%s)" % ", ".join(parts)


def format_subject(x) -> str:
    if isinstance(x, frozenset):
        return "{%s}" % ", ".join(sorted(format_formula(f) for f in x))
    return format_formula(x)


@dataclass(frozen=True)
class Arc:
    parent: int
    child: int
    role: Role
    status: Status


def classify(parent_kind: NodeKind, parent_value, role: Role, child_value) -> Status:
    """Status of a child for its parent, from the two values alone.

    ``None`` stands for a value outside the domain of the evaluation
    functions; it cannot arise with a finite grounding but is handled so the
    table is complete.
    """
    if parent_value is None:
        return Status.OPTIONAL if child_value is None else Status.IRRELEVANT
    # parent values under which every child is needed
    all_needed = {
        NodeKind.SET: PLUS,
        NodeKind.FORMULA: MINUS,
        NodeKind.FOR: PLUS,
        NodeKind.DFTD: MINUS,
    }
    if parent_value == all_needed[parent_kind]:
        return Status.NECESSARY
    witness = {
        Role.ELEMENT: MINUS,
        Role.EVIDENCE: PLUS,
        Role.ANTECEDENT: MINUS,
        Role.FOE: MINUS,
        Role.TEAM: PLUS,
        Role.DISABLE: MINUS,
    }[role]
    return Status.OPTIONAL if child_value == witness else Status.IRRELEVANT


@dataclass
class EvaluationRad:
    description: PlausibleDescription
    alg: Alg
    query: Union[Formula, frozenset]
    nodes: list
    arcs: list
    root: int = 0

    @property
    def value(self) -> int:
        return self.nodes[self.root].value

    @property
    def label(self) -> str:
        """``proof`` when the root value is +1, ``disproof`` when -1."""
        return "proof" if self.value == PLUS else "disproof"

    def children(self, i: int) -> list:
        return [a for a in self.arcs if a.parent == i]

    def parents(self, i: int) -> list:
        return [a for a in self.arcs if a.child == i]

    def structurally_equal(self, other: "EvaluationRad") -> bool:
        if self.alg is not other.alg or self.query != other.query:
            return False
        if [(n.key, tuple(n.history), n.value) for n in self.nodes] != \
                [(n.key, tuple(n.history), n.value) for n in other.nodes]:
            return False
        return sorted(self.arcs, key=_arc_key) == sorted(other.arcs, key=_arc_key)

    def is_rooted_acyclic(self) -> bool:
        """The root has no parents, every node is reachable from it, and
        there is no directed cycle."""
        if self.parents(self.root):
            return False
        out = {}
        for a in self.arcs:
            out.setdefault(a.parent, []).append(a.child)
        seen, state = set(), {}

        def dfs(n):
            state[n] = 1
            for c in out.get(n, ()):
                if state.get(c) == 1:
                    return False
                if c not in state and not dfs(c):
                    return False
            state[n] = 2
            seen.add(n)
            return True

        if not dfs(self.root):
            return False
        return len(seen) == len(self.nodes)

    def height(self) -> int:
        out = {}
        for a in self.arcs:
            out.setdefault(a.parent, []).append(a.child)
        memo = {}

        def h(n):
            if n not in memo:
                memo[n] = 1 + max((h(c) for c in out.get(n, ())), default=0)
            return memo[n]

        return h(self.root)


def _arc_key(a: Arc):
    return (a.parent, a.child, a.role.value, a.status.value)


def full_children(d: PlausibleDescription, node: EvalNode) -> list:
    """``(role, child)`` pairs of a node in the full evaluation rad, in
    canonical order. Children carry no value."""
    alg, h = node.alg, node.history
    used = set(h)

    def extend(a, r):
        return h + (HistoryEntry(a, r),)

    out = []
    if node.kind is NodeKind.SET:
        for f in sorted(node.subject, key=format_formula):
            out.append((Role.ELEMENT, EvalNode(NodeKind.FORMULA, alg, h, f)))
    elif node.kind is NodeKind.FORMULA:
        f = node.subject
        if alg is Alg.PHI or d.is_fact(f):
            return out
        for r in d.supporters(f, "sd"):
            out.append((Role.EVIDENCE, EvalNode(NodeKind.FOR, alg, h, f, r)))
    elif node.kind is NodeKind.FOR:
        f, r = node.subject, node.rule
        # foes first: an undefeated foe is usually a shallower witness of -1
        for s in d.foe(alg, f, r):
            out.append((Role.FOE, EvalNode(NodeKind.DFTD, alg, h, f, r, s)))
        if HistoryEntry(alg, r) not in used:
            out.append((Role.ANTECEDENT, EvalNode(NodeKind.SET, alg, extend(alg, r), r.antecedents)))
    else:
        f, s = node.subject, node.foe
        for t in d.superior_supporters(f, s):
            if HistoryEntry(alg, t) not in used:
                out.append((Role.TEAM, EvalNode(NodeKind.SET, alg, extend(alg, t), t.antecedents)))
        co = alg.co
        if HistoryEntry(co, s) not in used:
            out.append((Role.DISABLE, EvalNode(NodeKind.SET, co, extend(co, s), s.antecedents)))
    return out


class _Valuer:
    def __init__(self, ev: Evaluator):
        self.ev = ev

    def __call__(self, node: EvalNode) -> int:
        ev, alg = self.ev, node.alg
        h = frozenset(ev._code(e.alg, e.instance) for e in node.history)
        if node.kind in (NodeKind.SET, NodeKind.FORMULA):
            return ev._P(alg, h, node.subject)
        if node.kind is NodeKind.FOR:
            return ev._For(alg, h, node.subject, node.rule)
        return ev._Dftd(alg, h, node.subject, node.rule, node.foe)


class RadTooLarge(RuntimeError):
    pass


def build_evaluation_rad(d: PlausibleDescription, alg: Alg, x,
                         evaluator: Evaluator = None, max_nodes: int = 200000) -> EvaluationRad:
    """The evaluation rad rooted at ``(alg, (), x)``.

    Necessary children are always kept; of the optional children of a node
    only the first in canonical order is kept. Disproofs can be large, since
    a -1 formula keeps every supporter, so construction stops with
    :class:`RadTooLarge` past ``max_nodes``.
    """
    ev = evaluator or Evaluator(d)
    value = _Valuer(ev)
    if is_formula_set(x):
        x = frozenset(x)
        root = EvalNode(NodeKind.SET, alg, (), x)
    else:
        root = EvalNode(NodeKind.FORMULA, alg, (), x)
    ev._check_ground(x)
    root = _with_value(root, value(root))
    nodes = [root]
    index = {root.key: 0}
    arcs = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        p = nodes[i]
        kept, optional = [], []
        for role, c in full_children(d, p):
            cv = value(c)
            status = classify(p.kind, p.value, role, cv)
            if status is Status.NECESSARY:
                kept.append((role, c, cv, status))
            elif status is Status.OPTIONAL:
                optional.append((role, c, cv, status))
        if optional:
            kept.append(optional[0])
        for role, c, cv, status in kept:
            j = index.get(c.key)
            if j is None:
                if len(nodes) >= max_nodes:
                    raise RadTooLarge("evaluation rad exceeds %d nodes" % max_nodes)
                j = len(nodes)
                index[c.key] = j
                nodes.append(_with_value(c, cv))
                queue.append(j)
            arcs.append(Arc(i, j, role, status))
    return EvaluationRad(d, alg, x, nodes, arcs)


def _with_value(n: EvalNode, v: int) -> EvalNode:
    return EvalNode(n.kind, n.alg, n.history, n.subject, n.rule, n.foe, v)

