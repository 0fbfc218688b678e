"""Certificate documents for evaluation rads, and a checker for them.

A certificate is a JSON object::

    {"format_version": 1, "description": "<sha256>", "algorithm": "beta",
     "query": "e", "label": "proof", "root": 0,
     "nodes": [{"id": 0, "kind": "formula", "alg": "beta",
                "history": [["beta", "r2", {}]], "subject": "e",
                "rule": ["r2", {}], "foe": null, "value": 1}, ...],
     "arcs": [{"parent": 0, "child": 1, "role": "evidence",
               "status": "optional"}, ...]}

Set subjects are lists of formula strings. History entries and rule
references name rules and substitutions rather than positions, so a
certificate survives reordering of the input file.

:func:`validate` re-derives the full children of every node from the
description, checks each arc's status from the two endpoint values, and
recomputes every value bottom-up from the kept children alone.
"""

from __future__ import annotations

import json

from .algorithms import Alg
from .description import PlausibleDescription, RuleInstance
from .engine import MINUS, PLUS, HistoryEntry
from .language import parse_formula
from .rad import Arc, EvalNode, EvaluationRad, NodeKind, Role, Status, format_subject
from .syntax import Substitution, format_formula

FORMAT_VERSION = 1


class CertificateError(ValueError):
    pass


# -- serialization ----------------------------------------------------------

def _subject_out(x):
    if isinstance(x, frozenset):
        return sorted(format_formula(f) for f in x)
    return format_formula(x)


def _subject_in(x):
    if isinstance(x, list):
        return frozenset(parse_formula(t) for t in x)
    return parse_formula(x)


def _ref_out(r: RuleInstance):
    return None if r is None else [r.name, r.subst.as_dict()]


def _ref_in(d: PlausibleDescription, ref):
    if ref is None:
        return None
    name, subst = ref
    return d.lookup(name, Substitution.of(subst))


def to_dict(rad: EvaluationRad) -> dict:
    """Serialize ``rad``; the ``label`` field says proof or disproof."""
    nodes = []
    for i, n in enumerate(rad.nodes):
        nodes.append({
            "id": i,
            "kind": n.kind.value,
            "alg": n.alg.value,
            "history": [[e.alg.value, e.instance.name, e.instance.subst.as_dict()] for e in n.history],
            "subject": _subject_out(n.subject),
            "rule": _ref_out(n.rule),
            "foe": _ref_out(n.foe),
            "value": n.value,
        })
    arcs = [{"parent": a.parent, "child": a.child, "role": a.role.value, "status": a.status.value}
            for a in rad.arcs]
    return {
        "format_version": FORMAT_VERSION,
        "description": rad.description.digest(),
        "algorithm": rad.alg.value,
        "query": _subject_out(rad.query),
        "label": rad.label,
        "root": rad.root,
        "nodes": nodes,
        "arcs": arcs,
    }


def from_dict(doc: dict, d: PlausibleDescription) -> EvaluationRad:
    """Rebuild a rad against ``d``; refuses documents made for another description."""
    if doc.get("format_version") != FORMAT_VERSION:
        raise CertificateError("unsupported format_version %r" % doc.get("format_version"))
    if doc.get("description") != d.digest():
        raise CertificateError("certificate was made for a different description")
    try:
        nodes = []
        for i, n in enumerate(doc["nodes"]):
            if n["id"] != i:
                raise CertificateError("node ids must be 0..n-1 in order")
            hist = tuple(HistoryEntry(Alg.parse(a), d.lookup(name, Substitution.of(s)))
                         for a, name, s in n["history"])
            nodes.append(EvalNode(NodeKind(n["kind"]), Alg.parse(n["alg"]), hist,
                                  _subject_in(n["subject"]), _ref_in(d, n["rule"]),
                                  _ref_in(d, n["foe"]), n["value"]))
        arcs = [Arc(a["parent"], a["child"], Role(a["role"]), Status(a["status"]))
                for a in doc["arcs"]]
        return EvaluationRad(d, Alg.parse(doc["algorithm"]), _subject_in(doc["query"]),
                             nodes, arcs, doc.get("root", 0))
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, CertificateError):
            raise
        raise CertificateError("malformed certificate: %s" % e) from e


def to_json(rad: EvaluationRad) -> str:
    return json.dumps(to_dict(rad), indent=1, ensure_ascii=False)


def from_json(text: str, d: PlausibleDescription) -> EvaluationRad:
    return from_dict(json.loads(text), d)


def to_dot(rad: EvaluationRad) -> str:
    """Graphviz rendering; node labels show shape, algorithm and value."""
    lines = ["digraph rad {", '  node [shape=box, fontname="monospace"];']
    for i, n in enumerate(rad.nodes):
        label = "%s %s %+d\\n%s" % (n.kind.value, n.alg.value, n.value, _dot_escape(n.describe()))
        colour = "palegreen" if n.value == PLUS else "lightpink"
        lines.append('  n%d [label="%s", style=filled, fillcolor=%s];' % (i, label, colour))
    for a in rad.arcs:
        style = "solid" if a.status is Status.NECESSARY else "dashed"
        lines.append('  n%d -> n%d [label="%s", style=%s];' % (a.parent, a.child, a.role.value, style))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


# -- checking -----------------------------------------------------------------

def _expected_children(d: PlausibleDescription, n: EvalNode) -> list:
    """``(role, kind, alg, history-set, subject, rule, foe)`` of every child
    the node has in the full evaluation rad."""
    hs = frozenset(n.history)
    out = []
    if n.kind is NodeKind.SET:
        for f in n.subject:
            out.append((Role.ELEMENT, NodeKind.FORMULA, n.alg, hs, f, None, None))
    elif n.kind is NodeKind.FORMULA:
        if n.alg is not Alg.PHI and not d.is_fact(n.subject):
            for r in d.supporters(n.subject, "sd"):
                out.append((Role.EVIDENCE, NodeKind.FOR, n.alg, hs, n.subject, r, None))
    elif n.kind is NodeKind.FOR:
        e = HistoryEntry(n.alg, n.rule)
        if e not in hs:
            out.append((Role.ANTECEDENT, NodeKind.SET, n.alg, hs | {e}, n.rule.antecedents, None, None))
        for s in d.foe(n.alg, n.subject, n.rule):
            out.append((Role.FOE, NodeKind.DFTD, n.alg, hs, n.subject, n.rule, s))
    else:
        for t in d.superior_supporters(n.subject, n.foe):
            e = HistoryEntry(n.alg, t)
            if e not in hs:
                out.append((Role.TEAM, NodeKind.SET, n.alg, hs | {e}, t.antecedents, None, None))
        e = HistoryEntry(n.alg.co, n.foe)
        if e not in hs:
            out.append((Role.DISABLE, NodeKind.SET, n.alg.co, hs | {e}, n.foe.antecedents, None, None))
    return out


# When a parent has this value every child must be present.
_KEEP_ALL = {NodeKind.SET: PLUS, NodeKind.FORMULA: MINUS, NodeKind.FOR: PLUS, NodeKind.DFTD: MINUS}
# A single child with this value settles the parent's other value.
_WITNESS = {Role.ELEMENT: MINUS, Role.EVIDENCE: PLUS, Role.ANTECEDENT: MINUS,
            Role.FOE: MINUS, Role.TEAM: PLUS, Role.DISABLE: MINUS}


def _status(parent: EvalNode, role: Role, child_value) -> Status:
    if parent.value == _KEEP_ALL[parent.kind]:
        return Status.NECESSARY
    if child_value == _WITNESS[role]:
        return Status.OPTIONAL
    return Status.IRRELEVANT


def _combine(n: EvalNode, d: PlausibleDescription, kids: list) -> int:
    """Value of ``n`` from the (role, value) pairs of its children, by the
    min/max characterisation. ``kids`` must be the complete child list."""
    if n.kind is NodeKind.SET:
        return min((v for _, v in kids), default=PLUS)
    if n.kind is NodeKind.FORMULA:
        if d.is_fact(n.subject):
            return PLUS
        if n.alg is Alg.PHI:
            return MINUS
        return max((v for _, v in kids), default=MINUS)
    if n.kind is NodeKind.FOR:
        x = max((v for r, v in kids if r is Role.ANTECEDENT), default=MINUS)
        m = min((v for r, v in kids if r is Role.FOE), default=PLUS)
        return min(x, m)
    xs = [v for r, v in kids if r is Role.TEAM] + [-v for r, v in kids if r is Role.DISABLE]
    return max(xs, default=MINUS)


def validate(rad: EvaluationRad, d: PlausibleDescription = None) -> list:
    """Problems found in ``rad``; an empty list means it is a valid
    evaluation rad whose stored values follow from its leaves."""
    d = d or rad.description
    problems = []
    nodes = rad.nodes
    if not nodes:
        return ["rad has no nodes"]
    root = nodes[rad.root]
    if root.history or root.alg is not rad.alg or root.subject != rad.query:
        problems.append("root is not (alg, (), query)")
    if not rad.is_rooted_acyclic():
        problems.append("not a rooted acyclic digraph")
        return problems
    for n in nodes:
        if n.value not in (PLUS, MINUS):
            problems.append("node %s has value %r" % (n.describe(), n.value))
            return problems
        tags = (rad.alg, rad.alg.co)
        if n.alg not in tags:
            problems.append("node %s uses an algorithm foreign to %s" % (n.describe(), rad.alg.value))
        if any(e.alg not in tags for e in n.history):
            problems.append("history of %s has a foreign tag" % n.describe())
        if len(set(n.history)) != len(n.history):
            problems.append("history of %s repeats an entry" % n.describe())

    kids = {}
    for a in rad.arcs:
        kids.setdefault(a.parent, []).append(a)

    for i, n in enumerate(nodes):
        expected = _expected_children(d, n)
        by_sig = {e: e[0] for e in expected}
        present = []
        for a in kids.get(i, ()):
            c = nodes[a.child]
            sig = (a.role, c.kind, c.alg, frozenset(c.history), c.subject, c.rule, c.foe)
            if sig not in by_sig:
                problems.append("%s is not a child of %s" % (c.describe(), n.describe()))
                continue
            want = _status(n, a.role, c.value)
            if want is not a.status:
                problems.append("arc %s -> %s marked %s, should be %s"
                                % (n.describe(), c.describe(), a.status.value, want.value))
            if want is Status.IRRELEVANT:
                problems.append("irrelevant child %s kept under %s" % (c.describe(), n.describe()))
            present.append(sig)
        if len(set(present)) != len(present):
            problems.append("%s has a repeated child" % n.describe())
        if n.value == _KEEP_ALL[n.kind]:
            missing = [e for e in expected if e not in present]
            if missing:
                problems.append("%s lacks %d necessary children" % (n.describe(), len(missing)))
        else:
            n_opt = sum(1 for a in kids.get(i, ()) if a.status is Status.OPTIONAL)
            if n_opt > 1:
                problems.append("%s keeps %d optional children" % (n.describe(), n_opt))
    if problems:
        return problems

    # bottom-up recomputation from kept children only
    computed = {}
    order = _postorder(rad, kids)
    for i in order:
        n = nodes[i]
        pairs = [(a.role, computed[a.child]) for a in kids.get(i, ())]
        if n.value == _KEEP_ALL[n.kind]:
            v = _combine(n, d, pairs)
        elif pairs:
            # one witness child fixes the value
            role, cv = pairs[0]
            v = -_KEEP_ALL[n.kind] if cv == _WITNESS[role] else _KEEP_ALL[n.kind]
        else:
            # no witness: only possible when the value follows from structure
            v = _combine(n, d, [])
            if n.kind is NodeKind.FOR and HistoryEntry(n.alg, n.rule) not in set(n.history):
                v = _KEEP_ALL[n.kind]
        if n.kind is NodeKind.FORMULA and (n.alg is Alg.PHI or d.is_fact(n.subject)):
            v = PLUS if d.is_fact(n.subject) else MINUS
        computed[i] = v
        if v != n.value:
            problems.append("%s stores %+d but its children give %+d" % (n.describe(), n.value, v))
    return problems


def _postorder(rad, kids):
    out, state = [], {}
    stack = [(rad.root, False)]
    while stack:
        i, done = stack.pop()
        if done:
            out.append(i)
            continue
        if i in state:
            continue
        state[i] = 1
        stack.append((i, True))
        for a in kids.get(i, ()):
            if a.child not in state:
                stack.append((a.child, False))
    return out


def summary(rad: EvaluationRad) -> str:
    return "%s-%s of %s (%d nodes, %d arcs)" % (rad.alg.value, rad.label,
                                                format_subject(rad.query),
                                                len(rad.nodes), len(rad.arcs))


def extract_certificate(rad: EvaluationRad) -> tuple:
    """``(label, document)``: ``"proof"`` or ``"disproof"`` with the
    serialized rad."""
    return rad.label, to_dict(rad)
