"""Four-valued plausible truth values."""

from __future__ import annotations

from enum import Enum

from .algorithms import Alg
from .description import PlausibleDescription
from .engine import PLUS, Evaluator
from .syntax import Formula, negate


class TruthValue(Enum):
    AMBIGUOUS = "a"
    TRUE = "t"
    FALSE = "f"
    UNDETERMINED = "u"

    def __str__(self):
        return self.value


def truth_value(d: PlausibleDescription, alg: Alg, f: Formula,
                evaluator: Evaluator = None) -> TruthValue:
    """V(alg, f) from whether ``alg`` proves ``f`` and ``~f``.

    "Does not prove" is read as P = -1, which is sound because the grounding
    is finite and P is therefore total.
    """
    ev = evaluator or Evaluator(d)
    pos = ev.P(alg, (), f) == PLUS
    neg = ev.P(alg, (), negate(f)) == PLUS
    if pos and neg:
        return TruthValue.AMBIGUOUS
    if pos:
        return TruthValue.TRUE
    if neg:
        return TruthValue.FALSE
    return TruthValue.UNDETERMINED
