"""First-order plausible reasoning: descriptions, proof algorithms,
evaluation rads and truth values."""

from .algorithms import Alg, co_algorithm
from .description import PlausibleDescription, build_description, rul
from .engine import MINUS, PLUS, Evaluator, eval_Dftd, eval_For, eval_P, provable_set
from .language import parse_description, parse_formula
from .rad import build_evaluation_rad
from .certificate import extract_certificate
from .truth import TruthValue, truth_value

__all__ = [
    "Alg", "co_algorithm", "PlausibleDescription", "build_description", "rul",
    "MINUS", "PLUS", "Evaluator", "eval_P", "eval_For", "eval_Dftd", "provable_set",
    "parse_description", "parse_formula", "build_evaluation_rad", "extract_certificate",
    "TruthValue", "truth_value",
]
