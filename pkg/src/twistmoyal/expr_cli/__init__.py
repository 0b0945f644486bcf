"""Expression language and command-line front end."""

from .evaluator import AlgebraMixingError, evaluate, evaluate_text
from .parser import ParseError, parse, unparse

__all__ = ["AlgebraMixingError", "ParseError", "evaluate", "evaluate_text", "parse", "unparse"]
