"""First-order terms and formulas: syntax, parsing and finite model checking."""
from .charform import characteristic_sentence, witness_assignment
from .parser import ParseError, parse, parse_term
from .semantics import (
    EvaluationError,
    SentenceClass,
    classify,
    eval_naive,
    evaluate,
    prenex_parts,
    rename_apart,
    to_prenex,
)
from .syntax import (
    And,
    App,
    Const,
    Eq,
    Exists,
    Forall,
    Formula,
    Metadata,
    Not,
    Or,
    Rel,
    Term,
    Var,
    bound_vars,
    conj,
    free_vars,
    is_sentence,
    metadata,
    neq,
    to_text,
)

eval = evaluate  # noqa: A001  (name used throughout the docs)

__all__ = [
    "And", "App", "Const", "Eq", "EvaluationError", "Exists", "Forall", "Formula", "Metadata",
    "Not", "Or", "ParseError", "Rel", "SentenceClass", "Term", "Var", "bound_vars",
    "characteristic_sentence", "classify", "conj", "eval", "eval_naive", "evaluate", "free_vars",
    "is_sentence", "metadata", "neq", "parse", "parse_term", "prenex_parts", "rename_apart",
    "to_prenex", "to_text", "witness_assignment",
]
