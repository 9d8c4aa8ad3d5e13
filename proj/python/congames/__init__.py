"""Concurrent games on event structures.

Thin bindings over the C++ library: documents, games, strategies, copy-cat,
composition, checks, expected payoffs and the strategy language.
"""

from ._congames import (  # noqa: F401
    Document,
    Error,
    Game,
    InputError,
    InternalError,
    ResourceError,
    Strategy,
    SyntaxError,
    TypeError,
    compose,
    copycat,
    elaborate,
    expected_payoff,
    iso_equivalent,
    load_document,
    par,
    parse_document,
    pretty,
    run,
    scott_leq,
)

__all__ = [
    "Document",
    "Error",
    "Game",
    "InputError",
    "InternalError",
    "ResourceError",
    "Strategy",
    "SyntaxError",
    "TypeError",
    "compose",
    "copycat",
    "elaborate",
    "expected_payoff",
    "iso_equivalent",
    "load_document",
    "par",
    "parse_document",
    "pretty",
    "run",
    "scott_leq",
]
