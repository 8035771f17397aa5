"""Bundled reference tables (Stokes matrices, connection-matrix columns)."""

import json
from importlib import resources

from .core_algebra import GaussRat, SymScalar


def load_fixture(name):
    with resources.files("qmono").joinpath("data", name).open() as fh:
        return json.load(fh)


def term_scalar(terms):
    """SymScalar from a list of {"coeff", "monomial"} terms."""
    total = SymScalar()
    for term in terms:
        mono = term["monomial"]
        zetas = {3: mono["zeta3"]} if mono.get("zeta3") else None
        total = total + SymScalar.monomial(
            GaussRat.parse(term["coeff"]),
            pi=mono.get("pi", 0),
            gamma=mono.get("gamma", 0),
            zetas=zetas,
            half=mono.get("half", 0),
        )
    return total


def connection_columns(name):
    """Columns of a tabulated connection matrix as lists of SymScalar."""
    return [[term_scalar(x) for x in col] for col in load_fixture("connection_columns.json")[name]]


def column_matches(col, expected):
    """'same', 'negated' or None."""
    if all(SymScalar.coerce(a) == b for a, b in zip(col, expected)):
        return "same"
    if all(SymScalar.coerce(a) == -b for a, b in zip(col, expected)):
        return "negated"
    return None

