"""Rational models, Koszul certificates, quadratic duals and minimal models
for complements of graphic arrangements in powers of a curve."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ArrangeLabError,
    CapExceeded,
    GenusZeroUnsupported,
    HilbertIdentityFails,
    InputError,
    InvariantFailure,
    MalformedQla,
    NotAntisymmetric,
    NotChordal,
    NotPerfectEliminationOrder,
    NotQuadratic,
    NotQuadraticInput,
    ParseError,
)
from .graphcomb import OrderedGraph, parse_graph  # noqa: E402
from .models import CurveType, build_model  # noqa: E402
