"""Python access to the relaxlab core. Documents and reports are JSON."""

import json

from . import _core
from ._core import ParseError, RefusalError

__all__ = ["ParseError", "RefusalError", "galleries", "gallery", "report", "value", "certify", "dual_ball"]


def _doc(problem):
    if isinstance(problem, dict):
        return json.dumps(problem)
    return problem


def galleries():
    return list(_core.gallery_names())


def gallery(name):
    return json.loads(_core.gallery_document(name))


def report(problem, variants=()):
    return json.loads(_core.report(_doc(problem), list(variants)))


def value(problem, variant="P"):
    """Exact value as a string: "p/q", "+inf" or "-inf"."""
    return _core.value(_doc(problem), variant)


def certify(problem, alpha):
    return _core.certify(_doc(problem), str(alpha))


def dual_ball(query):
    return json.loads(_core.dual_ball(json.dumps(query)))
