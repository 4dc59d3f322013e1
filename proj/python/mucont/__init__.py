"""Modulus-continuity of finite multifunctions.

Thin wrappers over the compiled ``_core`` module that accept and return
plain Python data instead of JSON text.
"""

import json

from . import _core
from ._core import Error, FormatError, GuardError, PreconditionError, run, sigma_decode, sigma_encode, sigma_inverse_witness

__all__ = [
    "Error",
    "FormatError",
    "GuardError",
    "PreconditionError",
    "check_geometric",
    "decide_continuity",
    "run",
    "select",
    "sigma_decode",
    "sigma_encode",
    "sigma_inverse_witness",
]


def _text(value):
    return value if isinstance(value, str) else json.dumps(value)


def check_geometric(modulus, constant):
    return json.loads(_core.check_geometric(_text(modulus), str(constant)))


def decide_continuity(multifunction, modulus):
    return json.loads(_core.decide_continuity(_text(multifunction), _text(modulus)))


def select(multifunction, modulus, constant=None):
    c = None if constant is None else str(constant)
    return json.loads(_core.select(_text(multifunction), _text(modulus), c))
