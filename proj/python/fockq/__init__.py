"""Coherent-state quantization of the plane in a truncated Fock space."""

from ._core import *  # noqa: F401,F403
from ._core import Error, DomainError, RangeError, QuadratureError, InvariantViolation

__version__ = "0.1.0"
