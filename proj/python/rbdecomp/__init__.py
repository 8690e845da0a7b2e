"""Decompose reversible Boolean functions into concurrent controlled blocks."""

from ._rbdecomp import *  # noqa: F401,F403
from ._rbdecomp import ContractError, ParseError, Perm  # noqa: F401

__version__ = "0.1.0"
