"""Social welfare functionals over ethical theories, with fanaticism witnesses.

Numbers cross the boundary as ``fractions.Fraction``; ``int`` and exact
strings such as ``"99/100"`` or ``"0.99"`` are accepted on input.
"""

from ._core import *  # noqa: F401,F403
from ._core import MoralSwfError

__all__ = [name for name in dir() if not name.startswith("_")]
