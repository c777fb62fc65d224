"""Desk-scale density, selection-rule and host-construction experiments."""

from ._core import *  # noqa: F401,F403
from ._core import StochlabError, BitPrefix, FinitePermutation, HostPermutation

__version__ = "0.1.0"
