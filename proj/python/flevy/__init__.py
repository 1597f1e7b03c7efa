"""Discretisation errors of the fractional Levy area."""

from ._flevy import *  # noqa: F401,F403
from ._flevy import __version__  # noqa: F401
