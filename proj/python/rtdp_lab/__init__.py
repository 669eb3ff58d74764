"""Iterated planning/learning engine: MCTS + policy/value network training."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
