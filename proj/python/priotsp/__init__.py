"""Priority-driven TSP tour construction, classic baselines, bounds and a benchmark harness."""

from ._priotsp import *  # noqa: F401,F403
from ._priotsp import __version__  # noqa: F401
