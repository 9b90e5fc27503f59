"""Spreading speeds, forced waves and steady states for monotone evolution
models in shifting habitats."""

from wavefront._core import *  # noqa: F401,F403
from wavefront._core import __doc__  # noqa: F401
