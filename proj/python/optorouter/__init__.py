"""Single-photon router on a modulated optomechanical cavity."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
