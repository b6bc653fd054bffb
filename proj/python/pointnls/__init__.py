"""Ground states of the 2D NLS with a point interaction."""

from ._pnls import *  # noqa: F401,F403
from ._pnls import __doc__  # noqa: F401
