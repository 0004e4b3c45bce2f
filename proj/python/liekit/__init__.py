"""Matrix Lie groups, lattices, and tilings toolkit."""

from ._liekit import *  # noqa: F401,F403
from ._liekit import __version__  # noqa: F401
