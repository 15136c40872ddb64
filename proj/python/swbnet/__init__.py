"""Friend-graph reduction, SWB scoring and assortativity (C++ core)."""

from ._swbnet import *  # noqa: F401,F403
from ._swbnet import __version__  # noqa: F401
